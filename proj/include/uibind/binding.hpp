#pragma once

#include "uibind/command.hpp"
#include "uibind/context.hpp"
#include "uibind/interaction.hpp"
#include "uibind/logging.hpp"
#include "uibind/observable_list.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace uibind {

// Everything a binding needs, assembled by the binder. Hooks are type-erased
// here; typed access to interaction data happens inside the closures.
struct BindingConfig {
    std::string name = "binding";
    std::unique_ptr<UserInteraction> interaction;

    std::function<std::shared_ptr<Command>()> factory;
    std::function<bool()> when;
    std::function<void(Command&)> first;
    std::function<void(Command&)> then;
    // End/cancel hooks run unconditionally; the command pointer is null when
    // the execution never produced one.
    std::function<void(Command*)> endHook;
    std::function<void(Command*)> cancelHook;
    std::function<void(Command*)> endOrCancelHook;

    bool continuous = false;
    bool strictStart = false;
    bool consume = false;
    Millis throttle = 0;
    std::optional<std::set<std::string>> keyFilter;
    std::set<LogLevel> logLevels;

    std::vector<NodeId> staticNodes;
    ObservableNodeList* dynamicNodes = nullptr;
};

// Connects one user interaction to one command producer: routes events into
// the interaction, reacts to its life-cycle signals, drives the command's
// own life cycle and registers undoable commands in the history.
class Binding {
public:
    Binding(BindingContext& context, BindingConfig config);
    ~Binding();
    Binding(const Binding&) = delete;
    Binding& operator=(const Binding&) = delete;

    // Feeds one event through key filtering and throttling into the
    // interaction. Marks the event consumed when the interaction used it and
    // the binding is configured to consume.
    void offer(Event& event);

    const std::string& name() const noexcept { return config_.name; }
    UserInteraction& interaction() noexcept { return *config_.interaction; }
    const UserInteraction& interaction() const noexcept { return *config_.interaction; }

    std::shared_ptr<Command> currentCommand() const noexcept { return command_; }

    std::uint64_t executionsStarted() const noexcept { return executionsStarted_; }
    std::uint64_t commandsCreated() const noexcept { return commandsCreated_; }

private:
    void onSignal(Signal signal);
    void onStart();
    void onUpdate();
    void onEnd();
    void onCancel();

    bool createCommand();
    void executeCommand();
    void settleAtEnd();
    void finishCommand();
    void syncNodes();

    bool passesKeyFilter(const Event& event) const;
    void deliverNow(Event& event);
    void flushPending();
    void onWindowClose(VirtualClock::Token token);

    template <class F>
    bool runGuarded(const char* stage, F&& f);
    template <class F>
    void runTerminalHook(const char* stage, F&& f);
    void teardownOnError();

    // Call sites building log strings check this first so a silent binding
    // never pays for message construction.
    bool logs(LogLevel level) const noexcept { return config_.logLevels.count(level) > 0; }
    void log(LogLevel level, const std::string& message, bool force = false);

    BindingContext* context_;
    BindingConfig config_;
    std::shared_ptr<Command> command_;
    std::uint64_t executionsStarted_ = 0;
    std::uint64_t commandsCreated_ = 0;
    std::uint64_t executionId_ = 0;
    bool inErrorTeardown_ = false;

    bool windowOpen_ = false;
    VirtualClock::Token windowToken_ = 0;
    std::optional<Event> pending_;

    std::optional<ObservableNodeList::SubscriptionId> subscription_;
};

} // namespace uibind
