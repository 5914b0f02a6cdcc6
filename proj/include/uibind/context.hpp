#pragma once

#include "uibind/clock.hpp"
#include "uibind/command.hpp"
#include "uibind/events.hpp"
#include "uibind/logging.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace uibind {

class Binding;

// Shared runtime for a set of bindings: the clock, the undo history, event
// dispatch and logging. Bindings receive events in registration order; a
// consumed event stops the walk.
class BindingContext {
public:
    // Called whenever a binding finishes an execution that produced a
    // command: binding name, the command, its status at that point and the
    // binding-local execution number.
    using CommandObserver = std::function<void(const Binding&, const std::shared_ptr<Command>&,
                                               CommandStatus, std::uint64_t)>;

    explicit BindingContext(VirtualClock& clock, std::size_t historyCapacity = 20);

    VirtualClock& clock() noexcept { return *clock_; }
    UndoHistory& history() noexcept { return history_; }
    const UndoHistory& history() const noexcept { return history_; }

    Binding& addBinding(std::unique_ptr<Binding> binding);
    const std::vector<std::unique_ptr<Binding>>& bindings() const noexcept { return bindings_; }

    void dispatch(Event& event);

    void setLogSink(LogSink sink) { sink_ = std::move(sink); }
    void log(LogLevel level, const std::string& binding, const std::string& message);

    void setCommandObserver(CommandObserver observer) { observer_ = std::move(observer); }
    void notifyCommandFinished(const Binding& binding, const std::shared_ptr<Command>& command,
                               CommandStatus status, std::uint64_t executionId);

    // Total command factory invocations across all bindings.
    std::uint64_t commandCreations() const noexcept { return commandCreations_; }
    void noteCommandCreated() noexcept { ++commandCreations_; }

private:
    VirtualClock* clock_;
    UndoHistory history_;
    std::vector<std::unique_ptr<Binding>> bindings_;
    LogSink sink_;
    CommandObserver observer_;
    std::uint64_t commandCreations_ = 0;
};

} // namespace uibind
