#pragma once

#include "uibind/binder.hpp"
#include "uibind/observable_list.hpp"
#include "uibind/scenario.hpp"
#include "uibind/testkit.hpp"
#include "uibind/trace.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace uibind {

// One scenario wired up and ready to receive events: virtual clock, drawing
// model, binding context, bindings, command observation and log capture.
// Scene nodes double as model shapes under the same id.
class ReplaySession {
public:
    explicit ReplaySession(const Scenario& scenario);
    ReplaySession(const ReplaySession&) = delete;
    ReplaySession& operator=(const ReplaySession&) = delete;

    VirtualClock& clock() noexcept { return clock_; }
    Drawing& drawing() noexcept { return drawing_; }
    BindingContext& context() noexcept { return context_; }
    BindingsObservation& observation() noexcept { return *observation_; }
    const std::vector<LogRecord>& logs() const noexcept { return logs_; }
    ObservableNodeList* dynamicList(const std::string& name);

    // Advances the clock to the event's time, firing due timeouts first,
    // then dispatches the event to the bindings.
    void dispatch(Event& event);
    // Dispatches without touching the clock; benchmark loops use this.
    void dispatchRaw(Event& event);
    // Fires every still-pending deadline so open timeout windows settle.
    void drain();

private:
    void buildBinding(const BindingSpec& spec);

    VirtualClock clock_;
    Drawing drawing_;
    std::map<std::string, std::unique_ptr<ObservableNodeList>> dynamicLists_;
    BindingContext context_;
    std::unique_ptr<BindingsObservation> observation_;
    std::vector<LogRecord> logs_;
};

struct ReplayedCommand {
    std::string binding;
    std::string command;
    CommandStatus status{};
    std::uint64_t executionId = 0;
};

struct PostOpResult {
    std::string op;
    std::string command; // empty when the history had nothing to offer
    bool applied = false;
};

struct ReplayReport {
    std::size_t events = 0;
    std::uint64_t commandsCreated = 0;
    std::vector<ReplayedCommand> commands;
    nlohmann::json model;
    std::vector<std::string> undoables;
    std::vector<std::string> redoables;
    std::vector<PostOpResult> postOps;
    std::vector<LogRecord> logs;
    std::int64_t elapsedUs = 0;

    // includeTiming=false yields a byte-stable document, which is what
    // determinism comparisons diff.
    nlohmann::json toJson(bool includeTiming = false) const;
};

// Replays a trace against a scenario: events are dispatched at their own
// virtual times, pending timeouts are drained afterwards, then the post ops
// ("undo" / "redo") run against the history.
ReplayReport runReplay(const Scenario& scenario, const std::vector<Event>& trace,
                       const std::vector<std::string>& postOps = {});

// The declarative layer may cost at most this factor over a hand-rolled
// callback handler doing the same command work.
inline constexpr double kBenchRatioLimit = 2.0;

struct BenchmarkReport {
    std::size_t events = 0;
    int reps = 0;
    std::vector<std::int64_t> bindingUs;
    std::vector<std::int64_t> callbackUs;
    std::int64_t bindingMedianUs = 0;
    std::int64_t callbackMedianUs = 0;
    double ratio = 0.0;       // binding median over callback median
    bool statesMatch = false; // model and command census agreed on every rep
    bool pass = false;

    nlohmann::json toJson() const;
};

// Pushes the same trace through the scenario's binding and through a
// hand-written callback handler doing identical command work, `reps` times
// each on fresh sessions. The scenario must hold exactly one plain
// dnd-to-translate binding (no throttle, filters or dynamic nodes).
BenchmarkReport runBenchmark(const Scenario& scenario, const std::vector<Event>& trace, int reps);

} // namespace uibind
