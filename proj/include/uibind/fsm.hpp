#pragma once

#include "uibind/clock.hpp"
#include "uibind/events.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace uibind {

using StateId = std::string;
using FsmId = std::string;

enum class StateKind {
    Initial,
    Standard,
    Terminal,    // normal completion
    Cancelling,  // abnormal completion
};

// Life-cycle signals. Over a full run the emitted sequence always matches
// the regular language: started updated* (ended | cancelled).
enum class Signal {
    Started,
    Updated,
    Ended,
    Cancelled,
};

std::string_view toString(Signal signal);

// Signals produced by one event or timeout delivery. A single transition can
// cross up to three life-cycle arcs (e.g. a one-event interaction yields
// started, updated, ended).
struct FsmOutcome {
    bool consumedEvent = false;

    void add(Signal s) { signals_[count_++] = s; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    Signal operator[](std::size_t i) const { return signals_[i]; }
    bool has(Signal s) const noexcept {
        for (std::size_t i = 0; i < count_; ++i) {
            if (signals_[i] == s) return true;
        }
        return false;
    }
    std::vector<Signal> toVector() const { return {signals_.begin(), signals_.begin() + count_}; }

private:
    std::array<Signal, 3> signals_{};
    std::size_t count_ = 0;
};

// Matches one event kind, optionally narrowed by a field predicate
// (e.g. key press with key == "ESC").
struct EventMatcher {
    EventKind kind{};
    std::function<bool(const Event&)> filter;
};

struct TimeoutSpec {
    Millis duration = 0;
};

// Completion of the referenced inner machine triggers the transition.
struct SubFsmRef {
    FsmId id;
};

using Trigger = std::variant<EventMatcher, TimeoutSpec, SubFsmRef>;

struct Transition {
    StateId source;
    StateId target;
    Trigger trigger;
    // Extra guard over the triggering event; failure makes the transition
    // fall through to later declarations. Machine-local context is reached
    // through captures. Not evaluated for timeout fires.
    std::function<bool(const Event&)> guard;
    // Runs while the transition fires, before life-cycle signals are
    // delivered. Interaction data updates live here. The event is null for
    // timeout fires and carries the completing event for sub-machine fires.
    std::function<void(const Event*)> onFire;
};

// Clock access used for timeout transitions. Installed once by the owner of
// the root machine; inner machines inherit it.
struct TimeoutHost {
    std::function<VirtualClock::Token(Millis delay)> schedule;
    std::function<void(VirtualClock::Token)> cancel;
};

class Fsm {
public:
    // Concurrency support: `make` builds one copy machine per touch key and
    // `required` copies must run for the parent to count as started.
    struct ConcurrencySpec {
        std::function<std::unique_ptr<Fsm>(int key)> make;
        int required = 0;
        std::function<void(int key)> onDiscard;
    };

    Fsm() = default;
    Fsm(const Fsm&) = delete;
    Fsm& operator=(const Fsm&) = delete;

    void addState(StateId id, StateKind kind);
    void addTransition(Transition transition);
    void addInnerMachine(FsmId id, std::unique_ptr<Fsm> machine);
    void setConcurrency(ConcurrencySpec spec);
    void setEntryHook(const StateId& state, std::function<void()> hook);
    void setExitHook(const StateId& state, std::function<void()> hook);
    void setTimeoutHost(TimeoutHost host);

    // Checks structural invariants: exactly one initial state, at least one
    // terminal or cancelling state reachable from it, positive timeout
    // durations. Throws std::logic_error on violation.
    void validate() const;

    // Feeds one event. The first declared transition from the current state
    // whose trigger matches and whose guard passes fires; everything else is
    // ignored. After the machine has ended or cancelled, nothing fires until
    // reinit.
    FsmOutcome processEvent(const Event& event);

    // Reports an elapsed timeout by token. Stale tokens (armed in states
    // already exited) yield an empty outcome.
    FsmOutcome onTimeout(VirtualClock::Token token);

    // Event kinds the machine can react to in its current state, looking
    // through inner machines recursively. Empty once the machine finished.
    std::set<EventKind> activeEventKinds() const;

    // Back to the initial state; inner machines and concurrent copies reset,
    // armed timeouts discarded. Idempotent.
    void reinit();

    // Attaches a fresh copy machine under `key`. Normally driven internally
    // by touch_start events; throws if the key is already tracked.
    void spawnConcurrent(int key);

    const StateId& currentState() const { return stateName(current_); }
    const StateId& initialState() const { return stateName(initial_); }
    StateKind stateKind(const StateId& id) const;
    bool hasState(const StateId& id) const { return index_.count(id) != 0; }
    bool started() const noexcept { return started_; }
    bool finished() const noexcept { return finished_; }
    bool reachable(const StateId& from, const StateId& to) const;

    // True if any declared transition, recursively through inner machines,
    // matches `kind`. Concurrency templates are not inspected.
    bool usesEventKind(EventKind kind) const;

    const std::vector<Transition>& transitions() const { return transitions_; }

private:
    static constexpr std::size_t kNoState = static_cast<std::size_t>(-1);

    // States are interned; transitions are bucketed by source so event
    // delivery never hashes state names.
    struct StateInfo {
        StateId name;
        StateKind kind{};
        std::function<void()> entryHook;
        std::function<void()> exitHook;
        std::vector<std::size_t> outgoing; // transition indices, declaration order
        std::vector<std::size_t> timeouts; // outgoing subset carrying TimeoutSpec
        bool hasInnerRefs = false;         // any outgoing SubFsmRef transition
    };

    const StateId& stateName(std::size_t idx) const {
        static const StateId none;
        return idx == kNoState ? none : states_[idx].name;
    }

    FsmOutcome fire(std::size_t transitionIdx, const Event* event);
    FsmOutcome processConcurrent(const Event& event);
    void applyCensus(FsmOutcome& out, int key);
    void armTimeouts();
    void disarmTimeouts();
    void reinitInnerMachinesOf(std::size_t state);
    void propagateHost();

    std::vector<StateInfo> states_;
    std::map<StateId, std::size_t> index_;
    std::size_t initial_ = kNoState;
    std::size_t current_ = kNoState;
    bool started_ = false;
    bool finished_ = false;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> targets_; // per transition: target state index
    std::map<FsmId, std::unique_ptr<Fsm>> inner_;
    TimeoutHost host_;
    std::map<VirtualClock::Token, std::size_t> armed_;  // token -> transition index

    std::optional<ConcurrencySpec> concurrency_;
    std::map<int, std::unique_ptr<Fsm>> copies_;
};

} // namespace uibind
