#pragma once

#include "uibind/fsm.hpp"
#include "uibind/interaction_data.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace uibind {

// One user interaction: a state machine plus the typed data it fills while
// running. Owns the machine, filters incoming events by registered scene
// nodes, synthesizes clicks from press/release pairs where the machine wants
// them, and reports life-cycle signals to a single observer (normally the
// binding holding it).
class UserInteraction {
public:
    using Observer = std::function<void(Signal)>;

    UserInteraction(std::string name, VirtualClock& clock, DataSnapshot initialData);
    UserInteraction(const UserInteraction&) = delete;
    UserInteraction& operator=(const UserInteraction&) = delete;

    const std::string& name() const noexcept { return name_; }
    Fsm& fsm() noexcept { return *fsm_; }
    const Fsm& fsm() const noexcept { return *fsm_; }
    VirtualClock& clock() noexcept { return *clock_; }

    // Completes construction: validates the machine, wires timeouts to the
    // clock, and detects whether click synthesis is needed. Catalog builders
    // call this once the machine is assembled.
    void seal();

    // Feeds one event through node filtering, click synthesis and the
    // machine. Life-cycle signals are delivered to the observer before this
    // returns; after an ended or cancelled signal the machine and data are
    // reset for the next execution. Returns the signals as seen by the
    // observer.
    FsmOutcome deliver(Event& event);

    // Node registration. An interaction with no registered nodes receives
    // nothing. Changing the set while a run is active does not reset the
    // machine.
    void setNodes(std::vector<NodeId> nodes);
    void addNode(const NodeId& node);
    void removeNode(const NodeId& node);
    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

    // Moves the `started` signal to the first entry into `state`; earlier
    // transitions still update data silently. Throws if the state is unknown
    // or unreachable.
    void setLateStart(const StateId& state);

    void setActivated(bool activated);
    bool activated() const noexcept { return activated_; }

    // Immutable copy of the current interaction data.
    DataSnapshot dataSnapshot() const { return data_; }

    // Borrowed view of the current interaction data; valid until the next
    // delivered event or reset.
    const DataSnapshot& data() const noexcept { return data_; }

    template <class D>
    const D& dataAs() const {
        return std::get<D>(data_);
    }
    template <class D>
    D& dataRef() {
        return std::get<D>(data_);
    }

    // Event kinds that can advance the interaction right now, including the
    // press/release pairs click synthesis feeds on.
    std::set<EventKind> effectiveEventKinds() const;

    void setObserver(Observer observer) { observer_ = std::move(observer); }

    // Resets machine, data and synthesis state.
    void reinit();

    // Cancels the ongoing execution, if any: the observer sees a cancelled
    // signal, then the interaction resets.
    void forceCancel();

private:
    void dispatchOutcome(const FsmOutcome& outcome);
    void handleClockFire(VirtualClock::Token token);
    FsmOutcome applyLateStart(const FsmOutcome& outcome);
    void installTimeoutHost();

    std::string name_;
    VirtualClock* clock_;
    std::unique_ptr<Fsm> fsm_;
    DataSnapshot data_;
    std::vector<NodeId> nodes_;
    Observer observer_;
    bool activated_ = true;
    bool sealed_ = false;

    std::optional<StateId> lateStartState_;
    bool lateStarted_ = false;

    bool synthesizeClicks_ = false;
    struct PendingPress {
        NodeId target;
        Point position;
        int button = 0;
        Modifiers modifiers;
    };
    std::optional<PendingPress> pendingPress_;

    // Bumped whenever the execution is torn down; in-flight signal dispatch
    // stops when it observes a change.
    std::uint64_t generation_ = 0;
};

} // namespace uibind
