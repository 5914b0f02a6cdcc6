#include "uibind/interaction.hpp"

#include <algorithm>
#include <stdexcept>

namespace uibind {

namespace {

// Press and release pair up into a click when they stay within this distance.
constexpr double kClickSlop = 1.0;

FsmOutcome merge(const FsmOutcome& a, const FsmOutcome& b) {
    if (b.empty() && !b.consumedEvent) {
        return a;
    }
    if (a.empty() && !a.consumedEvent) {
        return b;
    }
    FsmOutcome out;
    out.consumedEvent = a.consumedEvent || b.consumedEvent;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.add(a[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out.add(b[i]);
    }
    return out;
}

} // namespace

UserInteraction::UserInteraction(std::string name, VirtualClock& clock, DataSnapshot initialData)
    : name_(std::move(name)), clock_(&clock), fsm_(std::make_unique<Fsm>()),
      data_(std::move(initialData)) {}

void UserInteraction::seal() {
    fsm_->validate();
    installTimeoutHost();
    synthesizeClicks_ = fsm_->usesEventKind(EventKind::PointerClick);
    sealed_ = true;
}

void UserInteraction::installTimeoutHost() {
    TimeoutHost host;
    host.schedule = [this](Millis delay) {
        return clock_->schedule(clock_->now() + delay,
                                [this](VirtualClock::Token token) { handleClockFire(token); });
    };
    host.cancel = [this](VirtualClock::Token token) { clock_->cancel(token); };
    fsm_->setTimeoutHost(std::move(host));
}

FsmOutcome UserInteraction::deliver(Event& event) {
    if (!activated_ || !sealed_) {
        return {};
    }
    if (std::find(nodes_.begin(), nodes_.end(), event.target) == nodes_.end()) {
        return {};
    }

    FsmOutcome raw = fsm_->processEvent(event);
    FsmOutcome seen = applyLateStart(raw);
    dispatchOutcome(seen);

    // Click synthesis engages only for events the machine itself ignored.
    if (!synthesizeClicks_ || raw.consumedEvent) {
        return seen;
    }
    if (event.kind == EventKind::PointerPress) {
        pendingPress_ = PendingPress{event.target, *event.position, *event.button, event.modifiers};
        return seen;
    }
    if (event.kind != EventKind::PointerRelease) {
        return seen;
    }
    const bool pairs = pendingPress_ && pendingPress_->target == event.target &&
                       pendingPress_->button == *event.button &&
                       distance(pendingPress_->position, *event.position) <= kClickSlop;
    pendingPress_.reset();
    if (!pairs) {
        return seen;
    }
    EventPayload payload;
    payload.position = event.position;
    payload.button = event.button;
    payload.modifiers = event.modifiers;
    Event click = makeEvent(EventKind::PointerClick, event.time, event.target, std::move(payload));
    FsmOutcome clickRaw = fsm_->processEvent(click);
    FsmOutcome clickSeen = applyLateStart(clickRaw);
    dispatchOutcome(clickSeen);
    return merge(seen, clickSeen);
}

FsmOutcome UserInteraction::applyLateStart(const FsmOutcome& raw) {
    if (!lateStartState_ || lateStarted_) {
        return raw;
    }
    FsmOutcome seen;
    seen.consumedEvent = raw.consumedEvent;
    if (fsm_->currentState() == *lateStartState_) {
        lateStarted_ = true;
        seen.add(Signal::Started);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != Signal::Started) {
                seen.add(raw[i]);
            }
        }
    }
    // Before the visible start, transitions update data silently.
    return seen;
}

void UserInteraction::dispatchOutcome(const FsmOutcome& outcome) {
    const std::uint64_t generation = generation_;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        if (observer_) {
            observer_(outcome[i]);
        }
        if (generation_ != generation) {
            // The execution was torn down mid-dispatch (e.g. a strict-start
            // cancellation); remaining signals belong to a dead run.
            return;
        }
    }
    if (fsm_->finished()) {
        reinit();
    }
}

void UserInteraction::handleClockFire(VirtualClock::Token token) {
    if (!activated_) {
        return;
    }
    FsmOutcome raw = fsm_->onTimeout(token);
    FsmOutcome seen = applyLateStart(raw);
    dispatchOutcome(seen);
}

void UserInteraction::setNodes(std::vector<NodeId> nodes) {
    nodes_ = std::move(nodes);
}

void UserInteraction::addNode(const NodeId& node) {
    if (std::find(nodes_.begin(), nodes_.end(), node) == nodes_.end()) {
        nodes_.push_back(node);
    }
}

void UserInteraction::removeNode(const NodeId& node) {
    nodes_.erase(std::remove(nodes_.begin(), nodes_.end(), node), nodes_.end());
}

void UserInteraction::setLateStart(const StateId& state) {
    if (!fsm_->hasState(state)) {
        throw std::logic_error("late-start state does not exist: " + state);
    }
    if (!fsm_->reachable(fsm_->initialState(), state)) {
        throw std::logic_error("late-start state is unreachable: " + state);
    }
    lateStartState_ = state;
}

void UserInteraction::setActivated(bool activated) {
    if (!activated) {
        if (fsm_->started() && !fsm_->finished()) {
            forceCancel();
        } else {
            reinit();
        }
        activated_ = false;
        return;
    }
    activated_ = true;
}

std::set<EventKind> UserInteraction::effectiveEventKinds() const {
    std::set<EventKind> kinds = fsm_->activeEventKinds();
    if (synthesizeClicks_ && kinds.count(EventKind::PointerClick)) {
        kinds.insert(EventKind::PointerPress);
        kinds.insert(EventKind::PointerRelease);
    }
    return kinds;
}

void UserInteraction::reinit() {
    ++generation_;
    fsm_->reinit();
    flushData(data_);
    lateStarted_ = false;
    pendingPress_.reset();
}

void UserInteraction::forceCancel() {
    ++generation_;
    const bool ran = fsm_->started() && !fsm_->finished();
    const bool visible = ran && (!lateStartState_ || lateStarted_);
    if (visible && observer_) {
        observer_(Signal::Cancelled);
    }
    reinit();
}

} // namespace uibind
