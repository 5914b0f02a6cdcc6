#include "uibind/fsm.hpp"

#include <deque>
#include <stdexcept>

namespace uibind {

std::string_view toString(Signal signal) {
    switch (signal) {
        case Signal::Started: return "started";
        case Signal::Updated: return "updated";
        case Signal::Ended: return "ended";
        case Signal::Cancelled: return "cancelled";
    }
    return "unknown";
}

void Fsm::addState(StateId id, StateKind kind) {
    if (index_.count(id)) {
        throw std::logic_error("duplicate state: " + id);
    }
    if (kind == StateKind::Initial) {
        if (initial_ != kNoState) {
            throw std::logic_error("machine already has an initial state: " +
                                   states_[initial_].name);
        }
        initial_ = states_.size();
        current_ = states_.size();
    }
    index_.emplace(id, states_.size());
    StateInfo info;
    info.name = std::move(id);
    info.kind = kind;
    states_.push_back(std::move(info));
}

void Fsm::addTransition(Transition transition) {
    auto source = index_.find(transition.source);
    if (source == index_.end()) {
        throw std::logic_error("transition from unknown state: " + transition.source);
    }
    auto target = index_.find(transition.target);
    if (target == index_.end()) {
        throw std::logic_error("transition to unknown state: " + transition.target);
    }
    const std::size_t idx = transitions_.size();
    StateInfo& from = states_[source->second];
    from.outgoing.push_back(idx);
    if (std::holds_alternative<TimeoutSpec>(transition.trigger)) {
        from.timeouts.push_back(idx);
    }
    if (std::holds_alternative<SubFsmRef>(transition.trigger)) {
        from.hasInnerRefs = true;
    }
    targets_.push_back(target->second);
    transitions_.push_back(std::move(transition));
}

void Fsm::addInnerMachine(FsmId id, std::unique_ptr<Fsm> machine) {
    if (inner_.count(id)) {
        throw std::logic_error("duplicate inner machine: " + id);
    }
    machine->setTimeoutHost(host_);
    inner_.emplace(std::move(id), std::move(machine));
}

void Fsm::setConcurrency(ConcurrencySpec spec) {
    if (spec.required < 1) {
        throw std::invalid_argument("concurrency requires at least one copy");
    }
    if (!spec.make) {
        throw std::invalid_argument("concurrency requires a copy factory");
    }
    if (states_.empty()) {
        addState("initial", StateKind::Initial);
        addState("running", StateKind::Standard);
        addState("done", StateKind::Terminal);
    }
    concurrency_ = std::move(spec);
}

void Fsm::setEntryHook(const StateId& state, std::function<void()> hook) {
    auto it = index_.find(state);
    if (it == index_.end()) {
        throw std::logic_error("entry hook on unknown state: " + state);
    }
    states_[it->second].entryHook = std::move(hook);
}

void Fsm::setExitHook(const StateId& state, std::function<void()> hook) {
    auto it = index_.find(state);
    if (it == index_.end()) {
        throw std::logic_error("exit hook on unknown state: " + state);
    }
    states_[it->second].exitHook = std::move(hook);
}

void Fsm::setTimeoutHost(TimeoutHost host) {
    host_ = host;
    propagateHost();
}

void Fsm::propagateHost() {
    for (auto& [id, machine] : inner_) {
        machine->setTimeoutHost(host_);
    }
    for (auto& [key, copy] : copies_) {
        copy->setTimeoutHost(host_);
    }
}

void Fsm::validate() const {
    if (initial_ == kNoState) {
        throw std::logic_error("machine must have exactly one initial state");
    }
    if (!concurrency_) {
        bool finalReachable = false;
        for (const StateInfo& state : states_) {
            if ((state.kind == StateKind::Terminal || state.kind == StateKind::Cancelling) &&
                reachable(states_[initial_].name, state.name)) {
                finalReachable = true;
                break;
            }
        }
        if (!finalReachable) {
            throw std::logic_error(
                "no terminal or cancelling state is reachable from the initial state");
        }
    }
    for (const Transition& t : transitions_) {
        if (const auto* spec = std::get_if<TimeoutSpec>(&t.trigger)) {
            if (spec->duration <= 0) {
                throw std::logic_error("timeout transitions need a positive duration");
            }
        }
        if (const auto* ref = std::get_if<SubFsmRef>(&t.trigger)) {
            if (!inner_.count(ref->id)) {
                throw std::logic_error("transition references unknown inner machine: " + ref->id);
            }
        }
    }
    for (const auto& [id, machine] : inner_) {
        machine->validate();
    }
}

bool Fsm::reachable(const StateId& from, const StateId& to) const {
    if (from == to) {
        return true;
    }
    std::set<StateId> seen{from};
    std::deque<StateId> queue{from};
    while (!queue.empty()) {
        StateId state = queue.front();
        queue.pop_front();
        for (const Transition& t : transitions_) {
            if (t.source != state || seen.count(t.target)) {
                continue;
            }
            if (t.target == to) {
                return true;
            }
            seen.insert(t.target);
            queue.push_back(t.target);
        }
    }
    return false;
}

StateKind Fsm::stateKind(const StateId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw std::logic_error("unknown state: " + id);
    }
    return states_[it->second].kind;
}

bool Fsm::usesEventKind(EventKind kind) const {
    for (const Transition& t : transitions_) {
        if (const auto* m = std::get_if<EventMatcher>(&t.trigger)) {
            if (m->kind == kind) {
                return true;
            }
        }
    }
    for (const auto& [id, machine] : inner_) {
        if (machine->usesEventKind(kind)) {
            return true;
        }
    }
    return false;
}

void Fsm::armTimeouts() {
    for (std::size_t i : states_[current_].timeouts) {
        const auto& spec = std::get<TimeoutSpec>(transitions_[i].trigger);
        if (!host_.schedule) {
            throw std::logic_error("timeout transition armed without a clock host");
        }
        armed_.emplace(host_.schedule(spec.duration), i);
    }
}

void Fsm::disarmTimeouts() {
    for (const auto& [token, idx] : armed_) {
        if (host_.cancel) {
            host_.cancel(token);
        }
    }
    armed_.clear();
}

void Fsm::reinitInnerMachinesOf(std::size_t state) {
    for (std::size_t i : states_[state].outgoing) {
        if (const auto* ref = std::get_if<SubFsmRef>(&transitions_[i].trigger)) {
            inner_.at(ref->id)->reinit();
        }
    }
}

FsmOutcome Fsm::fire(std::size_t transitionIdx, const Event* event) {
    const Transition& transition = transitions_[transitionIdx];
    const std::size_t targetIdx = targets_[transitionIdx];
    StateInfo& source = states_[current_];
    FsmOutcome out;
    out.consumedEvent = true;
    const bool leavingInitial = !started_ && source.kind == StateKind::Initial;
    const bool stateChange = targetIdx != current_;

    if (!armed_.empty()) {
        disarmTimeouts();
    }
    if (source.exitHook) {
        source.exitHook();
    }
    // A self-loop re-arms timeouts but keeps inner-machine progress; only a
    // real state change resets the machines hanging off the left state.
    if (stateChange && source.hasInnerRefs) {
        reinitInnerMachinesOf(current_);
    }

    if (leavingInitial) {
        started_ = true;
        out.add(Signal::Started);
    }
    current_ = targetIdx;
    if (transition.onFire) {
        transition.onFire(event);
    }

    StateInfo& target = states_[targetIdx];
    if (target.kind != StateKind::Cancelling) {
        out.add(Signal::Updated);
    }
    if (target.kind == StateKind::Terminal) {
        out.add(Signal::Ended);
    }
    if (target.kind == StateKind::Cancelling) {
        out.add(Signal::Cancelled);
    }

    if (target.entryHook) {
        target.entryHook();
    }

    if (target.kind == StateKind::Terminal || target.kind == StateKind::Cancelling) {
        finished_ = true;
    } else if (!target.timeouts.empty()) {
        armTimeouts();
    }
    return out;
}

FsmOutcome Fsm::processEvent(const Event& event) {
    if (finished_ || current_ == kNoState) {
        return {};
    }
    if (concurrency_) {
        return processConcurrent(event);
    }
    for (std::size_t i : states_[current_].outgoing) {
        const Transition& t = transitions_[i];
        if (const auto* matcher = std::get_if<EventMatcher>(&t.trigger)) {
            if (matcher->kind != event.kind) {
                continue;
            }
            if (matcher->filter && !matcher->filter(event)) {
                continue;
            }
            if (t.guard && !t.guard(event)) {
                continue;
            }
            return fire(i, &event);
        }
        if (const auto* ref = std::get_if<SubFsmRef>(&t.trigger)) {
            Fsm& inner = *inner_.at(ref->id);
            FsmOutcome innerOutcome = inner.processEvent(event);
            if (innerOutcome.has(Signal::Ended)) {
                if (!t.guard || t.guard(event)) {
                    inner.reinit();
                    return fire(i, &event);
                }
                inner.reinit();
                FsmOutcome out;
                out.consumedEvent = true;
                return out;
            }
            if (innerOutcome.has(Signal::Cancelled)) {
                // Inner cancellation never advances the composite; the inner
                // machine just starts over.
                inner.reinit();
                FsmOutcome out;
                out.consumedEvent = innerOutcome.consumedEvent;
                return out;
            }
            if (innerOutcome.consumedEvent) {
                FsmOutcome out;
                out.consumedEvent = true;
                return out;
            }
            continue;
        }
    }
    return {};
}

FsmOutcome Fsm::processConcurrent(const Event& event) {
    FsmOutcome out;
    if (!event.touchId) {
        return out;
    }
    const int key = *event.touchId;
    auto it = copies_.find(key);
    bool spawned = false;
    if (it == copies_.end()) {
        if (event.kind != EventKind::TouchStart) {
            return out;
        }
        if (static_cast<int>(copies_.size()) >= concurrency_->required) {
            return out;
        }
        spawnConcurrent(key);
        it = copies_.find(key);
        spawned = true;
    }
    FsmOutcome innerOutcome = it->second->processEvent(event);
    if (!innerOutcome.consumedEvent && !spawned) {
        return out;
    }
    out.consumedEvent = innerOutcome.consumedEvent || spawned;
    applyCensus(out, key);
    return out;
}

void Fsm::applyCensus(FsmOutcome& out, int key) {
    const int required = concurrency_->required;
    if (!started_) {
        auto it = copies_.find(key);
        if (it != copies_.end() && it->second->finished()) {
            // A touch completing before recognition frees its slot.
            copies_.erase(it);
            if (concurrency_->onDiscard) {
                concurrency_->onDiscard(key);
            }
            return;
        }
        if (static_cast<int>(copies_.size()) == required) {
            started_ = true;
            current_ = index_.at("running");
            out.add(Signal::Started);
        }
        return;
    }
    bool allDone = true;
    for (const auto& [k, copy] : copies_) {
        if (!copy->finished()) {
            allDone = false;
            break;
        }
    }
    if (allDone) {
        current_ = index_.at("done");
        finished_ = true;
        out.add(Signal::Ended);
    } else {
        out.add(Signal::Updated);
    }
}

FsmOutcome Fsm::onTimeout(VirtualClock::Token token) {
    if (finished_ || current_ == kNoState) {
        return {};
    }
    if (auto it = armed_.find(token); it != armed_.end()) {
        return fire(it->second, nullptr);
    }
    if (concurrency_) {
        for (auto& [key, copy] : copies_) {
            FsmOutcome innerOutcome = copy->onTimeout(token);
            if (!innerOutcome.consumedEvent) {
                continue;
            }
            FsmOutcome out;
            out.consumedEvent = true;
            applyCensus(out, key);
            return out;
        }
        return {};
    }
    for (std::size_t i : states_[current_].outgoing) {
        const Transition& t = transitions_[i];
        const auto* ref = std::get_if<SubFsmRef>(&t.trigger);
        if (!ref) {
            continue;
        }
        Fsm& inner = *inner_.at(ref->id);
        FsmOutcome innerOutcome = inner.onTimeout(token);
        if (!innerOutcome.consumedEvent) {
            continue;
        }
        if (innerOutcome.has(Signal::Ended)) {
            inner.reinit();
            return fire(i, nullptr);
        }
        FsmOutcome out;
        out.consumedEvent = true;
        if (innerOutcome.has(Signal::Cancelled)) {
            inner.reinit();
        }
        return out;
    }
    return {};
}

std::set<EventKind> Fsm::activeEventKinds() const {
    std::set<EventKind> kinds;
    if (finished_ || current_ == kNoState) {
        return kinds;
    }
    if (concurrency_) {
        if (static_cast<int>(copies_.size()) < concurrency_->required) {
            kinds.insert(EventKind::TouchStart);
        }
        for (const auto& [key, copy] : copies_) {
            auto innerKinds = copy->activeEventKinds();
            kinds.insert(innerKinds.begin(), innerKinds.end());
        }
        return kinds;
    }
    for (std::size_t i : states_[current_].outgoing) {
        const Transition& t = transitions_[i];
        if (const auto* matcher = std::get_if<EventMatcher>(&t.trigger)) {
            kinds.insert(matcher->kind);
        } else if (const auto* ref = std::get_if<SubFsmRef>(&t.trigger)) {
            auto innerKinds = inner_.at(ref->id)->activeEventKinds();
            kinds.insert(innerKinds.begin(), innerKinds.end());
        }
    }
    return kinds;
}

void Fsm::reinit() {
    disarmTimeouts();
    current_ = initial_;
    started_ = false;
    finished_ = false;
    for (auto& [id, machine] : inner_) {
        machine->reinit();
    }
    copies_.clear();
}

void Fsm::spawnConcurrent(int key) {
    if (!concurrency_) {
        throw std::logic_error("machine has no concurrency spec");
    }
    if (copies_.count(key)) {
        throw std::runtime_error("touch already tracked: " + std::to_string(key));
    }
    auto copy = concurrency_->make(key);
    copy->setTimeoutHost(host_);
    copies_.emplace(key, std::move(copy));
}

} // namespace uibind
