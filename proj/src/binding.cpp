#include "uibind/binding.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace uibind {

Binding::Binding(BindingContext& context, BindingConfig config)
    : context_(&context), config_(std::move(config)) {
    if (!config_.interaction) {
        throw std::invalid_argument("binding requires an interaction");
    }
    if (!config_.factory) {
        throw std::invalid_argument("binding requires a command factory");
    }
    config_.interaction->setObserver([this](Signal signal) { onSignal(signal); });
    syncNodes();
    if (config_.dynamicNodes) {
        subscription_ = config_.dynamicNodes->subscribe([this] { syncNodes(); });
    }
}

Binding::~Binding() {
    if (config_.dynamicNodes && subscription_) {
        config_.dynamicNodes->unsubscribe(*subscription_);
    }
    if (windowOpen_) {
        context_->clock().cancel(windowToken_);
    }
}

void Binding::offer(Event& event) {
    if (!passesKeyFilter(event)) {
        return;
    }
    if (config_.throttle <= 0) {
        deliverNow(event);
        return;
    }
    if (!windowOpen_) {
        // First event of a fresh window is held until the window closes.
        windowOpen_ = true;
        pending_ = event;
        windowToken_ =
            context_->clock().schedule(context_->clock().now() + config_.throttle,
                                       [this](VirtualClock::Token t) { onWindowClose(t); });
        return;
    }
    if (pending_ && pending_->kind == event.kind) {
        pending_ = event;
        return;
    }
    // A different kind closes the window early: flush what was held, then
    // pass the newcomer through so ordering survives.
    context_->clock().cancel(windowToken_);
    windowOpen_ = false;
    flushPending();
    deliverNow(event);
}

bool Binding::passesKeyFilter(const Event& event) const {
    if (!config_.keyFilter || !isKeyKind(event.kind)) {
        return true;
    }
    return event.key && config_.keyFilter->count(*event.key) > 0;
}

void Binding::deliverNow(Event& event) {
    FsmOutcome outcome = config_.interaction->deliver(event);
    if (config_.consume && outcome.consumedEvent) {
        event.consume();
    }
}

void Binding::flushPending() {
    if (!pending_) {
        return;
    }
    Event event = std::move(*pending_);
    pending_.reset();
    config_.interaction->deliver(event);
}

void Binding::onWindowClose(VirtualClock::Token token) {
    if (!windowOpen_ || token != windowToken_) {
        return;
    }
    windowOpen_ = false;
    flushPending();
}

void Binding::onSignal(Signal signal) {
    if (logs(LogLevel::Interaction)) {
        log(LogLevel::Interaction,
            "interaction " + config_.interaction->name() + ": " + std::string(toString(signal)));
    }
    switch (signal) {
    case Signal::Started: onStart(); break;
    case Signal::Updated: onUpdate(); break;
    case Signal::Ended: onEnd(); break;
    case Signal::Cancelled: onCancel(); break;
    }
}

void Binding::onStart() {
    ++executionsStarted_;
    executionId_ = executionsStarted_;
    bool whenOk = true;
    if (!runGuarded("when", [&] { whenOk = !config_.when || config_.when(); })) {
        return;
    }
    if (whenOk) {
        createCommand();
        return;
    }
    if (config_.strictStart) {
        log(LogLevel::Binding, "strict start: condition false, cancelling the interaction");
        config_.interaction->forceCancel();
        return;
    }
    log(LogLevel::Binding, "when rejected at start");
}

void Binding::onUpdate() {
    bool whenOk = true;
    if (!runGuarded("when", [&] { whenOk = !config_.when || config_.when(); })) {
        return;
    }
    if (!whenOk) {
        if (logs(LogLevel::Binding)) {
            log(LogLevel::Binding, "when rejected at update");
        }
        return;
    }
    if (!command_ && !createCommand()) {
        return;
    }
    if (!runGuarded("then", [&] {
            if (config_.then) {
                config_.then(*command_);
            }
        })) {
        return;
    }
    if (!config_.continuous) {
        return;
    }
    executeCommand();
}

void Binding::executeCommand() {
    bool can = false;
    if (!runGuarded("canExecute", [&] { can = command_->canExecute(); })) {
        return;
    }
    if (!can) {
        return;
    }
    command_->execute();
    if (logs(LogLevel::Cmd)) {
        log(LogLevel::Cmd, "command executed");
    }
}

void Binding::onEnd() {
    bool whenOk = true;
    if (!runGuarded("when", [&] { whenOk = !config_.when || config_.when(); })) {
        return;
    }
    if (whenOk) {
        if (command_ || createCommand()) {
            if (command_) {
                if (!runGuarded("then", [&] {
                        if (config_.then) {
                            config_.then(*command_);
                        }
                    })) {
                    return;
                }
                settleAtEnd();
            }
        } else {
            return;
        }
    } else {
        log(LogLevel::Binding, "when rejected at end");
    }
    Command* raw = command_.get();
    if (config_.endHook) {
        runTerminalHook("end", [&] { config_.endHook(raw); });
    }
    if (config_.endOrCancelHook) {
        runTerminalHook("endOrCancel", [&] { config_.endOrCancelHook(raw); });
    }
    finishCommand();
}

void Binding::settleAtEnd() {
    bool can = false;
    if (!runGuarded("canExecute", [&] { can = command_->canExecute(); })) {
        return;
    }
    if (can) {
        Completion completion = command_->execute();
        log(LogLevel::Cmd, "command executed");
        auto cmd = command_;
        completion.onResolve([this, cmd](bool ok) {
            if (ok) {
                if (isUndoable(*cmd)) {
                    context_->history().add(cmd);
                    log(LogLevel::Cmd, "command registered for undo");
                }
                cmd->done();
                log(LogLevel::Cmd, "command done");
            } else if (cmd->status() == CommandStatus::Created) {
                cmd->discard();
                log(LogLevel::Cmd, "command discarded: execution failed");
            }
        });
        return;
    }
    if (command_->status() == CommandStatus::Created) {
        command_->discard();
        log(LogLevel::Cmd, "command discarded: cannot execute");
    }
}

void Binding::onCancel() {
    Command* raw = command_.get();
    if (config_.cancelHook) {
        runTerminalHook("cancel", [&] { config_.cancelHook(raw); });
    }
    if (config_.endOrCancelHook) {
        runTerminalHook("endOrCancel", [&] { config_.endOrCancelHook(raw); });
    }
    if (command_ && config_.continuous && command_->status() == CommandStatus::Executed) {
        try {
            undoCommand(*command_);
            log(LogLevel::Cmd, "command undone: interaction cancelled");
        } catch (const std::exception& ex) {
            log(LogLevel::Binding, std::string("undo on cancel failed: ") + ex.what(), true);
        }
    }
    finishCommand();
}

bool Binding::createCommand() {
    std::shared_ptr<Command> made;
    if (!runGuarded("produce", [&] { made = config_.factory(); })) {
        return false;
    }
    if (!made) {
        log(LogLevel::Binding, "command factory returned null", true);
        teardownOnError();
        return false;
    }
    command_ = std::move(made);
    ++commandsCreated_;
    context_->noteCommandCreated();
    log(LogLevel::Cmd, "command created: " + command_->name());
    if (!runGuarded("first", [&] {
            if (config_.first) {
                config_.first(*command_);
            }
        })) {
        return false;
    }
    return true;
}

void Binding::finishCommand() {
    if (!command_) {
        return;
    }
    if (command_->status() == CommandStatus::Created) {
        // Never ran; nothing will run it any more.
        command_->discard();
        log(LogLevel::Cmd, "command discarded: never executed");
    }
    context_->notifyCommandFinished(*this, command_, command_->status(), executionId_);
    command_.reset();
}

void Binding::syncNodes() {
    std::vector<NodeId> nodes = config_.staticNodes;
    if (config_.dynamicNodes) {
        for (const NodeId& node : config_.dynamicNodes->nodes()) {
            if (std::find(nodes.begin(), nodes.end(), node) == nodes.end()) {
                nodes.push_back(node);
            }
        }
    }
    config_.interaction->setNodes(std::move(nodes));
}

template <class F>
bool Binding::runGuarded(const char* stage, F&& f) {
    try {
        f();
        return true;
    } catch (const std::exception& ex) {
        log(LogLevel::Binding, std::string(stage) + " hook failed: " + ex.what(), true);
    } catch (...) {
        log(LogLevel::Binding, std::string(stage) + " hook failed", true);
    }
    teardownOnError();
    return false;
}

template <class F>
void Binding::runTerminalHook(const char* stage, F&& f) {
    // The execution is already over; a failing hook here is logged and the
    // terminal sequence continues.
    try {
        f();
    } catch (const std::exception& ex) {
        log(LogLevel::Binding, std::string(stage) + " hook failed: " + ex.what(), true);
    } catch (...) {
        log(LogLevel::Binding, std::string(stage) + " hook failed", true);
    }
}

void Binding::teardownOnError() {
    if (inErrorTeardown_) {
        return;
    }
    inErrorTeardown_ = true;
    config_.interaction->forceCancel();
    inErrorTeardown_ = false;
}

void Binding::log(LogLevel level, const std::string& message, bool force) {
    if (force || config_.logLevels.count(level) > 0) {
        context_->log(level, config_.name, message);
    }
}

} // namespace uibind
