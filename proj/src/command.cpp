#include "uibind/command.hpp"

#include <stdexcept>
#include <utility>

namespace uibind {

std::string_view toString(CommandStatus status) {
    switch (status) {
    case CommandStatus::Created: return "created";
    case CommandStatus::Executed: return "executed";
    case CommandStatus::Done: return "done";
    case CommandStatus::Discarded: return "discarded";
    }
    return "unknown";
}

Completion::Completion() : state_(std::make_shared<State>()) {
    state_->resolved = true;
    state_->ok = true;
}

Completion Completion::failed() {
    Completion c;
    c.state_->ok = false;
    return c;
}

Completion Completion::pending() {
    Completion c;
    c.state_->resolved = false;
    c.state_->ok = false;
    return c;
}

bool Completion::resolved() const noexcept { return state_->resolved; }

bool Completion::ok() const noexcept { return state_->resolved && state_->ok; }

void Completion::resolve(bool ok) {
    if (state_->resolved) {
        throw std::logic_error("completion already resolved");
    }
    state_->resolved = true;
    state_->ok = ok;
    auto callbacks = std::move(state_->callbacks);
    state_->callbacks.clear();
    for (auto& cb : callbacks) {
        cb(ok);
    }
}

void Completion::onResolve(std::function<void(bool)> cb) {
    if (state_->resolved) {
        cb(state_->ok);
        return;
    }
    state_->callbacks.push_back(std::move(cb));
}

Completion Command::execute() {
    if (status_ == CommandStatus::Done || status_ == CommandStatus::Discarded) {
        return Completion::failed();
    }
    if (!canDo()) {
        return Completion::failed();
    }
    if (!mementoSaved_) {
        createMemento();
        mementoSaved_ = true;
    }
    Completion completion;
    try {
        completion = execution();
    } catch (...) {
        return Completion::failed();
    }
    completion.onResolve([this](bool ok) {
        if (ok && status_ == CommandStatus::Created) {
            status_ = CommandStatus::Executed;
        }
    });
    return completion;
}

void Command::done() {
    if (status_ == CommandStatus::Done) {
        return;
    }
    if (status_ != CommandStatus::Executed) {
        throw std::logic_error("cannot mark a command done before it executed");
    }
    status_ = CommandStatus::Done;
}

void Command::discard() {
    if (status_ == CommandStatus::Discarded) {
        return;
    }
    if (status_ != CommandStatus::Created) {
        throw std::logic_error("cannot discard a command that executed");
    }
    status_ = CommandStatus::Discarded;
}

bool isUndoable(const Command& command) {
    return dynamic_cast<const Undoable*>(&command) != nullptr;
}

void undoCommand(Command& command) {
    auto* undoable = dynamic_cast<Undoable*>(&command);
    if (undoable == nullptr) {
        throw std::logic_error("command is not undoable");
    }
    if (!command.hasMemento()) {
        throw std::logic_error("no memento: command never executed");
    }
    undoable->undo();
}

void redoCommand(Command& command) {
    auto* undoable = dynamic_cast<Undoable*>(&command);
    if (undoable == nullptr) {
        throw std::logic_error("command is not undoable");
    }
    if (!command.hasMemento()) {
        throw std::logic_error("no memento: command never executed");
    }
    undoable->redo();
}

UndoHistory::UndoHistory(std::size_t capacity) : capacity_(capacity) {}

void UndoHistory::add(std::shared_ptr<Command> command) {
    if (!command) {
        throw std::logic_error("cannot add a null command to history");
    }
    if (!isUndoable(*command)) {
        throw std::logic_error("cannot add a non-undoable command to history");
    }
    redoables_.clear();
    undoables_.push_back(std::move(command));
    while (undoables_.size() > capacity_) {
        undoables_.pop_front();
    }
}

std::shared_ptr<Command> UndoHistory::undo() {
    if (undoables_.empty()) {
        return nullptr;
    }
    auto command = undoables_.back();
    undoables_.pop_back();
    undoCommand(*command);
    redoables_.push_back(command);
    return command;
}

std::shared_ptr<Command> UndoHistory::redo() {
    if (redoables_.empty()) {
        return nullptr;
    }
    auto command = redoables_.back();
    redoables_.pop_back();
    redoCommand(*command);
    undoables_.push_back(command);
    return command;
}

void UndoHistory::clear() {
    undoables_.clear();
    redoables_.clear();
}

void UndoHistory::setCapacity(std::size_t capacity) {
    capacity_ = capacity;
    while (undoables_.size() > capacity_) {
        undoables_.pop_front();
    }
}

} // namespace uibind
