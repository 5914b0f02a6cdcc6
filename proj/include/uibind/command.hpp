#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace uibind {

// Life cycle of a command. Transitions are monotone: Created -> Executed ->
// Done for commands that run, Created -> Discarded for commands that never
// do.
enum class CommandStatus {
    Created,
    Executed,
    Done,
    Discarded,
};

std::string_view toString(CommandStatus status);

// Outcome handle for one execution. Default-constructed completions are
// already resolved successfully; asynchronous executions hand out a pending
// completion and resolve it later. Copies share state.
class Completion {
public:
    Completion();

    static Completion failed();
    static Completion pending();

    bool resolved() const noexcept;
    // Only meaningful once resolved.
    bool ok() const noexcept;

    // Flips a pending completion. Throws std::logic_error if already
    // resolved. Callbacks run inside this call.
    void resolve(bool ok);

    // Runs `cb` with the result; immediately if already resolved. A pending
    // completion must not outlive the command that handed it out.
    void onResolve(std::function<void(bool)> cb);

private:
    struct State {
        bool resolved = false;
        bool ok = false;
        std::vector<std::function<void(bool)>> callbacks;
    };
    std::shared_ptr<State> state_;
};

// A user action as an object. Subclasses implement execution() and may
// override canDo() and createMemento(). execute() saves the memento exactly
// once, immediately before the first execution, so undo can restore the
// world as it was when the command first ran.
class Command {
public:
    virtual ~Command() = default;

    CommandStatus status() const noexcept { return status_; }
    bool hasMemento() const noexcept { return mementoSaved_; }
    bool canExecute() const { return canDo(); }
    virtual std::string name() const { return "command"; }

    // Runs the command if it can execute. Returns the execution's
    // completion; a failed completion if the command cannot run or threw.
    // The status flips to Executed when the completion resolves ok.
    Completion execute();

    // Marks normal completion. Legal from Executed (Done is idempotent).
    void done();

    // Marks a command that never ran as dead. Legal from Created (Discarded
    // is idempotent).
    void discard();

protected:
    virtual bool canDo() const { return true; }
    virtual Completion execution() = 0;
    // Captures whatever undo needs. Called at most once per command.
    virtual void createMemento() {}

private:
    CommandStatus status_ = CommandStatus::Created;
    bool mementoSaved_ = false;
};

// Mixin for commands that can be taken back. Implementations restore the
// memento in undo() and re-apply in redo().
class Undoable {
public:
    virtual ~Undoable() = default;
    virtual void undo() = 0;
    virtual void redo() = 0;
};

bool isUndoable(const Command& command);

// Undo/redo through the Command side. Throw std::logic_error when the
// command is not undoable or ran never (no memento).
void undoCommand(Command& command);
void redoCommand(Command& command);

// Linear undo/redo stacks over shared commands. Adding evicts the oldest
// entry beyond capacity and drops every redoable.
class UndoHistory {
public:
    explicit UndoHistory(std::size_t capacity = 20);

    // Requires an undoable command; throws std::logic_error otherwise.
    void add(std::shared_ptr<Command> command);

    // Undoes/redoes the newest entry and moves it across. Returns the
    // affected command, or nullptr when the stack is empty.
    std::shared_ptr<Command> undo();
    std::shared_ptr<Command> redo();

    void clear();
    void setCapacity(std::size_t capacity);
    std::size_t capacity() const noexcept { return capacity_; }

    const std::deque<std::shared_ptr<Command>>& undoables() const noexcept { return undoables_; }
    const std::deque<std::shared_ptr<Command>>& redoables() const noexcept { return redoables_; }

private:
    std::size_t capacity_;
    std::deque<std::shared_ptr<Command>> undoables_;
    std::deque<std::shared_ptr<Command>> redoables_;
};

} // namespace uibind
