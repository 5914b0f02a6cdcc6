#pragma once

#include "uibind/binding.hpp"
#include "uibind/command.hpp"
#include "uibind/context.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace uibind {

// A failed expectation inside testkit checkers. Checker code throws this
// (via check()) for a Fail outcome; any other exception is an Error.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check(bool condition, const std::string& message) {
    if (!condition) {
        throw CheckFailure(message);
    }
}

// Records every command a context's bindings finish, including discarded
// ones. Attach before dispatching events.
class BindingsObservation {
public:
    struct Record {
        std::string binding;
        std::shared_ptr<Command> command;
        CommandStatus status{};
        std::uint64_t executionId = 0;
    };

    explicit BindingsObservation(BindingContext& context) {
        context.setCommandObserver([this](const Binding& binding,
                                          const std::shared_ptr<Command>& command,
                                          CommandStatus status, std::uint64_t executionId) {
            records_.push_back(Record{binding.name(), command, status, executionId});
        });
    }

    const std::vector<Record>& records() const noexcept { return records_; }
    void clear() { records_.clear(); }

    template <class C>
    std::size_t countOf() const {
        std::size_t n = 0;
        for (const auto& r : records_) {
            if (dynamic_cast<const C*>(r.command.get()) != nullptr) {
                ++n;
            }
        }
        return n;
    }

    std::size_t countWithStatus(CommandStatus status) const {
        std::size_t n = 0;
        for (const auto& r : records_) {
            if (r.status == status) {
                ++n;
            }
        }
        return n;
    }

private:
    std::vector<Record> records_;
};

// Throws CheckFailure unless exactly `expected` commands of type C were
// recorded.
template <class C>
void assertCmdProduced(const BindingsObservation& observation, std::size_t expected) {
    const std::size_t actual = observation.countOf<C>();
    check(actual == expected, "expected " + std::to_string(expected) +
                                  " commands of the requested type, saw " +
                                  std::to_string(actual));
}

// Declarative regression suite for one command type. Fixtures build a fresh
// command over a freshly reset world; checkers inspect that world afterward.
struct CommandSuiteSpec {
    std::string command;
    std::vector<std::function<std::shared_ptr<Command>()>> canDoFixtures;
    std::vector<std::function<std::shared_ptr<Command>()>> cannotDoFixtures;
    std::vector<std::function<void(Command&)>> doCheckers;
    std::vector<std::function<void(Command&)>> undoCheckers;
};

struct SuiteCase {
    std::string name;
    std::string outcome; // pass, fail, error
    std::string detail;
};

struct SuiteReport {
    std::string command;
    std::vector<SuiteCase> cases;

    bool allPassed() const;
    nlohmann::json toJson() const;
};

// Derives and runs the standard scenarios: canDo, do, undo, redo, three
// undo/redo cycles and cannotDo. Undo scenarios appear only for undoable
// commands; a spec whose undo checkers disagree with the command's
// undoability fails validation.
SuiteReport runCommandSuite(const CommandSuiteSpec& spec);

// Input for test scaffolding: the command's name, its setup fields and
// whether it is undoable.
struct CommandMeta {
    std::string name;
    std::vector<std::string> fields;
    bool undoable = true;
};

// Emits a doctest skeleton exercising the standard scenarios for one
// command, with TODO markers where fixture code belongs.
std::string generateTestSkeleton(const CommandMeta& meta);

} // namespace uibind
