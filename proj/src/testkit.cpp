#include "uibind/testkit.hpp"

#include <sstream>

namespace uibind {

namespace {

SuiteCase runCase(const std::string& name, const std::function<void()>& body) {
    try {
        body();
        return {name, "pass", ""};
    } catch (const CheckFailure& failure) {
        return {name, "fail", failure.what()};
    } catch (const std::exception& error) {
        return {name, "error", error.what()};
    } catch (...) {
        return {name, "error", "unknown exception"};
    }
}

} // namespace

bool SuiteReport::allPassed() const {
    for (const auto& c : cases) {
        if (c.outcome != "pass") {
            return false;
        }
    }
    return !cases.empty();
}

nlohmann::json SuiteReport::toJson() const {
    nlohmann::json caseArray = nlohmann::json::array();
    for (const auto& c : cases) {
        caseArray.push_back({{"name", c.name}, {"outcome", c.outcome}, {"detail", c.detail}});
    }
    return {{"command", command}, {"cases", caseArray}, {"all_passed", allPassed()}};
}

SuiteReport runCommandSuite(const CommandSuiteSpec& spec) {
    SuiteReport report;
    report.command = spec.command;

    if (spec.canDoFixtures.empty()) {
        report.cases.push_back({"validation", "error", "suite needs at least one canDo fixture"});
        return report;
    }

    // Probe undoability once to validate the spec against the command.
    bool undoable = false;
    try {
        auto probe = spec.canDoFixtures.front()();
        check(probe != nullptr, "fixture returned null");
        undoable = isUndoable(*probe);
    } catch (const std::exception& error) {
        report.cases.push_back({"validation", "error",
                                std::string("probing the first fixture failed: ") + error.what()});
        return report;
    }
    if (undoable && spec.undoCheckers.empty()) {
        report.cases.push_back(
            {"validation", "error", "undoable command but no undo checkers given"});
        return report;
    }
    if (!undoable && !spec.undoCheckers.empty()) {
        report.cases.push_back(
            {"validation", "error", "undo checkers given for a command that is not undoable"});
        return report;
    }

    auto runCheckers = [](const std::vector<std::function<void(Command&)>>& checkers,
                          Command& command) {
        for (const auto& checker : checkers) {
            checker(command);
        }
    };

    for (std::size_t i = 0; i < spec.canDoFixtures.size(); ++i) {
        const auto& fixture = spec.canDoFixtures[i];
        const std::string tag = "[" + std::to_string(i) + "]";

        report.cases.push_back(runCase("canDo" + tag, [&] {
            auto command = fixture();
            check(command->canExecute(), "command cannot execute in a canDo fixture");
        }));

        report.cases.push_back(runCase("do" + tag, [&] {
            auto command = fixture();
            Completion completion = command->execute();
            check(completion.ok(), "execution did not resolve ok");
            runCheckers(spec.doCheckers, *command);
        }));

        if (undoable) {
            report.cases.push_back(runCase("undo" + tag, [&] {
                auto command = fixture();
                check(command->execute().ok(), "execution did not resolve ok");
                undoCommand(*command);
                runCheckers(spec.undoCheckers, *command);
            }));

            report.cases.push_back(runCase("redo" + tag, [&] {
                auto command = fixture();
                check(command->execute().ok(), "execution did not resolve ok");
                undoCommand(*command);
                redoCommand(*command);
                runCheckers(spec.doCheckers, *command);
            }));

            report.cases.push_back(runCase("cycles" + tag, [&] {
                auto command = fixture();
                check(command->execute().ok(), "execution did not resolve ok");
                for (int cycle = 0; cycle < 3; ++cycle) {
                    undoCommand(*command);
                    runCheckers(spec.undoCheckers, *command);
                    redoCommand(*command);
                    runCheckers(spec.doCheckers, *command);
                }
            }));
        }
    }

    for (std::size_t i = 0; i < spec.cannotDoFixtures.size(); ++i) {
        const auto& fixture = spec.cannotDoFixtures[i];
        report.cases.push_back(runCase("cannotDo[" + std::to_string(i) + "]", [&] {
            auto command = fixture();
            check(command != nullptr, "fixture returned null");
            check(!command->canExecute(), "command can execute in a cannotDo fixture");
        }));
    }

    return report;
}

std::string generateTestSkeleton(const CommandMeta& meta) {
    std::ostringstream out;
    std::string fields;
    for (std::size_t i = 0; i < meta.fields.size(); ++i) {
        if (i > 0) {
            fields += ", ";
        }
        fields += meta.fields[i];
    }

    out << "#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN\n";
    out << "#include \"doctest.h\"\n";
    out << "\n";
    out << "// Generated test skeleton for the " << meta.name << " command.\n";
    out << "// Fill in every TODO before running.\n";
    out << "\n";
    out << "namespace {\n";
    out << "\n";
    out << "// TODO: build a fresh world and a " << meta.name
        << " command that can execute.\n";
    out << "// Fields to set up: " << (fields.empty() ? "(none)" : fields) << "\n";
    out << "// auto makeCanDo = [] { ... };\n";
    out << "\n";
    out << "// TODO: build a " << meta.name << " command that must refuse to execute.\n";
    out << "// auto makeCannotDo = [] { ... };\n";
    out << "\n";
    out << "} // namespace\n";
    out << "\n";
    out << "TEST_CASE(\"" << meta.name << ": can execute\") {\n";
    out << "    // TODO: auto cmd = makeCanDo();\n";
    out << "    // CHECK(cmd->canExecute());\n";
    out << "}\n";
    out << "\n";
    out << "TEST_CASE(\"" << meta.name << ": executes\") {\n";
    out << "    // TODO: auto cmd = makeCanDo();\n";
    out << "    // CHECK(cmd->execute().ok());\n";
    out << "    // TODO: check the world changed as intended (fields: "
        << (fields.empty() ? "(none)" : fields) << ")\n";
    out << "}\n";
    out << "\n";
    if (meta.undoable) {
        out << "TEST_CASE(\"" << meta.name << ": undo restores the previous state\") {\n";
        out << "    // TODO: auto cmd = makeCanDo();\n";
        out << "    // CHECK(cmd->execute().ok());\n";
        out << "    // uibind::undoCommand(*cmd);\n";
        out << "    // TODO: check the world is back to the fixture state\n";
        out << "}\n";
        out << "\n";
        out << "TEST_CASE(\"" << meta.name << ": redo applies the change again\") {\n";
        out << "    // TODO: auto cmd = makeCanDo();\n";
        out << "    // CHECK(cmd->execute().ok());\n";
        out << "    // uibind::undoCommand(*cmd);\n";
        out << "    // uibind::redoCommand(*cmd);\n";
        out << "    // TODO: check the world matches the executed state\n";
        out << "}\n";
        out << "\n";
        out << "TEST_CASE(\"" << meta.name << ": survives undo/redo cycles\") {\n";
        out << "    // TODO: auto cmd = makeCanDo();\n";
        out << "    // CHECK(cmd->execute().ok());\n";
        out << "    // for (int i = 0; i < 3; ++i) { undo, check, redo, check }\n";
        out << "}\n";
        out << "\n";
    }
    out << "TEST_CASE(\"" << meta.name << ": refuses to execute when it cannot\") {\n";
    out << "    // TODO: auto cmd = makeCannotDo();\n";
    out << "    // CHECK(!cmd->canExecute());\n";
    out << "}\n";
    return out.str();
}

} // namespace uibind
