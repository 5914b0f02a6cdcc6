#include "uibind/engine.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

// Exit codes: 0 success, 1 scenario problems or a failing benchmark, 2 bad
// input (unreadable files, malformed JSON or trace lines, bad options).
int main(int argc, char** argv) {
    CLI::App app{"Replay and benchmark UI interaction bindings on a deterministic virtual clock"};
    app.require_subcommand(1);

    std::string scenarioPath;
    std::string tracePath;
    std::string reportPath;
    std::vector<std::string> postOps;
    std::vector<std::string> logLevels;
    bool timing = false;
    int reps = 10;

    CLI::App* replay = app.add_subcommand("replay", "Replay an event trace against a scenario");
    replay->add_option("--scenario", scenarioPath, "Scenario JSON file")->required();
    replay->add_option("--trace", tracePath, "Event trace, one JSON object per line")->required();
    replay->add_option("--post", postOps, "History operations to run after the replay (undo, redo)")
        ->delimiter(',');
    replay->add_option("--log", logLevels, "Log levels to force on every binding")->delimiter(',');
    replay->add_option("--report", reportPath, "Also write the report to this file");
    replay->add_flag("--timing", timing, "Include wall-clock timing in the report");

    CLI::App* bench =
        app.add_subcommand("bench", "Compare binding dispatch against hand-written callbacks");
    bench->add_option("--scenario", scenarioPath, "Scenario JSON file")->required();
    bench->add_option("--trace", tracePath, "Event trace, one JSON object per line")->required();
    bench->add_option("--reps", reps, "Repetitions per side, at least 3");
    bench->add_option("--report", reportPath, "Also write the report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string scenarioText = readFile(scenarioPath);
        const std::string traceText = readFile(tracePath);
        uibind::Scenario scenario = uibind::parseScenarioText(scenarioText);
        const std::vector<uibind::Event> trace = uibind::parseTrace(traceText);

        nlohmann::json reportJson;
        int rc = 0;
        if (replay->parsed()) {
            for (const std::string& name : logLevels) {
                const uibind::LogLevel level = uibind::logLevelFromString(name);
                for (uibind::BindingSpec& spec : scenario.bindings) {
                    spec.logLevels.insert(level);
                }
            }
            const uibind::ReplayReport report = uibind::runReplay(scenario, trace, postOps);
            reportJson = report.toJson(timing);
        } else {
            const uibind::BenchmarkReport report = uibind::runBenchmark(scenario, trace, reps);
            reportJson = report.toJson();
            if (!report.pass) {
                rc = 1;
            }
        }

        const std::string text = reportJson.dump(2);
        std::cout << text << "\n";
        if (!reportPath.empty()) {
            std::ofstream out(reportPath, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot write report: " + reportPath);
            }
            out << text << "\n";
        }
        return rc;
    } catch (const uibind::ScenarioError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}
