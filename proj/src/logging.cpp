#include "uibind/logging.hpp"

#include "json.hpp"

#include <iostream>
#include <stdexcept>

namespace uibind {

std::string_view toString(LogLevel level) {
    switch (level) {
    case LogLevel::Interaction: return "interaction";
    case LogLevel::Binding: return "binding";
    case LogLevel::Cmd: return "cmd";
    }
    return "unknown";
}

LogLevel logLevelFromString(const std::string& name) {
    if (name == "interaction") {
        return LogLevel::Interaction;
    }
    if (name == "binding") {
        return LogLevel::Binding;
    }
    if (name == "cmd") {
        return LogLevel::Cmd;
    }
    throw std::invalid_argument("unknown log level: " + name);
}

LogSink stderrLogSink() {
    return [](const LogRecord& record) {
        nlohmann::json line = {
            {"level", toString(record.level)},
            {"t", record.time},
            {"binding", record.binding},
            {"msg", record.message},
        };
        std::cerr << line.dump() << "\n";
    };
}

} // namespace uibind
