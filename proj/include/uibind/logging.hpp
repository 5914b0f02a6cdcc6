#pragma once

#include "uibind/clock.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace uibind {

// What a binding can be asked to narrate: interaction life-cycle signals,
// binding routing decisions, command state changes.
enum class LogLevel {
    Interaction,
    Binding,
    Cmd,
};

std::string_view toString(LogLevel level);
LogLevel logLevelFromString(const std::string& name);

struct LogRecord {
    LogLevel level{};
    Millis time = 0;
    std::string binding;
    std::string message;
};

using LogSink = std::function<void(const LogRecord&)>;

// Writes one JSON object per record to stderr.
LogSink stderrLogSink();

} // namespace uibind
