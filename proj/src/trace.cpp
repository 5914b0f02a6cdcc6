#include "uibind/trace.hpp"

#include "json.hpp"

#include <sstream>

namespace uibind {

namespace {

using nlohmann::json;

const char* const kKnownFields[] = {"t", "kind", "target", "x", "y", "button", "key", "touch", "mods"};

bool knownField(const std::string& name) {
    for (const char* field : kKnownFields) {
        if (name == field) {
            return true;
        }
    }
    return false;
}

[[noreturn]] void lineError(std::size_t line, const std::string& detail) {
    throw TraceError("trace line " + std::to_string(line) + ": " + detail);
}

Event parseLine(const std::string& text, std::size_t line) {
    json record;
    try {
        record = json::parse(text);
    } catch (const json::exception& ex) {
        lineError(line, std::string("invalid JSON (") + ex.what() + ")");
    }
    if (!record.is_object()) {
        lineError(line, "record is not a JSON object");
    }
    for (const auto& item : record.items()) {
        if (!knownField(item.key())) {
            lineError(line, "unknown field \"" + item.key() + "\"");
        }
    }
    if (!record.contains("t") || !record["t"].is_number_integer()) {
        lineError(line, "missing or non-integer \"t\"");
    }
    if (!record.contains("kind") || !record["kind"].is_string()) {
        lineError(line, "missing or non-string \"kind\"");
    }
    if (!record.contains("target") || !record["target"].is_string()) {
        lineError(line, "missing or non-string \"target\"");
    }
    if (record.contains("x") != record.contains("y")) {
        lineError(line, "\"x\" and \"y\" must appear together");
    }

    EventPayload payload;
    if (record.contains("x")) {
        if (!record["x"].is_number() || !record["y"].is_number()) {
            lineError(line, "non-numeric position");
        }
        payload.position = Point{record["x"].get<double>(), record["y"].get<double>()};
    }
    if (record.contains("button")) {
        if (!record["button"].is_number_integer()) {
            lineError(line, "non-integer \"button\"");
        }
        payload.button = record["button"].get<int>();
    }
    if (record.contains("key")) {
        if (!record["key"].is_string()) {
            lineError(line, "non-string \"key\"");
        }
        payload.key = record["key"].get<std::string>();
    }
    if (record.contains("touch")) {
        if (!record["touch"].is_number_integer()) {
            lineError(line, "non-integer \"touch\"");
        }
        payload.touchId = record["touch"].get<int>();
    }
    if (record.contains("mods")) {
        if (!record["mods"].is_array()) {
            lineError(line, "\"mods\" must be an array");
        }
        for (const auto& mod : record["mods"]) {
            if (!mod.is_string()) {
                lineError(line, "modifier names must be strings");
            }
            try {
                payload.modifiers.add(Modifiers::fromName(mod.get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                lineError(line, ex.what());
            }
        }
    }

    try {
        return makeEvent(eventKindFromString(record["kind"].get<std::string>()),
                         record["t"].get<Millis>(), record["target"].get<std::string>(),
                         std::move(payload));
    } catch (const std::invalid_argument& ex) {
        lineError(line, ex.what());
    }
}

} // namespace

std::vector<Event> parseTrace(const std::string& text) {
    std::vector<Event> events;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(stream, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        Event event = parseLine(line, lineNo);
        if (!events.empty() && event.time < events.back().time) {
            lineError(lineNo, "timestamps must be monotone non-decreasing (" +
                                  std::to_string(event.time) + " after " +
                                  std::to_string(events.back().time) + ")");
        }
        events.push_back(std::move(event));
    }
    return events;
}

std::string serializeEvent(const Event& event) {
    json record;
    record["t"] = event.time;
    record["kind"] = std::string(toString(event.kind));
    record["target"] = event.target;
    if (event.position) {
        record["x"] = event.position->x;
        record["y"] = event.position->y;
    }
    if (event.button) {
        record["button"] = *event.button;
    }
    if (event.key) {
        record["key"] = *event.key;
    }
    if (event.touchId) {
        record["touch"] = *event.touchId;
    }
    if (!event.modifiers.empty()) {
        record["mods"] = event.modifiers.names();
    }
    return record.dump();
}

std::string serializeTrace(std::span<const Event> events) {
    std::string out;
    for (const Event& event : events) {
        out += serializeEvent(event);
        out += '\n';
    }
    return out;
}

} // namespace uibind
