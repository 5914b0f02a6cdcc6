#pragma once

#include "uibind/events.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uibind {

// Raised for malformed trace text. The message always carries the 1-based
// line number of the offending record.
struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a UTF-8 JSON-lines trace. One event object per line:
//   {"t":0, "kind":"pointer_press", "target":"node1", "x":5, "y":5, "button":0}
// Optional fields are "key", "touch" and "mods" (array of modifier names).
// Field order is irrelevant; unknown fields and non-monotone timestamps are
// rejected. Blank lines are skipped.
std::vector<Event> parseTrace(const std::string& text);

std::string serializeTrace(std::span<const Event> events);
std::string serializeEvent(const Event& event);

} // namespace uibind
