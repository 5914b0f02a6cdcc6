#include "uibind/events.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace uibind {

namespace {

struct KindName {
    EventKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 10> kKindNames{{
    {EventKind::PointerPress, "pointer_press"},
    {EventKind::PointerRelease, "pointer_release"},
    {EventKind::PointerMove, "pointer_move"},
    {EventKind::PointerClick, "pointer_click"},
    {EventKind::KeyPress, "key_press"},
    {EventKind::KeyRelease, "key_release"},
    {EventKind::TouchStart, "touch_start"},
    {EventKind::TouchMove, "touch_move"},
    {EventKind::TouchEnd, "touch_end"},
    {EventKind::Scroll, "scroll"},
}};

[[noreturn]] void badField(EventKind kind, const char* what, const char* field) {
    throw std::invalid_argument(std::string(toString(kind)) + " event " + what + " " + field);
}

} // namespace

std::string_view toString(EventKind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) {
            return entry.name;
        }
    }
    return "unknown";
}

EventKind eventKindFromString(std::string_view name) {
    for (const auto& entry : kKindNames) {
        if (entry.name == name) {
            return entry.kind;
        }
    }
    throw std::invalid_argument("unknown event kind: " + std::string(name));
}

bool isPointerKind(EventKind kind) {
    return kind == EventKind::PointerPress || kind == EventKind::PointerRelease ||
           kind == EventKind::PointerMove || kind == EventKind::PointerClick;
}

bool isKeyKind(EventKind kind) {
    return kind == EventKind::KeyPress || kind == EventKind::KeyRelease;
}

bool isTouchKind(EventKind kind) {
    return kind == EventKind::TouchStart || kind == EventKind::TouchMove ||
           kind == EventKind::TouchEnd;
}

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Modifiers::Modifiers(std::initializer_list<Modifier> mods) {
    for (Modifier m : mods) {
        add(m);
    }
}

std::vector<std::string> Modifiers::names() const {
    std::vector<std::string> out;
    if (has(Modifier::Shift)) out.emplace_back("shift");
    if (has(Modifier::Ctrl)) out.emplace_back("ctrl");
    if (has(Modifier::Alt)) out.emplace_back("alt");
    if (has(Modifier::Meta)) out.emplace_back("meta");
    return out;
}

Modifier Modifiers::fromName(std::string_view name) {
    if (name == "shift") return Modifier::Shift;
    if (name == "ctrl") return Modifier::Ctrl;
    if (name == "alt") return Modifier::Alt;
    if (name == "meta") return Modifier::Meta;
    throw std::invalid_argument("unknown modifier: " + std::string(name));
}

bool operator==(const Event& a, const Event& b) {
    return a.kind == b.kind && a.time == b.time && a.target == b.target &&
           a.position == b.position && a.button == b.button && a.key == b.key &&
           a.touchId == b.touchId && a.modifiers == b.modifiers;
}

Event makeEvent(EventKind kind, Millis time, NodeId target, EventPayload payload) {
    if (time < 0) {
        throw std::invalid_argument("event time must be non-negative");
    }
    if (target.empty()) {
        throw std::invalid_argument("event target must be a non-empty node id");
    }

    const bool needPosition = isPointerKind(kind) || isTouchKind(kind) || kind == EventKind::Scroll;
    const bool needButton = isPointerKind(kind);
    const bool needKey = isKeyKind(kind);
    const bool needTouchId = isTouchKind(kind);

    if (needPosition && !payload.position) badField(kind, "missing", "position");
    if (!needPosition && payload.position) badField(kind, "has unexpected", "position");
    if (needButton && !payload.button) badField(kind, "missing", "button");
    if (!needButton && payload.button) badField(kind, "has unexpected", "button");
    if (needKey && !payload.key) badField(kind, "missing", "key");
    if (!needKey && payload.key) badField(kind, "has unexpected", "key");
    if (needTouchId && !payload.touchId) badField(kind, "missing", "touch");
    if (!needTouchId && payload.touchId) badField(kind, "has unexpected", "touch");

    Event event;
    event.kind = kind;
    event.time = time;
    event.target = std::move(target);
    event.position = payload.position;
    event.button = payload.button;
    event.key = std::move(payload.key);
    event.touchId = payload.touchId;
    event.modifiers = payload.modifiers;
    return event;
}

} // namespace uibind
