#pragma once

#include "uibind/clock.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uibind {

// Opaque scene-node identifier. The engine never interprets it beyond
// equality, which is what keeps it toolkit-agnostic.
using NodeId = std::string;

enum class EventKind {
    PointerPress,
    PointerRelease,
    PointerMove,
    PointerClick,
    KeyPress,
    KeyRelease,
    TouchStart,
    TouchMove,
    TouchEnd,
    Scroll,
};

std::string_view toString(EventKind kind);
EventKind eventKindFromString(std::string_view name);

bool isPointerKind(EventKind kind);
bool isKeyKind(EventKind kind);
bool isTouchKind(EventKind kind);

struct Point {
    double x = 0;
    double y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

enum class Modifier : unsigned {
    Shift = 1u << 0,
    Ctrl = 1u << 1,
    Alt = 1u << 2,
    Meta = 1u << 3,
};

class Modifiers {
public:
    Modifiers() = default;
    Modifiers(std::initializer_list<Modifier> mods);

    void add(Modifier m) noexcept { bits_ |= static_cast<unsigned>(m); }
    bool has(Modifier m) const noexcept { return (bits_ & static_cast<unsigned>(m)) != 0; }
    bool empty() const noexcept { return bits_ == 0; }

    std::vector<std::string> names() const;
    static Modifier fromName(std::string_view name);

    friend bool operator==(const Modifiers&, const Modifiers&) = default;

private:
    unsigned bits_ = 0;
};

struct EventPayload {
    std::optional<Point> position;
    std::optional<int> button;
    std::optional<std::string> key;
    std::optional<int> touchId;
    Modifiers modifiers;
};

class Event {
public:
    EventKind kind = EventKind::PointerMove;
    Millis time = 0;
    NodeId target;
    std::optional<Point> position;
    std::optional<int> button;
    std::optional<std::string> key;
    std::optional<int> touchId;
    Modifiers modifiers;

    // Consumption is one-way: once set it never clears.
    bool consumed() const noexcept { return consumed_; }
    void consume() noexcept { consumed_ = true; }

    // Equality covers the payload, not the consumption flag.
    friend bool operator==(const Event& a, const Event& b);

private:
    bool consumed_ = false;
};

// Validates the payload against the requirements of `kind` and builds the
// event. Pointer events need position and button, key events a key, touch
// events a touch id and position, scroll a position; anything not required
// by the kind is rejected. Throws std::invalid_argument naming the field.
Event makeEvent(EventKind kind, Millis time, NodeId target, EventPayload payload = {});

} // namespace uibind
