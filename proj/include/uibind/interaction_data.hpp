#pragma once

#include "uibind/events.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace uibind {

// Gesture running from a source to a target position (drag-and-drop and the
// drag-lock family). Targets only appear once a source exists.
struct FromToData {
    std::optional<NodeId> srcObject;
    std::optional<NodeId> tgtObject;
    std::optional<Point> srcPosition;
    std::optional<Point> tgtPosition;
    std::optional<int> button;

    void flush() { *this = FromToData{}; }
    friend bool operator==(const FromToData&, const FromToData&) = default;
};

// Single-position interactions: clicks, presses, scrolls.
struct PointData {
    std::optional<NodeId> object;
    std::optional<Point> position;
    std::optional<int> button;
    Modifiers modifiers;

    void flush() { *this = PointData{}; }
    friend bool operator==(const PointData&, const PointData&) = default;
};

struct KeysData {
    std::vector<std::string> keys;
    std::optional<NodeId> target;

    void flush() { *this = KeysData{}; }
    friend bool operator==(const KeysData&, const KeysData&) = default;
};

struct TouchSlot {
    int touchId = 0;
    FromToData path;

    friend bool operator==(const TouchSlot&, const TouchSlot&) = default;
};

struct MultiTouchData {
    std::vector<TouchSlot> touches;

    void flush() { touches.clear(); }
    friend bool operator==(const MultiTouchData&, const MultiTouchData&) = default;
};

struct TapData {
    std::vector<PointData> taps;

    void flush() { taps.clear(); }
    friend bool operator==(const TapData&, const TapData&) = default;
};

using DataSnapshot = std::variant<FromToData, PointData, KeysData, MultiTouchData, TapData>;

inline void flushData(DataSnapshot& data) {
    std::visit([](auto& d) { d.flush(); }, data);
}

} // namespace uibind
