#pragma once

#include "uibind/events.hpp"

#include <string>
#include <vector>

namespace uibind {

// Fluent builder for deterministic event traces. Records abstract steps;
// compile() assigns timestamps (one `step` apart, default 100 ms) and
// validates the sequence, e.g. a release without a matching press throws
// std::logic_error.
class Robot {
public:
    // Subsequent events target this node.
    Robot& on(NodeId node);
    // Pointer motion to an absolute position.
    Robot& moveTo(Point point);
    Robot& moveTo(NodeId node, Point point);
    Robot& press(int button = 0);
    Robot& release(int button = 0);
    // `count` press/release pairs at the current position.
    Robot& click(int count = 1, int button = 0);
    Robot& key(std::string key);
    Robot& touchDown(int touchId, Point point);
    Robot& touchMove(int touchId, Point point);
    Robot& touchUp(int touchId, Point point);
    Robot& scroll(Point point);
    // Inserts a gap in the timeline.
    Robot& wait(Millis gap);
    // Modifier state applied to all later events.
    Robot& modifiers(Modifiers mods);

    std::vector<Event> compile(Millis step = 100, Millis start = 0) const;

private:
    enum class OpKind {
        Node,
        Move,
        Press,
        Release,
        Key,
        TouchDown,
        TouchMove,
        TouchUp,
        Scroll,
        Wait,
        Mods,
    };

    struct Op {
        OpKind kind{};
        NodeId node;
        Point point;
        int button = 0;
        std::string key;
        int touchId = 0;
        Millis gap = 0;
        Modifiers mods;
    };

    std::vector<Op> ops_;
};

} // namespace uibind
