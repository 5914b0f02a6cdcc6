#include "uibind/robot.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace uibind {

Robot& Robot::on(NodeId node) {
    Op op;
    op.kind = OpKind::Node;
    op.node = std::move(node);
    ops_.push_back(std::move(op));
    return *this;
}

Robot& Robot::moveTo(Point point) {
    Op op;
    op.kind = OpKind::Move;
    op.point = point;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::moveTo(NodeId node, Point point) {
    on(std::move(node));
    return moveTo(point);
}

Robot& Robot::press(int button) {
    Op op;
    op.kind = OpKind::Press;
    op.button = button;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::release(int button) {
    Op op;
    op.kind = OpKind::Release;
    op.button = button;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::click(int count, int button) {
    for (int i = 0; i < count; ++i) {
        press(button);
        release(button);
    }
    return *this;
}

Robot& Robot::key(std::string key) {
    Op op;
    op.kind = OpKind::Key;
    op.key = std::move(key);
    ops_.push_back(std::move(op));
    return *this;
}

Robot& Robot::touchDown(int touchId, Point point) {
    Op op;
    op.kind = OpKind::TouchDown;
    op.touchId = touchId;
    op.point = point;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::touchMove(int touchId, Point point) {
    Op op;
    op.kind = OpKind::TouchMove;
    op.touchId = touchId;
    op.point = point;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::touchUp(int touchId, Point point) {
    Op op;
    op.kind = OpKind::TouchUp;
    op.touchId = touchId;
    op.point = point;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::scroll(Point point) {
    Op op;
    op.kind = OpKind::Scroll;
    op.point = point;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::wait(Millis gap) {
    Op op;
    op.kind = OpKind::Wait;
    op.gap = gap;
    ops_.push_back(op);
    return *this;
}

Robot& Robot::modifiers(Modifiers mods) {
    Op op;
    op.kind = OpKind::Mods;
    op.mods = mods;
    ops_.push_back(op);
    return *this;
}

std::vector<Event> Robot::compile(Millis step, Millis start) const {
    if (step <= 0) {
        throw std::logic_error("robot step must be positive");
    }
    std::vector<Event> events;
    NodeId target = "scene";
    Point position{0, 0};
    Modifiers mods;
    std::set<int> pressed;
    std::set<int> touches;
    Millis t = start;

    auto emit = [&](EventKind kind, EventPayload payload) {
        events.push_back(makeEvent(kind, t, target, std::move(payload)));
        t += step;
    };

    for (const Op& op : ops_) {
        switch (op.kind) {
        case OpKind::Node:
            target = op.node;
            break;
        case OpKind::Move: {
            position = op.point;
            EventPayload p;
            p.position = position;
            // Moves carry the held button, or 0 with nothing pressed.
            p.button = pressed.empty() ? 0 : *pressed.begin();
            p.modifiers = mods;
            emit(EventKind::PointerMove, std::move(p));
            break;
        }
        case OpKind::Press: {
            if (!pressed.insert(op.button).second) {
                throw std::logic_error("press while button already down: " +
                                       std::to_string(op.button));
            }
            EventPayload p;
            p.position = position;
            p.button = op.button;
            p.modifiers = mods;
            emit(EventKind::PointerPress, std::move(p));
            break;
        }
        case OpKind::Release: {
            if (pressed.erase(op.button) == 0) {
                throw std::logic_error("release without press: button " +
                                       std::to_string(op.button));
            }
            EventPayload p;
            p.position = position;
            p.button = op.button;
            p.modifiers = mods;
            emit(EventKind::PointerRelease, std::move(p));
            break;
        }
        case OpKind::Key: {
            EventPayload p;
            p.key = op.key;
            p.modifiers = mods;
            emit(EventKind::KeyPress, std::move(p));
            break;
        }
        case OpKind::TouchDown: {
            if (!touches.insert(op.touchId).second) {
                throw std::logic_error("touch already down: " + std::to_string(op.touchId));
            }
            EventPayload p;
            p.position = op.point;
            p.touchId = op.touchId;
            p.modifiers = mods;
            emit(EventKind::TouchStart, std::move(p));
            break;
        }
        case OpKind::TouchMove: {
            if (touches.count(op.touchId) == 0) {
                throw std::logic_error("touch move without touch down: " +
                                       std::to_string(op.touchId));
            }
            EventPayload p;
            p.position = op.point;
            p.touchId = op.touchId;
            p.modifiers = mods;
            emit(EventKind::TouchMove, std::move(p));
            break;
        }
        case OpKind::TouchUp: {
            if (touches.erase(op.touchId) == 0) {
                throw std::logic_error("touch up without touch down: " +
                                       std::to_string(op.touchId));
            }
            EventPayload p;
            p.position = op.point;
            p.touchId = op.touchId;
            p.modifiers = mods;
            emit(EventKind::TouchEnd, std::move(p));
            break;
        }
        case OpKind::Scroll: {
            position = op.point;
            EventPayload p;
            p.position = position;
            p.modifiers = mods;
            emit(EventKind::Scroll, std::move(p));
            break;
        }
        case OpKind::Wait:
            t += op.gap;
            break;
        case OpKind::Mods:
            mods = op.mods;
            break;
        }
    }
    return events;
}

} // namespace uibind
