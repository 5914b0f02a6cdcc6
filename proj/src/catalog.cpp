#include "uibind/catalog.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

namespace uibind {

namespace {

void fillPoint(PointData& d, const Event& e) {
    d.object = e.target;
    d.position = e.position;
    d.button = e.button;
    d.modifiers = e.modifiers;
}

// One-shot machine: a single event of `kind` runs the whole life cycle.
std::unique_ptr<UserInteraction> buildOneShot(const std::string& name, EventKind kind,
                                              VirtualClock& clock) {
    auto ia = std::make_unique<UserInteraction>(name, clock, PointData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    m.addState("done", StateKind::Terminal);
    Transition t;
    t.source = "init";
    t.target = "done";
    t.trigger = EventMatcher{kind, {}};
    t.onFire = [raw](const Event* e) { fillPoint(raw->dataRef<PointData>(), *e); };
    m.addTransition(std::move(t));
    ia->seal();
    return ia;
}

// Shared double-click machine: two clicks of the same button within
// `timeout` milliseconds, optionally aborted by any pointer move in between.
// Used standalone and as the building block of drag_lock.
void buildDoubleClickMachine(Fsm& m, Millis timeout, bool cancelOnMove,
                             std::function<void(const Event&)> onClick) {
    m.addState("init", StateKind::Initial);
    m.addState("clicked", StateKind::Standard);
    m.addState("dbl", StateKind::Terminal);
    m.addState("cancelled", StateKind::Cancelling);

    auto firstButton = std::make_shared<std::optional<int>>();

    Transition first;
    first.source = "init";
    first.target = "clicked";
    first.trigger = EventMatcher{EventKind::PointerClick, {}};
    first.onFire = [firstButton, onClick](const Event* e) {
        *firstButton = e->button;
        if (onClick) {
            onClick(*e);
        }
    };
    m.addTransition(std::move(first));

    Transition second;
    second.source = "clicked";
    second.target = "dbl";
    second.trigger = EventMatcher{EventKind::PointerClick, {}};
    second.guard = [firstButton](const Event& e) { return e.button == *firstButton; };
    second.onFire = [onClick](const Event* e) {
        if (onClick) {
            onClick(*e);
        }
    };
    m.addTransition(std::move(second));

    Transition expire;
    expire.source = "clicked";
    expire.target = "cancelled";
    expire.trigger = TimeoutSpec{timeout};
    m.addTransition(std::move(expire));

    if (cancelOnMove) {
        Transition moved;
        moved.source = "clicked";
        moved.target = "cancelled";
        moved.trigger = EventMatcher{EventKind::PointerMove, {}};
        m.addTransition(std::move(moved));
    }
}

std::unique_ptr<UserInteraction> buildDoubleClick(const CatalogParams& p, VirtualClock& clock) {
    const Millis timeout = p.timeoutMs >= 0 ? p.timeoutMs : 1000;
    auto ia = std::make_unique<UserInteraction>("double_click", clock, PointData{});
    auto* raw = ia.get();
    buildDoubleClickMachine(ia->fsm(), timeout, p.cancelOnMove, [raw](const Event& e) {
        fillPoint(raw->dataRef<PointData>(), e);
    });
    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildDragLock(const CatalogParams&, VirtualClock& clock) {
    auto ia = std::make_unique<UserInteraction>("drag_lock", clock, FromToData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    m.addState("locked", StateKind::Standard);
    m.addState("moved", StateKind::Standard);
    m.addState("unlocked", StateKind::Terminal);
    m.addState("cancelled", StateKind::Cancelling);

    // Lock, cancel and unlock are each signalled by a fast double click that
    // any pointer move aborts.
    for (const char* id : {"dbl_lock", "dbl_cancel", "dbl_unlock"}) {
        auto inner = std::make_unique<Fsm>();
        buildDoubleClickMachine(*inner, 500, true, {});
        m.addInnerMachine(id, std::move(inner));
    }

    auto setSrc = [raw](const Event* e) {
        auto& d = raw->dataRef<FromToData>();
        d.srcObject = e->target;
        d.srcPosition = e->position;
        d.button = e->button;
    };
    auto setTgt = [raw](const Event* e) {
        auto& d = raw->dataRef<FromToData>();
        d.tgtObject = e->target;
        d.tgtPosition = e->position;
    };
    auto escape = [](const Event& e) { return e.key && *e.key == "ESC"; };

    Transition lock;
    lock.source = "init";
    lock.target = "locked";
    lock.trigger = SubFsmRef{"dbl_lock"};
    lock.onFire = setSrc;
    m.addTransition(std::move(lock));

    Transition escLocked;
    escLocked.source = "locked";
    escLocked.target = "cancelled";
    escLocked.trigger = EventMatcher{EventKind::KeyPress, escape};
    m.addTransition(std::move(escLocked));

    Transition abort;
    abort.source = "locked";
    abort.target = "cancelled";
    abort.trigger = SubFsmRef{"dbl_cancel"};
    m.addTransition(std::move(abort));

    Transition firstMove;
    firstMove.source = "locked";
    firstMove.target = "moved";
    firstMove.trigger = EventMatcher{EventKind::PointerMove, {}};
    firstMove.onFire = setTgt;
    m.addTransition(std::move(firstMove));

    Transition escMoved;
    escMoved.source = "moved";
    escMoved.target = "cancelled";
    escMoved.trigger = EventMatcher{EventKind::KeyPress, escape};
    m.addTransition(std::move(escMoved));

    Transition unlock;
    unlock.source = "moved";
    unlock.target = "unlocked";
    unlock.trigger = SubFsmRef{"dbl_unlock"};
    unlock.onFire = setTgt;
    m.addTransition(std::move(unlock));

    Transition dragMove;
    dragMove.source = "moved";
    dragMove.target = "moved";
    dragMove.trigger = EventMatcher{EventKind::PointerMove, {}};
    dragMove.onFire = setTgt;
    m.addTransition(std::move(dragMove));

    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildDnd(const CatalogParams&, VirtualClock& clock) {
    auto ia = std::make_unique<UserInteraction>("dnd", clock, FromToData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    m.addState("pressed", StateKind::Standard);
    m.addState("dragged", StateKind::Standard);
    m.addState("released", StateKind::Terminal);
    m.addState("cancelled", StateKind::Cancelling);

    auto sameButton = [raw](const Event& e) {
        return e.button == raw->dataAs<FromToData>().button;
    };
    auto setSrc = [raw](const Event* e) {
        auto& d = raw->dataRef<FromToData>();
        d.srcObject = e->target;
        d.srcPosition = e->position;
        d.button = e->button;
    };
    auto setTgt = [raw](const Event* e) {
        auto& d = raw->dataRef<FromToData>();
        d.tgtObject = e->target;
        d.tgtPosition = e->position;
    };

    Transition press;
    press.source = "init";
    press.target = "pressed";
    press.trigger = EventMatcher{EventKind::PointerPress, {}};
    press.onFire = setSrc;
    m.addTransition(std::move(press));

    Transition firstMove;
    firstMove.source = "pressed";
    firstMove.target = "dragged";
    firstMove.trigger = EventMatcher{EventKind::PointerMove, {}};
    firstMove.guard = sameButton;
    firstMove.onFire = setTgt;
    m.addTransition(std::move(firstMove));

    // Press and release with no drag in between is not a drag-and-drop.
    Transition abort;
    abort.source = "pressed";
    abort.target = "cancelled";
    abort.trigger = EventMatcher{EventKind::PointerRelease, {}};
    abort.guard = sameButton;
    m.addTransition(std::move(abort));

    Transition dragMove;
    dragMove.source = "dragged";
    dragMove.target = "dragged";
    dragMove.trigger = EventMatcher{EventKind::PointerMove, {}};
    dragMove.guard = sameButton;
    dragMove.onFire = setTgt;
    m.addTransition(std::move(dragMove));

    Transition drop;
    drop.source = "dragged";
    drop.target = "released";
    drop.trigger = EventMatcher{EventKind::PointerRelease, {}};
    drop.guard = sameButton;
    drop.onFire = setTgt;
    m.addTransition(std::move(drop));

    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildKeyPressed(const CatalogParams&, VirtualClock& clock) {
    auto ia = std::make_unique<UserInteraction>("key_pressed", clock, KeysData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    m.addState("pressed", StateKind::Terminal);
    Transition t;
    t.source = "init";
    t.target = "pressed";
    t.trigger = EventMatcher{EventKind::KeyPress, {}};
    t.onFire = [raw](const Event* e) {
        auto& d = raw->dataRef<KeysData>();
        d.keys.push_back(*e->key);
        d.target = e->target;
    };
    m.addTransition(std::move(t));
    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildKeysTyped(const CatalogParams& p, VirtualClock& clock) {
    const Millis timeout = p.timeoutMs >= 0 ? p.timeoutMs : 1000;
    auto ia = std::make_unique<UserInteraction>("keys_typed", clock, KeysData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    m.addState("typing", StateKind::Standard);
    m.addState("done", StateKind::Terminal);

    auto appendKey = [raw](const Event* e) {
        auto& d = raw->dataRef<KeysData>();
        d.keys.push_back(*e->key);
        d.target = e->target;
    };

    Transition firstKey;
    firstKey.source = "init";
    firstKey.target = "typing";
    firstKey.trigger = EventMatcher{EventKind::KeyPress, {}};
    firstKey.onFire = appendKey;
    m.addTransition(std::move(firstKey));

    // Each keystroke restarts the inactivity window.
    Transition nextKey;
    nextKey.source = "typing";
    nextKey.target = "typing";
    nextKey.trigger = EventMatcher{EventKind::KeyPress, {}};
    nextKey.onFire = appendKey;
    m.addTransition(std::move(nextKey));

    Transition quiet;
    quiet.source = "typing";
    quiet.target = "done";
    quiet.trigger = TimeoutSpec{timeout};
    m.addTransition(std::move(quiet));

    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildMultiTouch(const CatalogParams& p, VirtualClock& clock) {
    if (p.n < 1) {
        throw std::invalid_argument("multi_touch requires n >= 1");
    }
    auto ia = std::make_unique<UserInteraction>("multi_touch", clock, MultiTouchData{});
    auto* raw = ia.get();

    Fsm::ConcurrencySpec spec;
    spec.required = p.n;
    spec.make = [raw](int key) {
        auto copy = std::make_unique<Fsm>();
        copy->addState("init", StateKind::Initial);
        copy->addState("touched", StateKind::Standard);
        copy->addState("done", StateKind::Terminal);

        auto slot = [raw, key]() -> TouchSlot& {
            auto& touches = raw->dataRef<MultiTouchData>().touches;
            for (auto& s : touches) {
                if (s.touchId == key) {
                    return s;
                }
            }
            touches.push_back(TouchSlot{key, {}});
            return touches.back();
        };

        Transition start;
        start.source = "init";
        start.target = "touched";
        start.trigger = EventMatcher{EventKind::TouchStart, {}};
        start.onFire = [slot](const Event* e) {
            TouchSlot& s = slot();
            s.path.srcObject = e->target;
            s.path.srcPosition = e->position;
        };
        copy->addTransition(std::move(start));

        auto track = [slot](const Event* e) {
            TouchSlot& s = slot();
            s.path.tgtObject = e->target;
            s.path.tgtPosition = e->position;
        };

        Transition move;
        move.source = "touched";
        move.target = "touched";
        move.trigger = EventMatcher{EventKind::TouchMove, {}};
        move.onFire = track;
        copy->addTransition(std::move(move));

        Transition end;
        end.source = "touched";
        end.target = "done";
        end.trigger = EventMatcher{EventKind::TouchEnd, {}};
        end.onFire = track;
        copy->addTransition(std::move(end));
        return copy;
    };
    spec.onDiscard = [raw](int key) {
        auto& touches = raw->dataRef<MultiTouchData>().touches;
        std::erase_if(touches, [key](const TouchSlot& s) { return s.touchId == key; });
    };
    ia->fsm().setConcurrency(std::move(spec));
    ia->seal();
    return ia;
}

std::unique_ptr<UserInteraction> buildTap(const CatalogParams& p, VirtualClock& clock) {
    if (p.n < 1) {
        throw std::invalid_argument("tap requires n >= 1");
    }
    auto ia = std::make_unique<UserInteraction>("tap", clock, TapData{});
    auto* raw = ia.get();
    Fsm& m = ia->fsm();
    m.addState("init", StateKind::Initial);
    for (int i = 1; i < p.n; ++i) {
        m.addState("s" + std::to_string(i), StateKind::Standard);
    }
    m.addState("done", StateKind::Terminal);

    auto appendTap = [raw](const Event* e) {
        PointData d;
        d.object = e->target;
        d.position = e->position;
        d.modifiers = e->modifiers;
        raw->dataRef<TapData>().taps.push_back(std::move(d));
    };

    for (int i = 0; i < p.n; ++i) {
        Transition t;
        t.source = i == 0 ? "init" : "s" + std::to_string(i);
        t.target = i == p.n - 1 ? "done" : "s" + std::to_string(i + 1);
        t.trigger = EventMatcher{EventKind::TouchStart, {}};
        t.onFire = appendTap;
        m.addTransition(std::move(t));
    }

    ia->seal();
    return ia;
}

std::map<std::string, InteractionFactory> makeBuiltins() {
    std::map<std::string, InteractionFactory> r;
    r["click"] = [](const CatalogParams&, VirtualClock& clock) {
        return buildOneShot("click", EventKind::PointerClick, clock);
    };
    r["press"] = [](const CatalogParams&, VirtualClock& clock) {
        return buildOneShot("press", EventKind::PointerPress, clock);
    };
    r["scroll"] = [](const CatalogParams&, VirtualClock& clock) {
        return buildOneShot("scroll", EventKind::Scroll, clock);
    };
    r["double_click"] = buildDoubleClick;
    r["drag_lock"] = buildDragLock;
    r["dnd"] = buildDnd;
    r["key_pressed"] = buildKeyPressed;
    r["keys_typed"] = buildKeysTyped;
    r["multi_touch"] = buildMultiTouch;
    r["tap"] = buildTap;
    return r;
}

std::map<std::string, InteractionFactory>& registry() {
    static std::map<std::string, InteractionFactory> r = makeBuiltins();
    return r;
}

} // namespace

InteractionSpec<PointData> clickInteraction() { return {"click", {}}; }

InteractionSpec<PointData> doubleClick(Millis timeoutMs, bool cancelOnMove) {
    CatalogParams p;
    p.timeoutMs = timeoutMs;
    p.cancelOnMove = cancelOnMove;
    return {"double_click", p};
}

InteractionSpec<FromToData> dragLock() { return {"drag_lock", {}}; }

InteractionSpec<FromToData> dragAndDrop() { return {"dnd", {}}; }

InteractionSpec<PointData> pressInteraction() { return {"press", {}}; }

InteractionSpec<PointData> scrollInteraction() { return {"scroll", {}}; }

InteractionSpec<KeysData> keyPressed() { return {"key_pressed", {}}; }

InteractionSpec<KeysData> keysTyped(Millis timeoutMs) {
    CatalogParams p;
    p.timeoutMs = timeoutMs;
    return {"keys_typed", p};
}

InteractionSpec<MultiTouchData> multiTouch(int n) {
    CatalogParams p;
    p.n = n;
    return {"multi_touch", p};
}

InteractionSpec<TapData> tapInteraction(int n) {
    CatalogParams p;
    p.n = n;
    return {"tap", p};
}

std::unique_ptr<UserInteraction> constructInteraction(const std::string& name,
                                                      const CatalogParams& params,
                                                      VirtualClock& clock) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown interaction: " + name);
    }
    return it->second(params, clock);
}

std::unique_ptr<UserInteraction> constructInteraction(const std::string& name,
                                                      VirtualClock& clock) {
    return constructInteraction(name, CatalogParams{}, clock);
}

void registerInteraction(const std::string& name, InteractionFactory factory) {
    registry()[name] = std::move(factory);
}

std::vector<std::string> catalogNames() {
    std::vector<std::string> names;
    for (const auto& [name, factory] : registry()) {
        names.push_back(name);
    }
    return names;
}

} // namespace uibind
