#pragma once

#include "uibind/binding.hpp"
#include "uibind/catalog.hpp"
#include "uibind/context.hpp"

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace uibind {

struct BinderError : std::logic_error {
    using std::logic_error::logic_error;
};

// Configuration routines a binder chain is made of.
enum class BinderRoutine {
    Using,
    ToProduce,
    On,
    When,
    With,
    First,
    Then,
    End,
    Cancel,
    EndOrCancel,
    Throttle,
    StrictStart,
    Continuous,
    Consume,
    Log,
    Named,
};

std::string_view toString(BinderRoutine routine);

// What a chain has collected so far, as far as staging rules care.
struct BinderState {
    bool hasInteraction = false;
    bool hasFactory = false;
    bool hasNodes = false;

    friend bool operator==(const BinderState&, const BinderState&) = default;
};

// Staging rules: usingInteraction is a one-shot, command and hook routines
// need the interaction first, everything else is always available.
bool routineLegal(const BinderState& state, BinderRoutine routine);
BinderState afterRoutine(BinderState state, BinderRoutine routine);
bool bindReady(const BinderState& state);

// Type-erased binder value. Immutable: every routine returns a new binder
// and leaves the receiver untouched. The typed wrappers below are thin
// sugar over this class.
class GenericBinder {
public:
    using ErasedFactory = std::function<std::shared_ptr<Command>(UserInteraction&)>;
    using ErasedPredicate = std::function<bool(UserInteraction&)>;
    using ErasedHook = std::function<void(UserInteraction&, Command&)>;
    using ErasedTerminalHook = std::function<void(UserInteraction&, Command*)>;

    GenericBinder() = default;

    GenericBinder usingInteraction(const std::string& name, CatalogParams params = {}) const;
    GenericBinder toProduce(ErasedFactory factory) const;
    GenericBinder on(NodeId node) const;
    GenericBinder on(ObservableNodeList& list) const;
    GenericBinder when(ErasedPredicate predicate) const;
    GenericBinder with(std::vector<std::string> keys) const;
    GenericBinder first(ErasedHook hook) const;
    GenericBinder then(ErasedHook hook) const;
    GenericBinder end(ErasedTerminalHook hook) const;
    GenericBinder cancel(ErasedTerminalHook hook) const;
    GenericBinder endOrCancel(ErasedTerminalHook hook) const;
    GenericBinder throttle(Millis window) const;
    GenericBinder strictStart() const;
    GenericBinder continuousExecution() const;
    GenericBinder consume() const;
    GenericBinder log(LogLevel level) const;
    GenericBinder named(std::string name) const;

    BinderState state() const;
    bool complete() const { return bindReady(state()); }
    // Missing mandatory parts among "using", "toProduce", "on".
    std::vector<std::string> missing() const;

    // One line describing the whole configuration; equal fingerprints mean
    // equal configurations. Used to check value semantics.
    std::string fingerprint() const;

    // Builds the interaction and the binding, registers it with `context`
    // and returns it. Throws BinderError when the chain is incomplete.
    Binding& bind(BindingContext& context) const;

private:
    void requireLegal(BinderRoutine routine) const;

    std::string interactionName_;
    CatalogParams params_;
    bool hasInteraction_ = false;
    ErasedFactory factory_;
    std::vector<NodeId> nodes_;
    ObservableNodeList* dynamicNodes_ = nullptr;
    std::vector<ErasedPredicate> whens_;
    std::set<std::string> keys_;
    std::vector<ErasedHook> firsts_;
    std::vector<ErasedHook> thens_;
    std::vector<ErasedTerminalHook> ends_;
    std::vector<ErasedTerminalHook> cancels_;
    std::vector<ErasedTerminalHook> endOrCancels_;
    Millis throttle_ = 0;
    bool strictStart_ = false;
    bool continuous_ = false;
    bool consume_ = false;
    std::set<LogLevel> logLevels_;
    std::string name_;
};

template <class D, class C>
class CommandBinder;

// Typed stage two: the interaction is known, its data type is D.
template <class D>
class InteractionBinder {
public:
    explicit InteractionBinder(GenericBinder generic) : generic_(std::move(generic)) {}

    // The factory may take the interaction data or nothing.
    template <class F>
    auto toProduce(F make) const {
        if constexpr (std::is_invocable_v<F, const D&>) {
            using Ptr = std::invoke_result_t<F, const D&>;
            using C = typename Ptr::element_type;
            GenericBinder next = generic_.toProduce([make](UserInteraction& ia) {
                return std::shared_ptr<Command>(make(ia.dataAs<D>()));
            });
            return CommandBinder<D, C>(std::move(next));
        } else {
            using Ptr = std::invoke_result_t<F>;
            using C = typename Ptr::element_type;
            GenericBinder next = generic_.toProduce(
                [make](UserInteraction&) { return std::shared_ptr<Command>(make()); });
            return CommandBinder<D, C>(std::move(next));
        }
    }

    InteractionBinder on(NodeId node) const { return InteractionBinder(generic_.on(std::move(node))); }
    InteractionBinder on(ObservableNodeList& list) const { return InteractionBinder(generic_.on(list)); }
    InteractionBinder when(std::function<bool(const D&)> predicate) const {
        return InteractionBinder(generic_.when(
            [predicate](UserInteraction& ia) { return predicate(ia.dataAs<D>()); }));
    }
    InteractionBinder with(std::vector<std::string> keys) const {
        return InteractionBinder(generic_.with(std::move(keys)));
    }
    InteractionBinder throttle(Millis window) const { return InteractionBinder(generic_.throttle(window)); }
    InteractionBinder strictStart() const { return InteractionBinder(generic_.strictStart()); }
    InteractionBinder continuousExecution() const {
        return InteractionBinder(generic_.continuousExecution());
    }
    InteractionBinder consume() const { return InteractionBinder(generic_.consume()); }
    InteractionBinder log(LogLevel level) const { return InteractionBinder(generic_.log(level)); }
    InteractionBinder named(std::string name) const {
        return InteractionBinder(generic_.named(std::move(name)));
    }

    const GenericBinder& generic() const noexcept { return generic_; }

private:
    GenericBinder generic_;
};

// Typed stage three: interaction data D feeding command type C.
template <class D, class C>
class CommandBinder {
public:
    explicit CommandBinder(GenericBinder generic) : generic_(std::move(generic)) {}

    CommandBinder on(NodeId node) const { return CommandBinder(generic_.on(std::move(node))); }
    CommandBinder on(ObservableNodeList& list) const { return CommandBinder(generic_.on(list)); }
    CommandBinder when(std::function<bool(const D&)> predicate) const {
        return CommandBinder(generic_.when(
            [predicate](UserInteraction& ia) { return predicate(ia.dataAs<D>()); }));
    }
    CommandBinder with(std::vector<std::string> keys) const {
        return CommandBinder(generic_.with(std::move(keys)));
    }
    CommandBinder first(std::function<void(const D&, C&)> hook) const {
        return CommandBinder(generic_.first([hook](UserInteraction& ia, Command& c) {
            hook(ia.dataAs<D>(), static_cast<C&>(c));
        }));
    }
    CommandBinder then(std::function<void(const D&, C&)> hook) const {
        return CommandBinder(generic_.then([hook](UserInteraction& ia, Command& c) {
            hook(ia.dataAs<D>(), static_cast<C&>(c));
        }));
    }
    CommandBinder end(std::function<void(const D&, C*)> hook) const {
        return CommandBinder(generic_.end([hook](UserInteraction& ia, Command* c) {
            hook(ia.dataAs<D>(), static_cast<C*>(c));
        }));
    }
    CommandBinder cancel(std::function<void(const D&, C*)> hook) const {
        return CommandBinder(generic_.cancel([hook](UserInteraction& ia, Command* c) {
            hook(ia.dataAs<D>(), static_cast<C*>(c));
        }));
    }
    CommandBinder endOrCancel(std::function<void(const D&, C*)> hook) const {
        return CommandBinder(generic_.endOrCancel([hook](UserInteraction& ia, Command* c) {
            hook(ia.dataAs<D>(), static_cast<C*>(c));
        }));
    }
    CommandBinder throttle(Millis window) const { return CommandBinder(generic_.throttle(window)); }
    CommandBinder strictStart() const { return CommandBinder(generic_.strictStart()); }
    CommandBinder continuousExecution() const {
        return CommandBinder(generic_.continuousExecution());
    }
    CommandBinder consume() const { return CommandBinder(generic_.consume()); }
    CommandBinder log(LogLevel level) const { return CommandBinder(generic_.log(level)); }
    CommandBinder named(std::string name) const {
        return CommandBinder(generic_.named(std::move(name)));
    }

    Binding& bind(BindingContext& context) const { return generic_.bind(context); }

    const GenericBinder& generic() const noexcept { return generic_; }

private:
    GenericBinder generic_;
};

// Typed stage one: nothing chosen yet.
class Binder {
public:
    Binder() = default;
    explicit Binder(GenericBinder generic) : generic_(std::move(generic)) {}

    template <class D>
    InteractionBinder<D> usingInteraction(const InteractionSpec<D>& spec) const {
        return InteractionBinder<D>(generic_.usingInteraction(spec.name, spec.params));
    }

    Binder on(NodeId node) const { return Binder(generic_.on(std::move(node))); }
    Binder on(ObservableNodeList& list) const { return Binder(generic_.on(list)); }
    Binder throttle(Millis window) const { return Binder(generic_.throttle(window)); }
    Binder strictStart() const { return Binder(generic_.strictStart()); }
    Binder continuousExecution() const { return Binder(generic_.continuousExecution()); }
    Binder consume() const { return Binder(generic_.consume()); }
    Binder log(LogLevel level) const { return Binder(generic_.log(level)); }
    Binder named(std::string name) const { return Binder(generic_.named(std::move(name))); }

    const GenericBinder& generic() const noexcept { return generic_; }

private:
    GenericBinder generic_;
};

inline Binder binder() { return Binder(); }

// Shortcuts for the common interactions.
inline InteractionBinder<FromToData> dndBinder() {
    return binder().usingInteraction(dragAndDrop());
}
inline InteractionBinder<FromToData> dragLockBinder() {
    return binder().usingInteraction(dragLock());
}
inline InteractionBinder<TapData> tapBinder(int n) {
    return binder().usingInteraction(tapInteraction(n));
}
inline InteractionBinder<MultiTouchData> multiTouchBinder(int n) {
    return binder().usingInteraction(multiTouch(n));
}
inline InteractionBinder<KeysData> keyBinder() {
    return binder().usingInteraction(keyPressed());
}
inline InteractionBinder<PointData> buttonBinder() {
    return binder().usingInteraction(clickInteraction());
}

} // namespace uibind
