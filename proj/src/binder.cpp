#include "uibind/binder.hpp"

#include <sstream>
#include <utility>

namespace uibind {

std::string_view toString(BinderRoutine routine) {
    switch (routine) {
    case BinderRoutine::Using: return "usingInteraction";
    case BinderRoutine::ToProduce: return "toProduce";
    case BinderRoutine::On: return "on";
    case BinderRoutine::When: return "when";
    case BinderRoutine::With: return "with";
    case BinderRoutine::First: return "first";
    case BinderRoutine::Then: return "then";
    case BinderRoutine::End: return "end";
    case BinderRoutine::Cancel: return "cancel";
    case BinderRoutine::EndOrCancel: return "endOrCancel";
    case BinderRoutine::Throttle: return "throttle";
    case BinderRoutine::StrictStart: return "strictStart";
    case BinderRoutine::Continuous: return "continuousExecution";
    case BinderRoutine::Consume: return "consume";
    case BinderRoutine::Log: return "log";
    case BinderRoutine::Named: return "named";
    }
    return "unknown";
}

bool routineLegal(const BinderState& state, BinderRoutine routine) {
    switch (routine) {
    case BinderRoutine::Using:
        return !state.hasInteraction;
    case BinderRoutine::ToProduce:
    case BinderRoutine::When:
    case BinderRoutine::With:
    case BinderRoutine::First:
    case BinderRoutine::Then:
    case BinderRoutine::End:
    case BinderRoutine::Cancel:
    case BinderRoutine::EndOrCancel:
        return state.hasInteraction;
    case BinderRoutine::On:
    case BinderRoutine::Throttle:
    case BinderRoutine::StrictStart:
    case BinderRoutine::Continuous:
    case BinderRoutine::Consume:
    case BinderRoutine::Log:
    case BinderRoutine::Named:
        return true;
    }
    return false;
}

BinderState afterRoutine(BinderState state, BinderRoutine routine) {
    switch (routine) {
    case BinderRoutine::Using: state.hasInteraction = true; break;
    case BinderRoutine::ToProduce: state.hasFactory = true; break;
    case BinderRoutine::On: state.hasNodes = true; break;
    default: break;
    }
    return state;
}

bool bindReady(const BinderState& state) {
    return state.hasInteraction && state.hasFactory && state.hasNodes;
}

void GenericBinder::requireLegal(BinderRoutine routine) const {
    if (routineLegal(state(), routine)) {
        return;
    }
    if (routine == BinderRoutine::Using) {
        throw BinderError("usingInteraction already called on this binder");
    }
    throw BinderError(std::string(toString(routine)) + " requires usingInteraction first");
}

BinderState GenericBinder::state() const {
    BinderState s;
    s.hasInteraction = hasInteraction_;
    s.hasFactory = static_cast<bool>(factory_);
    s.hasNodes = !nodes_.empty() || dynamicNodes_ != nullptr;
    return s;
}

GenericBinder GenericBinder::usingInteraction(const std::string& name, CatalogParams params) const {
    requireLegal(BinderRoutine::Using);
    GenericBinder next = *this;
    next.interactionName_ = name;
    next.params_ = params;
    next.hasInteraction_ = true;
    return next;
}

GenericBinder GenericBinder::toProduce(ErasedFactory factory) const {
    requireLegal(BinderRoutine::ToProduce);
    GenericBinder next = *this;
    next.factory_ = std::move(factory);
    return next;
}

GenericBinder GenericBinder::on(NodeId node) const {
    requireLegal(BinderRoutine::On);
    GenericBinder next = *this;
    next.nodes_.push_back(std::move(node));
    return next;
}

GenericBinder GenericBinder::on(ObservableNodeList& list) const {
    requireLegal(BinderRoutine::On);
    GenericBinder next = *this;
    next.dynamicNodes_ = &list;
    return next;
}

GenericBinder GenericBinder::when(ErasedPredicate predicate) const {
    requireLegal(BinderRoutine::When);
    GenericBinder next = *this;
    next.whens_.push_back(std::move(predicate));
    return next;
}

GenericBinder GenericBinder::with(std::vector<std::string> keys) const {
    requireLegal(BinderRoutine::With);
    GenericBinder next = *this;
    next.keys_.insert(keys.begin(), keys.end());
    return next;
}

GenericBinder GenericBinder::first(ErasedHook hook) const {
    requireLegal(BinderRoutine::First);
    GenericBinder next = *this;
    next.firsts_.push_back(std::move(hook));
    return next;
}

GenericBinder GenericBinder::then(ErasedHook hook) const {
    requireLegal(BinderRoutine::Then);
    GenericBinder next = *this;
    next.thens_.push_back(std::move(hook));
    return next;
}

GenericBinder GenericBinder::end(ErasedTerminalHook hook) const {
    requireLegal(BinderRoutine::End);
    GenericBinder next = *this;
    next.ends_.push_back(std::move(hook));
    return next;
}

GenericBinder GenericBinder::cancel(ErasedTerminalHook hook) const {
    requireLegal(BinderRoutine::Cancel);
    GenericBinder next = *this;
    next.cancels_.push_back(std::move(hook));
    return next;
}

GenericBinder GenericBinder::endOrCancel(ErasedTerminalHook hook) const {
    requireLegal(BinderRoutine::EndOrCancel);
    GenericBinder next = *this;
    next.endOrCancels_.push_back(std::move(hook));
    return next;
}

GenericBinder GenericBinder::throttle(Millis window) const {
    requireLegal(BinderRoutine::Throttle);
    GenericBinder next = *this;
    next.throttle_ = window;
    return next;
}

GenericBinder GenericBinder::strictStart() const {
    requireLegal(BinderRoutine::StrictStart);
    GenericBinder next = *this;
    next.strictStart_ = true;
    return next;
}

GenericBinder GenericBinder::continuousExecution() const {
    requireLegal(BinderRoutine::Continuous);
    GenericBinder next = *this;
    next.continuous_ = true;
    return next;
}

GenericBinder GenericBinder::consume() const {
    requireLegal(BinderRoutine::Consume);
    GenericBinder next = *this;
    next.consume_ = true;
    return next;
}

GenericBinder GenericBinder::log(LogLevel level) const {
    requireLegal(BinderRoutine::Log);
    GenericBinder next = *this;
    next.logLevels_.insert(level);
    return next;
}

GenericBinder GenericBinder::named(std::string name) const {
    requireLegal(BinderRoutine::Named);
    GenericBinder next = *this;
    next.name_ = std::move(name);
    return next;
}

std::vector<std::string> GenericBinder::missing() const {
    std::vector<std::string> parts;
    if (!hasInteraction_) {
        parts.push_back("using");
    }
    if (!factory_) {
        parts.push_back("toProduce");
    }
    if (nodes_.empty() && dynamicNodes_ == nullptr) {
        parts.push_back("on");
    }
    return parts;
}

std::string GenericBinder::fingerprint() const {
    std::ostringstream out;
    out << "using=" << (hasInteraction_ ? interactionName_ : "-") << "(n=" << params_.n
        << ",timeout=" << params_.timeoutMs << ",cancelOnMove=" << params_.cancelOnMove << ")"
        << ";produce=" << (factory_ ? 1 : 0) << ";on=[";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i > 0) {
            out << "|";
        }
        out << nodes_[i];
    }
    out << "];dyn=" << static_cast<const void*>(dynamicNodes_) << ";when=" << whens_.size()
        << ";keys=[";
    bool sep = false;
    for (const auto& key : keys_) {
        if (sep) {
            out << "|";
        }
        out << key;
        sep = true;
    }
    out << "];first=" << firsts_.size() << ";then=" << thens_.size() << ";end=" << ends_.size()
        << ";cancel=" << cancels_.size() << ";endOrCancel=" << endOrCancels_.size()
        << ";throttle=" << throttle_ << ";strict=" << strictStart_
        << ";continuous=" << continuous_ << ";consume=" << consume_ << ";log=[";
    sep = false;
    for (LogLevel level : logLevels_) {
        if (sep) {
            out << "|";
        }
        out << toString(level);
        sep = true;
    }
    out << "];name=" << name_;
    return out.str();
}

Binding& GenericBinder::bind(BindingContext& context) const {
    const auto parts = missing();
    if (!parts.empty()) {
        std::string message = "cannot bind, missing:";
        for (const auto& part : parts) {
            message += " " + part;
        }
        throw BinderError(message);
    }

    BindingConfig cfg;
    cfg.name = name_.empty() ? interactionName_ + "-binding" : name_;
    auto interaction = constructInteraction(interactionName_, params_, context.clock());
    UserInteraction* ia = interaction.get();
    cfg.interaction = std::move(interaction);
    cfg.factory = [factory = factory_, ia] { return factory(*ia); };
    if (!whens_.empty()) {
        cfg.when = [whens = whens_, ia] {
            for (const auto& when : whens) {
                if (!when(*ia)) {
                    return false;
                }
            }
            return true;
        };
    }
    if (!firsts_.empty()) {
        cfg.first = [hooks = firsts_, ia](Command& c) {
            for (const auto& hook : hooks) {
                hook(*ia, c);
            }
        };
    }
    if (!thens_.empty()) {
        cfg.then = [hooks = thens_, ia](Command& c) {
            for (const auto& hook : hooks) {
                hook(*ia, c);
            }
        };
    }
    if (!ends_.empty()) {
        cfg.endHook = [hooks = ends_, ia](Command* c) {
            for (const auto& hook : hooks) {
                hook(*ia, c);
            }
        };
    }
    if (!cancels_.empty()) {
        cfg.cancelHook = [hooks = cancels_, ia](Command* c) {
            for (const auto& hook : hooks) {
                hook(*ia, c);
            }
        };
    }
    if (!endOrCancels_.empty()) {
        cfg.endOrCancelHook = [hooks = endOrCancels_, ia](Command* c) {
            for (const auto& hook : hooks) {
                hook(*ia, c);
            }
        };
    }
    cfg.continuous = continuous_;
    cfg.strictStart = strictStart_;
    cfg.consume = consume_;
    cfg.throttle = throttle_;
    if (!keys_.empty()) {
        cfg.keyFilter = keys_;
    }
    cfg.logLevels = logLevels_;
    cfg.staticNodes = nodes_;
    cfg.dynamicNodes = dynamicNodes_;
    return context.addBinding(std::make_unique<Binding>(context, std::move(cfg)));
}

} // namespace uibind
