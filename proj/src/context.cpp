#include "uibind/context.hpp"

#include "uibind/binding.hpp"

namespace uibind {

BindingContext::BindingContext(VirtualClock& clock, std::size_t historyCapacity)
    : clock_(&clock), history_(historyCapacity), sink_(stderrLogSink()) {}

Binding& BindingContext::addBinding(std::unique_ptr<Binding> binding) {
    bindings_.push_back(std::move(binding));
    return *bindings_.back();
}

void BindingContext::dispatch(Event& event) {
    for (auto& binding : bindings_) {
        if (event.consumed()) {
            break;
        }
        binding->offer(event);
    }
}

void BindingContext::log(LogLevel level, const std::string& binding, const std::string& message) {
    if (sink_) {
        sink_(LogRecord{level, clock_->now(), binding, message});
    }
}

void BindingContext::notifyCommandFinished(const Binding& binding,
                                           const std::shared_ptr<Command>& command,
                                           CommandStatus status, std::uint64_t executionId) {
    if (observer_) {
        observer_(binding, command, status, executionId);
    }
}

} // namespace uibind
