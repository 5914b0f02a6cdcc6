#include "uibind/clock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace uibind {

VirtualClock::Token VirtualClock::schedule(Millis deadline, Callback callback) {
    const Token token = nextToken_++;
    pending_.emplace(Key{deadline, nextSeq_++}, Entry{token, std::move(callback)});
    return token;
}

void VirtualClock::cancel(Token token) {
    for (auto it = pending_.begin(); it != pending_.end(); ++it) {
        if (it->second.token == token) {
            pending_.erase(it);
            return;
        }
    }
}

std::vector<VirtualClock::Token> VirtualClock::advanceTo(Millis to) {
    if (to < now_) {
        throw std::logic_error("clock cannot rewind: now=" + std::to_string(now_) +
                               " requested=" + std::to_string(to));
    }
    std::vector<Token> fired;
    // Callbacks may schedule further timeouts; anything landing inside the
    // advanced range still fires during this call.
    while (!pending_.empty() && pending_.begin()->first.first <= to) {
        auto it = pending_.begin();
        now_ = std::max(now_, it->first.first);
        Entry entry = std::move(it->second);
        pending_.erase(it);
        fired.push_back(entry.token);
        if (entry.callback) {
            entry.callback(entry.token);
        }
    }
    now_ = to;
    return fired;
}

std::optional<Millis> VirtualClock::nextDeadline() const {
    if (pending_.empty()) {
        return std::nullopt;
    }
    return pending_.begin()->first.first;
}

} // namespace uibind
