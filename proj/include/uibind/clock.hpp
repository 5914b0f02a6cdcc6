#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace uibind {

using Millis = std::int64_t;

// Deterministic substitute for wall-clock timers. Every timeout in the engine
// is scheduled here, and tests or the replay harness drive it explicitly.
class VirtualClock {
public:
    using Token = std::uint64_t;
    using Callback = std::function<void(Token)>;

    Millis now() const noexcept { return now_; }

    // Schedules a timeout at an absolute deadline and returns its token.
    // Deadlines at or before the current time are legal; they fire on the
    // next advance.
    Token schedule(Millis deadline, Callback callback = {});

    // Removes a pending timeout. Unknown tokens are ignored.
    void cancel(Token token);

    // Moves the clock forward to `to`, firing every pending timeout whose
    // deadline is <= to. The boundary is inclusive: a timeout with deadline t
    // fires when the clock reaches exactly t. Timeouts fire in deadline
    // order, ties broken by registration order.
    std::vector<Token> advanceTo(Millis to);

    std::optional<Millis> nextDeadline() const;
    std::size_t pendingCount() const noexcept { return pending_.size(); }

private:
    struct Entry {
        Token token = 0;
        Callback callback;
    };
    using Key = std::pair<Millis, std::uint64_t>;  // (deadline, registration seq)

    Millis now_ = 0;
    std::uint64_t nextSeq_ = 0;
    Token nextToken_ = 1;
    std::map<Key, Entry> pending_;
};

} // namespace uibind
