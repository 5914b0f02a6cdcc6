#pragma once

#include "uibind/events.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace uibind {

// Node list that tells subscribers when it changes. Bindings registered on
// such a list follow additions and removals without being rebuilt.
class ObservableNodeList {
public:
    using SubscriptionId = std::uint64_t;
    using Callback = std::function<void()>;

    void add(NodeId node) {
        if (std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end()) {
            return;
        }
        nodes_.push_back(std::move(node));
        notify();
    }

    void remove(const NodeId& node) {
        auto it = std::find(nodes_.begin(), nodes_.end(), node);
        if (it == nodes_.end()) {
            return;
        }
        nodes_.erase(it);
        notify();
    }

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

    SubscriptionId subscribe(Callback callback) {
        const SubscriptionId id = nextId_++;
        subscribers_[id] = std::move(callback);
        return id;
    }

    void unsubscribe(SubscriptionId id) { subscribers_.erase(id); }

private:
    void notify() {
        for (auto& [id, callback] : subscribers_) {
            callback();
        }
    }

    std::vector<NodeId> nodes_;
    std::map<SubscriptionId, Callback> subscribers_;
    SubscriptionId nextId_ = 1;
};

} // namespace uibind
