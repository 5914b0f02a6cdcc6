#pragma once

#include "uibind/catalog.hpp"
#include "uibind/demo_model.hpp"
#include "uibind/logging.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uibind {

// Bad scenario content: unknown fields, missing requirements, dangling
// references. Raised during parsing, before any event is dispatched.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed predicate language for binding conditions. A rule is either a leaf
// {field, op, value} over the interaction data, or {all: [rules]}. Fields:
// button, key, x, y, src_x, src_y, tgt_x, tgt_y. Ops: eq, ne, lt, le, gt,
// ge. A leaf over a field the data does not carry evaluates to false.
struct WhenRule {
    std::string field;
    std::string op;
    nlohmann::json value;
    std::vector<WhenRule> all;

    bool conjunction() const noexcept { return !all.empty(); }
    bool evaluate(const DataSnapshot& data) const;
};

struct BindingSpec {
    std::string name;
    std::string interactionName;
    CatalogParams interactionParams;
    std::string commandName;
    nlohmann::json commandParams = nlohmann::json::object();
    std::vector<NodeId> on;
    std::optional<std::string> dynamicList;
    std::optional<WhenRule> when;
    bool continuous = false;
    bool strictStart = false;
    bool consume = false;
    Millis throttle = 0;
    std::optional<std::set<std::string>> keys;
    std::set<LogLevel> logLevels;
};

// A declarative replay setup: scene nodes (each also materialized as a model
// shape), optional dynamic node lists, and the bindings to install.
struct Scenario {
    std::size_t historyCapacity = 20;
    std::vector<Shape> nodes;
    std::map<std::string, std::vector<NodeId>> dynamicLists;
    std::vector<BindingSpec> bindings;
};

// Strict parsers: any unknown field or unresolved reference throws
// ScenarioError.
Scenario parseScenario(const nlohmann::json& j);
Scenario parseScenarioText(const std::string& text);

} // namespace uibind
