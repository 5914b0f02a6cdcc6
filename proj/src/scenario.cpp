#include "uibind/scenario.hpp"

#include <algorithm>

namespace uibind {

namespace {

using nlohmann::json;

void requireObject(const json& j, const std::string& what) {
    if (!j.is_object()) {
        throw ScenarioError(what + " must be a JSON object");
    }
}

void rejectUnknown(const json& obj, const std::string& what,
                   std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* name) { return key == name; }) == allowed.end()) {
            throw ScenarioError(what + " has unknown field: " + key);
        }
    }
}

std::string requireString(const json& obj, const char* field, const std::string& what) {
    if (!obj.contains(field) || !obj[field].is_string()) {
        throw ScenarioError(what + " needs a string field: " + field);
    }
    return obj[field].get<std::string>();
}

double numberField(const json& obj, const char* field, double fallback, const std::string& what) {
    if (!obj.contains(field)) {
        return fallback;
    }
    if (!obj[field].is_number()) {
        throw ScenarioError(what + " field must be a number: " + field);
    }
    return obj[field].get<double>();
}

bool boolField(const json& obj, const char* field, const std::string& what) {
    if (!obj.contains(field)) {
        return false;
    }
    if (!obj[field].is_boolean()) {
        throw ScenarioError(what + " field must be a boolean: " + field);
    }
    return obj[field].get<bool>();
}

const std::set<std::string>& whenFields() {
    static const std::set<std::string> fields = {"button", "key",   "x",     "y",
                                                 "src_x",  "src_y", "tgt_x", "tgt_y"};
    return fields;
}

const std::set<std::string>& whenOps() {
    static const std::set<std::string> ops = {"eq", "ne", "lt", "le", "gt", "ge"};
    return ops;
}

WhenRule parseWhen(const json& j, const std::string& what) {
    requireObject(j, what);
    WhenRule rule;
    if (j.contains("all")) {
        rejectUnknown(j, what, {"all"});
        if (!j["all"].is_array() || j["all"].empty()) {
            throw ScenarioError(what + ": all must be a non-empty array");
        }
        for (const auto& sub : j["all"]) {
            rule.all.push_back(parseWhen(sub, what + ".all"));
        }
        return rule;
    }
    rejectUnknown(j, what, {"field", "op", "value"});
    rule.field = requireString(j, "field", what);
    rule.op = requireString(j, "op", what);
    if (whenFields().count(rule.field) == 0) {
        throw ScenarioError(what + ": unknown field: " + rule.field);
    }
    if (whenOps().count(rule.op) == 0) {
        throw ScenarioError(what + ": unknown op: " + rule.op);
    }
    if (!j.contains("value")) {
        throw ScenarioError(what + ": value is required");
    }
    rule.value = j["value"];
    if (rule.field == "key") {
        if (!rule.value.is_string()) {
            throw ScenarioError(what + ": key rules need a string value");
        }
        if (rule.op != "eq" && rule.op != "ne") {
            throw ScenarioError(what + ": key rules support only eq and ne");
        }
    } else if (!rule.value.is_number()) {
        throw ScenarioError(what + ": numeric rules need a number value");
    }
    return rule;
}

struct CommandParamSpec {
    std::vector<const char*> allowed;
    std::vector<const char*> required;
};

const std::map<std::string, CommandParamSpec>& knownCommands() {
    static const std::map<std::string, CommandParamSpec> table = {
        {"translate", {{}, {}}},
        {"draw_rect", {{}, {}}},
        {"change_color", {{"color", "target"}, {"color"}}},
        {"del_shapes", {{}, {}}},
    };
    return table;
}

CatalogParams parseInteractionParams(const json& j, const std::string& what) {
    CatalogParams params;
    requireObject(j, what);
    rejectUnknown(j, what, {"n", "timeout", "cancel_on_move"});
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) {
            throw ScenarioError(what + ": n must be an integer");
        }
        params.n = j["n"].get<int>();
    }
    if (j.contains("timeout")) {
        if (!j["timeout"].is_number_integer()) {
            throw ScenarioError(what + ": timeout must be an integer");
        }
        params.timeoutMs = j["timeout"].get<Millis>();
    }
    if (j.contains("cancel_on_move")) {
        if (!j["cancel_on_move"].is_boolean()) {
            throw ScenarioError(what + ": cancel_on_move must be a boolean");
        }
        params.cancelOnMove = j["cancel_on_move"].get<bool>();
    }
    return params;
}

BindingSpec parseBinding(const json& j, const Scenario& scenario, std::size_t index) {
    const std::string what = "binding[" + std::to_string(index) + "]";
    requireObject(j, what);
    rejectUnknown(j, what,
                  {"name", "interaction", "command", "on", "dynamic", "when", "continuous",
                   "strict_start", "consume", "throttle", "keys", "log"});

    BindingSpec spec;
    spec.name = requireString(j, "name", what);

    if (!j.contains("interaction")) {
        throw ScenarioError(what + " needs an interaction");
    }
    const json& ia = j["interaction"];
    requireObject(ia, what + ".interaction");
    rejectUnknown(ia, what + ".interaction", {"name", "params"});
    spec.interactionName = requireString(ia, "name", what + ".interaction");
    if (ia.contains("params")) {
        spec.interactionParams = parseInteractionParams(ia["params"], what + ".interaction.params");
    }

    if (!j.contains("command")) {
        throw ScenarioError(what + " needs a command");
    }
    const json& cmd = j["command"];
    requireObject(cmd, what + ".command");
    rejectUnknown(cmd, what + ".command", {"name", "params"});
    spec.commandName = requireString(cmd, "name", what + ".command");
    auto commandIt = knownCommands().find(spec.commandName);
    if (commandIt == knownCommands().end()) {
        throw ScenarioError(what + ": unknown command: " + spec.commandName);
    }
    if (cmd.contains("params")) {
        requireObject(cmd["params"], what + ".command.params");
        const auto& paramSpec = commandIt->second;
        for (const auto& [key, value] : cmd["params"].items()) {
            if (std::find_if(paramSpec.allowed.begin(), paramSpec.allowed.end(),
                             [&](const char* name) { return key == name; }) ==
                paramSpec.allowed.end()) {
                throw ScenarioError(what + ".command.params has unknown field: " + key);
            }
            if (!value.is_string()) {
                throw ScenarioError(what + ".command.params." + key + " must be a string");
            }
        }
        spec.commandParams = cmd["params"];
    }
    for (const char* required : commandIt->second.required) {
        if (!spec.commandParams.contains(required)) {
            throw ScenarioError(what + ".command.params needs: " + std::string(required));
        }
    }

    auto knownNode = [&](const NodeId& id) {
        return std::any_of(scenario.nodes.begin(), scenario.nodes.end(),
                           [&](const Shape& node) { return node.id == id; });
    };

    if (j.contains("on")) {
        if (!j["on"].is_array()) {
            throw ScenarioError(what + ".on must be an array");
        }
        for (const auto& node : j["on"]) {
            if (!node.is_string()) {
                throw ScenarioError(what + ".on entries must be strings");
            }
            NodeId id = node.get<std::string>();
            if (!knownNode(id)) {
                throw ScenarioError(what + ".on references unknown node: " + id);
            }
            spec.on.push_back(std::move(id));
        }
    }
    if (j.contains("dynamic")) {
        const std::string listName = requireString(j, "dynamic", what);
        if (scenario.dynamicLists.count(listName) == 0) {
            throw ScenarioError(what + " references unknown dynamic list: " + listName);
        }
        spec.dynamicList = listName;
    }
    if (spec.on.empty() && !spec.dynamicList) {
        throw ScenarioError(what + " needs on nodes or a dynamic list");
    }

    if (j.contains("when")) {
        spec.when = parseWhen(j["when"], what + ".when");
    }
    spec.continuous = boolField(j, "continuous", what);
    spec.strictStart = boolField(j, "strict_start", what);
    spec.consume = boolField(j, "consume", what);
    if (j.contains("throttle")) {
        if (!j["throttle"].is_number_integer() || j["throttle"].get<Millis>() < 0) {
            throw ScenarioError(what + ".throttle must be a non-negative integer");
        }
        spec.throttle = j["throttle"].get<Millis>();
    }
    if (j.contains("keys")) {
        if (!j["keys"].is_array()) {
            throw ScenarioError(what + ".keys must be an array");
        }
        std::set<std::string> keys;
        for (const auto& key : j["keys"]) {
            if (!key.is_string()) {
                throw ScenarioError(what + ".keys entries must be strings");
            }
            keys.insert(key.get<std::string>());
        }
        spec.keys = std::move(keys);
    }
    if (j.contains("log")) {
        if (!j["log"].is_array()) {
            throw ScenarioError(what + ".log must be an array");
        }
        for (const auto& level : j["log"]) {
            if (!level.is_string()) {
                throw ScenarioError(what + ".log entries must be strings");
            }
            try {
                spec.logLevels.insert(logLevelFromString(level.get<std::string>()));
            } catch (const std::invalid_argument& error) {
                throw ScenarioError(what + ".log: " + error.what());
            }
        }
    }
    return spec;
}

} // namespace

bool WhenRule::evaluate(const DataSnapshot& data) const {
    if (conjunction()) {
        for (const WhenRule& sub : all) {
            if (!sub.evaluate(data)) {
                return false;
            }
        }
        return true;
    }

    if (field == "key") {
        const auto* keys = std::get_if<KeysData>(&data);
        if (keys == nullptr || keys->keys.empty()) {
            return false;
        }
        const std::string& actual = keys->keys.back();
        const std::string expected = value.get<std::string>();
        return op == "eq" ? actual == expected : actual != expected;
    }

    // Numeric field resolution against whatever data shape is present.
    std::optional<double> actual;
    auto fromPath = [&](const FromToData& path) -> std::optional<double> {
        auto pick = [&](const std::optional<Point>& p, bool takeX) -> std::optional<double> {
            if (!p) {
                return std::nullopt;
            }
            return takeX ? p->x : p->y;
        };
        if (field == "button") {
            if (!path.button) {
                return std::nullopt;
            }
            return static_cast<double>(*path.button);
        }
        if (field == "src_x") return pick(path.srcPosition, true);
        if (field == "src_y") return pick(path.srcPosition, false);
        if (field == "tgt_x") return pick(path.tgtPosition, true);
        if (field == "tgt_y") return pick(path.tgtPosition, false);
        if (field == "x") {
            auto v = pick(path.tgtPosition, true);
            return v ? v : pick(path.srcPosition, true);
        }
        if (field == "y") {
            auto v = pick(path.tgtPosition, false);
            return v ? v : pick(path.srcPosition, false);
        }
        return std::nullopt;
    };
    auto fromPoint = [&](const PointData& point) -> std::optional<double> {
        if (field == "button") {
            if (!point.button) {
                return std::nullopt;
            }
            return static_cast<double>(*point.button);
        }
        if (!point.position) {
            return std::nullopt;
        }
        if (field == "x") return point.position->x;
        if (field == "y") return point.position->y;
        return std::nullopt;
    };

    if (const auto* path = std::get_if<FromToData>(&data)) {
        actual = fromPath(*path);
    } else if (const auto* point = std::get_if<PointData>(&data)) {
        actual = fromPoint(*point);
    } else if (const auto* taps = std::get_if<TapData>(&data)) {
        if (!taps->taps.empty()) {
            actual = fromPoint(taps->taps.back());
        }
    } else if (const auto* touches = std::get_if<MultiTouchData>(&data)) {
        if (!touches->touches.empty()) {
            actual = fromPath(touches->touches.front().path);
        }
    }

    if (!actual) {
        return false;
    }
    const double expected = value.get<double>();
    if (op == "eq") return *actual == expected;
    if (op == "ne") return *actual != expected;
    if (op == "lt") return *actual < expected;
    if (op == "le") return *actual <= expected;
    if (op == "gt") return *actual > expected;
    return *actual >= expected;
}

Scenario parseScenario(const nlohmann::json& j) {
    requireObject(j, "scenario");
    rejectUnknown(j, "scenario", {"history_capacity", "nodes", "dynamic_lists", "bindings"});

    Scenario scenario;
    if (j.contains("history_capacity")) {
        if (!j["history_capacity"].is_number_integer() || j["history_capacity"].get<int>() < 0) {
            throw ScenarioError("history_capacity must be a non-negative integer");
        }
        scenario.historyCapacity = j["history_capacity"].get<std::size_t>();
    }

    if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty()) {
        throw ScenarioError("scenario needs a non-empty nodes array");
    }
    for (const auto& nodeJson : j["nodes"]) {
        requireObject(nodeJson, "node");
        rejectUnknown(nodeJson, "node", {"id", "x", "y", "w", "h", "color"});
        Shape node;
        node.id = requireString(nodeJson, "id", "node");
        node.x = numberField(nodeJson, "x", 0, "node");
        node.y = numberField(nodeJson, "y", 0, "node");
        node.w = numberField(nodeJson, "w", 0, "node");
        node.h = numberField(nodeJson, "h", 0, "node");
        if (nodeJson.contains("color")) {
            node.color = requireString(nodeJson, "color", "node");
        }
        if (std::any_of(scenario.nodes.begin(), scenario.nodes.end(),
                        [&](const Shape& existing) { return existing.id == node.id; })) {
            throw ScenarioError("duplicate node id: " + node.id);
        }
        scenario.nodes.push_back(std::move(node));
    }

    if (j.contains("dynamic_lists")) {
        requireObject(j["dynamic_lists"], "dynamic_lists");
        for (const auto& [listName, content] : j["dynamic_lists"].items()) {
            if (!content.is_array()) {
                throw ScenarioError("dynamic list must be an array: " + listName);
            }
            std::vector<NodeId> nodes;
            for (const auto& node : content) {
                if (!node.is_string()) {
                    throw ScenarioError("dynamic list entries must be strings: " + listName);
                }
                NodeId id = node.get<std::string>();
                if (std::none_of(scenario.nodes.begin(), scenario.nodes.end(),
                                 [&](const Shape& existing) { return existing.id == id; })) {
                    throw ScenarioError("dynamic list " + listName +
                                        " references unknown node: " + id);
                }
                nodes.push_back(std::move(id));
            }
            scenario.dynamicLists[listName] = std::move(nodes);
        }
    }

    if (!j.contains("bindings") || !j["bindings"].is_array() || j["bindings"].empty()) {
        throw ScenarioError("scenario needs a non-empty bindings array");
    }
    for (std::size_t i = 0; i < j["bindings"].size(); ++i) {
        BindingSpec spec = parseBinding(j["bindings"][i], scenario, i);
        if (std::any_of(scenario.bindings.begin(), scenario.bindings.end(),
                        [&](const BindingSpec& existing) { return existing.name == spec.name; })) {
            throw ScenarioError("duplicate binding name: " + spec.name);
        }
        scenario.bindings.push_back(std::move(spec));
    }
    return scenario;
}

Scenario parseScenarioText(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& error) {
        throw std::invalid_argument(std::string("scenario is not valid JSON: ") + error.what());
    }
    return parseScenario(j);
}

} // namespace uibind
