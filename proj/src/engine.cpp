#include "uibind/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>

namespace uibind {

namespace {

using nlohmann::json;

// The node a command should act on, whatever data shape the interaction
// carries. Path-like data points at its source object.
std::optional<NodeId> primaryObject(const DataSnapshot& data) {
    if (const auto* path = std::get_if<FromToData>(&data)) {
        return path->srcObject;
    }
    if (const auto* point = std::get_if<PointData>(&data)) {
        return point->object;
    }
    if (const auto* keys = std::get_if<KeysData>(&data)) {
        return keys->target;
    }
    if (const auto* taps = std::get_if<TapData>(&data)) {
        if (!taps->taps.empty()) {
            return taps->taps.back().object;
        }
        return std::nullopt;
    }
    if (const auto* touches = std::get_if<MultiTouchData>(&data)) {
        if (!touches->touches.empty()) {
            return touches->touches.front().path.srcObject;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<double, double>> pathDelta(const DataSnapshot& data) {
    const auto* path = std::get_if<FromToData>(&data);
    if (path == nullptr || !path->srcPosition || !path->tgtPosition) {
        return std::nullopt;
    }
    return std::make_pair(path->tgtPosition->x - path->srcPosition->x,
                          path->tgtPosition->y - path->srcPosition->y);
}

void setEffect(Drawing& drawing, UserInteraction& ia, bool on) {
    if (auto object = primaryObject(ia.data())) {
        if (auto shape = drawing.find(*object)) {
            shape->effect = on;
        }
    }
}

// Attaches the factory and hooks that realize the scenario's command choice.
// Hooks tolerate data shapes they cannot read; the command then simply never
// becomes executable.
GenericBinder wireCommand(GenericBinder chain, const BindingSpec& spec, Drawing& drawing) {
    if (spec.commandName == "translate") {
        chain = chain.toProduce([&drawing](UserInteraction& ia) -> std::shared_ptr<Command> {
            auto object = primaryObject(ia.data());
            if (!object) {
                return nullptr;
            }
            auto shape = drawing.find(*object);
            if (!shape) {
                return nullptr;
            }
            return std::make_shared<Translate>(std::move(shape));
        });
        chain = chain.first(
            [&drawing](UserInteraction& ia, Command&) { setEffect(drawing, ia, true); });
        chain = chain.then([](UserInteraction& ia, Command& command) {
            if (auto delta = pathDelta(ia.data())) {
                static_cast<Translate&>(command).setTranslation(delta->first, delta->second);
            }
        });
        chain = chain.endOrCancel(
            [&drawing](UserInteraction& ia, Command*) { setEffect(drawing, ia, false); });
        return chain;
    }
    if (spec.commandName == "draw_rect") {
        chain = chain.toProduce([&drawing](UserInteraction&) -> std::shared_ptr<Command> {
            return std::make_shared<DrawRect>(drawing);
        });
        chain = chain.then([](UserInteraction& ia, Command& command) {
            const auto* path = std::get_if<FromToData>(&ia.data());
            if (path == nullptr || !path->srcPosition || !path->tgtPosition) {
                return;
            }
            const double x = std::min(path->srcPosition->x, path->tgtPosition->x);
            const double y = std::min(path->srcPosition->y, path->tgtPosition->y);
            const double w = std::abs(path->tgtPosition->x - path->srcPosition->x);
            const double h = std::abs(path->tgtPosition->y - path->srcPosition->y);
            static_cast<DrawRect&>(command).setGeometry(x, y, w, h);
        });
        return chain;
    }
    if (spec.commandName == "change_color") {
        const std::string color = spec.commandParams.at("color").get<std::string>();
        std::optional<NodeId> target;
        if (spec.commandParams.contains("target")) {
            target = spec.commandParams.at("target").get<std::string>();
        }
        chain = chain.toProduce(
            [&drawing, color, target](UserInteraction& ia) -> std::shared_ptr<Command> {
                std::optional<NodeId> object = target ? target : primaryObject(ia.data());
                if (!object) {
                    return nullptr;
                }
                auto shape = drawing.find(*object);
                if (!shape) {
                    return nullptr;
                }
                return std::make_shared<ChangeColor>(std::move(shape), color);
            });
        return chain;
    }
    // del_shapes; parsing guarantees the name is one of the four.
    chain = chain.toProduce([&drawing](UserInteraction&) -> std::shared_ptr<Command> {
        return std::make_shared<DelShapes>(drawing);
    });
    return chain;
}

} // namespace

ReplaySession::ReplaySession(const Scenario& scenario)
    : context_(clock_, scenario.historyCapacity) {
    context_.setLogSink([this](const LogRecord& record) { logs_.push_back(record); });
    observation_ = std::make_unique<BindingsObservation>(context_);
    for (const Shape& node : scenario.nodes) {
        drawing_.addShape(node);
    }
    for (const auto& [name, ids] : scenario.dynamicLists) {
        auto list = std::make_unique<ObservableNodeList>();
        for (const NodeId& id : ids) {
            list->add(id);
        }
        dynamicLists_.emplace(name, std::move(list));
    }
    for (const BindingSpec& spec : scenario.bindings) {
        buildBinding(spec);
    }
}

void ReplaySession::buildBinding(const BindingSpec& spec) {
    GenericBinder chain =
        GenericBinder().usingInteraction(spec.interactionName, spec.interactionParams);
    chain = wireCommand(std::move(chain), spec, drawing_);
    chain = chain.named(spec.name);
    for (const NodeId& node : spec.on) {
        chain = chain.on(node);
    }
    if (spec.dynamicList) {
        chain = chain.on(*dynamicLists_.at(*spec.dynamicList));
    }
    if (spec.when) {
        const WhenRule rule = *spec.when;
        chain = chain.when([rule](UserInteraction& ia) { return rule.evaluate(ia.data()); });
    }
    if (spec.continuous) {
        chain = chain.continuousExecution();
    }
    if (spec.strictStart) {
        chain = chain.strictStart();
    }
    if (spec.consume) {
        chain = chain.consume();
    }
    if (spec.throttle > 0) {
        chain = chain.throttle(spec.throttle);
    }
    if (spec.keys) {
        chain = chain.with(std::vector<std::string>(spec.keys->begin(), spec.keys->end()));
    }
    for (LogLevel level : spec.logLevels) {
        chain = chain.log(level);
    }
    chain.bind(context_);
}

ObservableNodeList* ReplaySession::dynamicList(const std::string& name) {
    auto it = dynamicLists_.find(name);
    return it == dynamicLists_.end() ? nullptr : it->second.get();
}

void ReplaySession::dispatch(Event& event) {
    clock_.advanceTo(event.time);
    context_.dispatch(event);
}

void ReplaySession::dispatchRaw(Event& event) { context_.dispatch(event); }

void ReplaySession::drain() {
    while (auto deadline = clock_.nextDeadline()) {
        clock_.advanceTo(*deadline);
    }
}

ReplayReport runReplay(const Scenario& scenario, const std::vector<Event>& trace,
                       const std::vector<std::string>& postOps) {
    for (const std::string& op : postOps) {
        if (op != "undo" && op != "redo") {
            throw ScenarioError("unknown post op: " + op);
        }
    }

    const auto begin = std::chrono::steady_clock::now();
    ReplaySession session(scenario);
    for (const Event& event : trace) {
        Event copy = event;
        session.dispatch(copy);
    }
    session.drain();

    ReplayReport report;
    report.events = trace.size();
    for (const std::string& op : postOps) {
        UndoHistory& history = session.context().history();
        auto command = op == "undo" ? history.undo() : history.redo();
        report.postOps.push_back(PostOpResult{op, command ? command->name() : "", command != nullptr});
    }
    report.commandsCreated = session.context().commandCreations();
    for (const auto& record : session.observation().records()) {
        report.commands.push_back(ReplayedCommand{record.binding,
                                                  record.command ? record.command->name() : "",
                                                  record.status, record.executionId});
    }
    report.model = session.drawing().toJson();
    for (const auto& command : session.context().history().undoables()) {
        report.undoables.push_back(command->name());
    }
    for (const auto& command : session.context().history().redoables()) {
        report.redoables.push_back(command->name());
    }
    report.logs = session.logs();
    report.elapsedUs =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                              begin)
            .count();
    return report;
}

nlohmann::json ReplayReport::toJson(bool includeTiming) const {
    json commandsJson = json::array();
    for (const auto& command : commands) {
        commandsJson.push_back({{"binding", command.binding},
                                {"command", command.command},
                                {"status", std::string(toString(command.status))},
                                {"execution", command.executionId}});
    }
    json opsJson = json::array();
    for (const auto& op : postOps) {
        opsJson.push_back({{"op", op.op}, {"command", op.command}, {"applied", op.applied}});
    }
    json logsJson = json::array();
    for (const auto& record : logs) {
        logsJson.push_back({{"level", std::string(toString(record.level))},
                            {"t", record.time},
                            {"binding", record.binding},
                            {"msg", record.message}});
    }
    json doc{{"events", events},
             {"commands_created", commandsCreated},
             {"commands", commandsJson},
             {"model", model},
             {"history", json{{"undoables", undoables}, {"redoables", redoables}}},
             {"post_ops", opsJson},
             {"logs", logsJson}};
    if (includeTiming) {
        doc["elapsed_us"] = elapsedUs;
    }
    return doc;
}

namespace {

// The hand-written reference the benchmark compares against: a typical
// callback handler for drag and drop doing the same command work, state
// tracking and node filtering the binding does, minus the abstraction.
class CallbackDragHandler {
public:
    CallbackDragHandler(Drawing& drawing, const std::vector<NodeId>& nodes, bool continuous,
                        std::size_t historyCapacity)
        : drawing_(&drawing), nodes_(nodes), continuous_(continuous), history_(historyCapacity) {}

    void feed(const Event& event) {
        if (std::find(nodes_.begin(), nodes_.end(), event.target) == nodes_.end()) {
            return;
        }
        switch (event.kind) {
        case EventKind::PointerPress:
            if (phase_ != Phase::Idle) {
                return;
            }
            shape_ = drawing_->find(event.target);
            if (!shape_) {
                return;
            }
            src_ = *event.position;
            button_ = *event.button;
            command_ = std::make_shared<Translate>(shape_);
            ++created_;
            shape_->effect = true;
            phase_ = Phase::Pressed;
            return;
        case EventKind::PointerMove:
            if (phase_ == Phase::Idle || *event.button != button_) {
                return;
            }
            phase_ = Phase::Dragged;
            command_->setTranslation(event.position->x - src_.x, event.position->y - src_.y);
            if (continuous_ && command_->canExecute()) {
                command_->execute();
            }
            return;
        case EventKind::PointerRelease:
            if (phase_ == Phase::Idle || *event.button != button_) {
                return;
            }
            if (phase_ == Phase::Dragged) {
                const double dx = event.position->x - src_.x;
                const double dy = event.position->y - src_.y;
                command_->setTranslation(dx, dy);
                if (continuous_ && command_->canExecute()) {
                    command_->execute();
                }
                command_->setTranslation(dx, dy);
                if (command_->canExecute()) {
                    command_->execute();
                    history_.add(command_);
                    command_->done();
                } else if (command_->status() == CommandStatus::Created) {
                    command_->discard();
                }
            } else if (command_->status() == CommandStatus::Created) {
                command_->discard();
            }
            shape_->effect = false;
            command_.reset();
            shape_.reset();
            phase_ = Phase::Idle;
            return;
        default:
            return;
        }
    }

    std::uint64_t commandsCreated() const noexcept { return created_; }

private:
    enum class Phase { Idle, Pressed, Dragged };

    Drawing* drawing_;
    std::vector<NodeId> nodes_;
    bool continuous_;
    UndoHistory history_;
    Phase phase_ = Phase::Idle;
    std::shared_ptr<Translate> command_;
    std::shared_ptr<Shape> shape_;
    Point src_{};
    int button_ = 0;
    std::uint64_t created_ = 0;
};

std::int64_t medianUs(std::vector<std::int64_t> samples) {
    if (samples.empty()) {
        return 0;
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    if (n % 2 == 1) {
        return samples[n / 2];
    }
    return (samples[n / 2 - 1] + samples[n / 2]) / 2;
}

} // namespace

BenchmarkReport runBenchmark(const Scenario& scenario, const std::vector<Event>& trace, int reps) {
    if (reps < 3) {
        throw std::invalid_argument("benchmark needs at least 3 reps");
    }
    if (scenario.bindings.size() != 1) {
        throw ScenarioError("benchmark scenario needs exactly one binding");
    }
    const BindingSpec& spec = scenario.bindings.front();
    if (spec.interactionName != "dnd" || spec.commandName != "translate") {
        throw ScenarioError("benchmark scenario must bind dnd to translate");
    }
    if (spec.throttle != 0 || spec.when || spec.keys || spec.dynamicList || spec.strictStart ||
        spec.consume || !spec.logLevels.empty()) {
        throw ScenarioError(
            "benchmark binding must be plain: no throttle, filters, logs or dynamic nodes");
    }

    BenchmarkReport report;
    report.events = trace.size();
    report.reps = reps;
    report.statesMatch = true;

    for (int rep = 0; rep < reps; ++rep) {
        json bindingModel;
        std::uint64_t bindingCreated = 0;
        {
            ReplaySession session(scenario);
            const auto t0 = std::chrono::steady_clock::now();
            for (const Event& event : trace) {
                Event copy = event;
                session.dispatchRaw(copy);
            }
            const auto t1 = std::chrono::steady_clock::now();
            report.bindingUs.push_back(
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
            bindingModel = session.drawing().toJson();
            bindingCreated = session.context().commandCreations();
        }

        json callbackModel;
        std::uint64_t callbackCreated = 0;
        {
            Drawing drawing;
            for (const Shape& node : scenario.nodes) {
                drawing.addShape(node);
            }
            CallbackDragHandler handler(drawing, spec.on, spec.continuous,
                                        scenario.historyCapacity);
            const auto t0 = std::chrono::steady_clock::now();
            for (const Event& event : trace) {
                handler.feed(event);
            }
            const auto t1 = std::chrono::steady_clock::now();
            report.callbackUs.push_back(
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
            callbackModel = drawing.toJson();
            callbackCreated = handler.commandsCreated();
        }

        if (bindingModel != callbackModel || bindingCreated != callbackCreated) {
            report.statesMatch = false;
        }
    }

    report.bindingMedianUs = medianUs(report.bindingUs);
    report.callbackMedianUs = medianUs(report.callbackUs);
    const auto denominator = static_cast<double>(std::max<std::int64_t>(report.callbackMedianUs, 1));
    report.ratio = static_cast<double>(report.bindingMedianUs) / denominator;
    report.pass = report.statesMatch && report.ratio <= kBenchRatioLimit;
    return report;
}

nlohmann::json BenchmarkReport::toJson() const {
    return {{"events", events},
            {"reps", reps},
            {"binding_us", bindingUs},
            {"callback_us", callbackUs},
            {"binding_median_us", bindingMedianUs},
            {"callback_median_us", callbackMedianUs},
            {"ratio", ratio},
            {"ratio_limit", kBenchRatioLimit},
            {"states_match", statesMatch},
            {"pass", pass}};
}

} // namespace uibind
