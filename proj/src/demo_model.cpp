#include "uibind/demo_model.hpp"

#include <algorithm>
#include <utility>

namespace uibind {

std::shared_ptr<Shape> Drawing::addShape(Shape shape) {
    auto owned = std::make_shared<Shape>(std::move(shape));
    shapes_.push_back(owned);
    return owned;
}

void Drawing::insertShape(std::size_t index, std::shared_ptr<Shape> shape) {
    if (index > shapes_.size()) {
        index = shapes_.size();
    }
    shapes_.insert(shapes_.begin() + static_cast<std::ptrdiff_t>(index), std::move(shape));
}

std::shared_ptr<Shape> Drawing::removeShape(const std::string& id) {
    auto it = std::find_if(shapes_.begin(), shapes_.end(),
                           [&](const auto& shape) { return shape->id == id; });
    if (it == shapes_.end()) {
        return nullptr;
    }
    auto removed = *it;
    shapes_.erase(it);
    return removed;
}

std::shared_ptr<Shape> Drawing::find(const std::string& id) const {
    auto it = std::find_if(shapes_.begin(), shapes_.end(),
                           [&](const auto& shape) { return shape->id == id; });
    return it == shapes_.end() ? nullptr : *it;
}

std::optional<std::size_t> Drawing::indexOf(const std::string& id) const {
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
        if (shapes_[i]->id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::string Drawing::nextShapeId() { return "shape-" + std::to_string(nextId_++); }

nlohmann::json Drawing::toJson() const {
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& shape : shapes_) {
        shapes.push_back({
            {"id", shape->id},
            {"x", shape->x},
            {"y", shape->y},
            {"w", shape->w},
            {"h", shape->h},
            {"color", shape->color},
            {"effect", shape->effect},
        });
    }
    return {{"shapes", shapes}};
}

Translate::Translate(std::shared_ptr<Shape> shape) : shape_(std::move(shape)) {}

void Translate::setTranslation(double dx, double dy) {
    hasTranslation_ = true;
    dx_ = dx;
    dy_ = dy;
}

bool Translate::canDo() const { return shape_ != nullptr && hasTranslation_; }

Completion Translate::execution() {
    shape_->x = mementoX_ + dx_;
    shape_->y = mementoY_ + dy_;
    return {};
}

void Translate::createMemento() {
    mementoX_ = shape_->x;
    mementoY_ = shape_->y;
}

void Translate::undo() {
    shape_->x = mementoX_;
    shape_->y = mementoY_;
}

void Translate::redo() { execution(); }

DrawRect::DrawRect(Drawing& drawing) : drawing_(&drawing) {}

void DrawRect::setGeometry(double x, double y, double w, double h) {
    hasGeometry_ = true;
    x_ = x;
    y_ = y;
    w_ = w;
    h_ = h;
}

bool DrawRect::canDo() const { return hasGeometry_ && w_ > 0 && h_ > 0; }

Completion DrawRect::execution() {
    if (!shape_) {
        Shape shape;
        shape.id = drawing_->nextShapeId();
        shape.x = x_;
        shape.y = y_;
        shape.w = w_;
        shape.h = h_;
        shape_ = drawing_->addShape(std::move(shape));
        index_ = drawing_->shapes().size() - 1;
        return {};
    }
    if (!drawing_->find(shape_->id)) {
        // Re-run after undo: put the rectangle back where it was.
        drawing_->insertShape(index_, shape_);
    }
    shape_->x = x_;
    shape_->y = y_;
    shape_->w = w_;
    shape_->h = h_;
    return {};
}

void DrawRect::undo() {
    if (shape_) {
        drawing_->removeShape(shape_->id);
    }
}

void DrawRect::redo() { execution(); }

ChangeColor::ChangeColor(std::shared_ptr<Shape> shape, std::string newColor)
    : shape_(std::move(shape)), newColor_(std::move(newColor)) {}

bool ChangeColor::canDo() const { return shape_ && newColor_ != shape_->color; }

Completion ChangeColor::execution() {
    shape_->color = newColor_;
    return {};
}

void ChangeColor::createMemento() { mementoColor_ = shape_->color; }

void ChangeColor::undo() { shape_->color = mementoColor_; }

void ChangeColor::redo() { execution(); }

DelShapes::DelShapes(Drawing& drawing) : drawing_(&drawing) {}

bool DelShapes::canDo() const { return !drawing_->shapes().empty(); }

Completion DelShapes::execution() {
    for (const auto& [index, shape] : memento_) {
        drawing_->removeShape(shape->id);
    }
    return {};
}

void DelShapes::createMemento() {
    memento_.clear();
    const auto& shapes = drawing_->shapes();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        memento_.emplace_back(i, shapes[i]);
    }
}

void DelShapes::undo() {
    for (const auto& [index, shape] : memento_) {
        drawing_->insertShape(index, shape);
    }
}

void DelShapes::redo() { execution(); }

} // namespace uibind
