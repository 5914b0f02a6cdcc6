#pragma once

#include "uibind/command.hpp"

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace uibind {

// Minimal drawing-editor model the replay harness and tests run commands
// against.
struct Shape {
    std::string id;
    double x = 0;
    double y = 0;
    double w = 0;
    double h = 0;
    std::string color = "black";
    // Transient visual feedback, toggled by binding hooks while a gesture is
    // in flight.
    bool effect = false;

    friend bool operator==(const Shape&, const Shape&) = default;
};

class Drawing {
public:
    std::shared_ptr<Shape> addShape(Shape shape);
    void insertShape(std::size_t index, std::shared_ptr<Shape> shape);
    std::shared_ptr<Shape> removeShape(const std::string& id);
    std::shared_ptr<Shape> find(const std::string& id) const;
    std::optional<std::size_t> indexOf(const std::string& id) const;
    const std::vector<std::shared_ptr<Shape>>& shapes() const noexcept { return shapes_; }
    std::string nextShapeId();

    nlohmann::json toJson() const;

private:
    std::vector<std::shared_ptr<Shape>> shapes_;
    std::uint64_t nextId_ = 1;
};

// Moves one shape by an offset relative to where it stood when the command
// first ran (the memento). Re-executing with a fresh offset moves from that
// same anchor, so a continuously executed drag never compounds.
class Translate : public Command, public Undoable {
public:
    explicit Translate(std::shared_ptr<Shape> shape);

    void setTranslation(double dx, double dy);
    std::string name() const override { return "translate"; }

    void undo() override;
    void redo() override;

protected:
    bool canDo() const override;
    Completion execution() override;
    void createMemento() override;

private:
    std::shared_ptr<Shape> shape_;
    bool hasTranslation_ = false;
    double dx_ = 0;
    double dy_ = 0;
    double mementoX_ = 0;
    double mementoY_ = 0;
};

// Adds one rectangle; repeated executions re-shape the same rectangle.
class DrawRect : public Command, public Undoable {
public:
    explicit DrawRect(Drawing& drawing);

    void setGeometry(double x, double y, double w, double h);
    std::string name() const override { return "draw_rect"; }

    void undo() override;
    void redo() override;

protected:
    bool canDo() const override;
    Completion execution() override;

private:
    Drawing* drawing_;
    std::shared_ptr<Shape> shape_;
    std::size_t index_ = 0;
    bool hasGeometry_ = false;
    double x_ = 0;
    double y_ = 0;
    double w_ = 0;
    double h_ = 0;
};

class ChangeColor : public Command, public Undoable {
public:
    ChangeColor(std::shared_ptr<Shape> shape, std::string newColor);

    std::string name() const override { return "change_color"; }

    void undo() override;
    void redo() override;

protected:
    bool canDo() const override;
    Completion execution() override;
    void createMemento() override;

private:
    std::shared_ptr<Shape> shape_;
    std::string newColor_;
    std::string mementoColor_;
};

// Deletes every shape in the drawing; undo restores them at their original
// positions in the z-order.
class DelShapes : public Command, public Undoable {
public:
    explicit DelShapes(Drawing& drawing);

    std::string name() const override { return "del_shapes"; }

    void undo() override;
    void redo() override;

protected:
    bool canDo() const override;
    Completion execution() override;
    void createMemento() override;

private:
    Drawing* drawing_;
    std::vector<std::pair<std::size_t, std::shared_ptr<Shape>>> memento_;
};

} // namespace uibind
