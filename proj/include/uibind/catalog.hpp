#pragma once

#include "uibind/interaction.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace uibind {

// Knobs understood by the built-in interaction builders. Builders ignore
// fields that do not apply to them.
struct CatalogParams {
    int n = 2;                 // touch or tap count
    Millis timeoutMs = -1;     // -1 keeps the builder default
    bool cancelOnMove = false; // double_click: pointer move aborts the gesture
};

// Typed handle pairing a catalog name with the data type its machine fills.
// Carrying the type here lets binder stages expose typed interaction data
// without the caller repeating it.
template <class D>
struct InteractionSpec {
    using Data = D;
    std::string name;
    CatalogParams params;
};

InteractionSpec<PointData> clickInteraction();
InteractionSpec<PointData> doubleClick(Millis timeoutMs = 1000, bool cancelOnMove = false);
InteractionSpec<FromToData> dragLock();
InteractionSpec<FromToData> dragAndDrop();
InteractionSpec<PointData> pressInteraction();
InteractionSpec<PointData> scrollInteraction();
InteractionSpec<KeysData> keyPressed();
InteractionSpec<KeysData> keysTyped(Millis timeoutMs = 1000);
InteractionSpec<MultiTouchData> multiTouch(int n);
InteractionSpec<TapData> tapInteraction(int n);

using InteractionFactory =
    std::function<std::unique_ptr<UserInteraction>(const CatalogParams&, VirtualClock&)>;

// Builds a sealed, ready-to-use interaction by catalog name. Throws
// std::invalid_argument for unknown names or bad parameters.
std::unique_ptr<UserInteraction> constructInteraction(const std::string& name,
                                                      const CatalogParams& params,
                                                      VirtualClock& clock);

std::unique_ptr<UserInteraction> constructInteraction(const std::string& name,
                                                      VirtualClock& clock);

// Extension point for user-defined interactions. A later registration under
// an existing name replaces the built-in.
void registerInteraction(const std::string& name, InteractionFactory factory);

// Registered names, sorted.
std::vector<std::string> catalogNames();

} // namespace uibind
