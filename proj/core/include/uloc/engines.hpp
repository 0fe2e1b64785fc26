#pragma once

// The generic engines instantiated once for each backend.

#include "uloc/euclidean.hpp"
#include "uloc/good_maps.hpp"
#include "uloc/induction.hpp"
#include "uloc/ore.hpp"
#include "uloc/representation.hpp"
#include "uloc/sylvester.hpp"

namespace uloc {

extern template class SigmaEngine<IntegerCategory>;
extern template class SigmaEngine<PolyCategory>;
extern template class SigmaEngine<QuiverCategory>;
extern template class SigmaOre<IntegerCategory>;
extern template class SigmaOre<PolyCategory>;
extern template class SigmaOre<QuiverCategory>;
extern template class OreCalculus<IntegerCategory, SigmaOre<IntegerCategory>>;
extern template class OreCalculus<PolyCategory, SigmaOre<PolyCategory>>;
extern template class OreCalculus<QuiverCategory, SigmaOre<QuiverCategory>>;
extern template class Induction<IntegerCategory>;
extern template class Induction<PolyCategory>;
extern template class Induction<QuiverCategory>;
extern template class FullMapOre<IntegerCategory>;
extern template class OreCalculus<IntegerCategory, FullMapOre<IntegerCategory>>;
extern template class FullMapOre<PolyCategory>;
extern template class OreCalculus<PolyCategory, FullMapOre<PolyCategory>>;
extern template class FullMapOre<QuiverCategory>;
extern template class OreCalculus<QuiverCategory, FullMapOre<QuiverCategory>>;

}  // namespace uloc
