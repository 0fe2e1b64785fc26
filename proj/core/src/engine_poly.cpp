#include "uloc/engines.hpp"

namespace uloc {

template class SigmaEngine<PolyCategory>;
template class SigmaOre<PolyCategory>;
template class OreCalculus<PolyCategory, SigmaOre<PolyCategory>>;
template class Induction<PolyCategory>;
template class FullMapOre<PolyCategory>;
template class OreCalculus<PolyCategory, FullMapOre<PolyCategory>>;

}  // namespace uloc
