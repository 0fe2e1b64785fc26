#include "uloc/engines.hpp"

namespace uloc {

template class SigmaEngine<QuiverCategory>;
template class SigmaOre<QuiverCategory>;
template class OreCalculus<QuiverCategory, SigmaOre<QuiverCategory>>;
template class Induction<QuiverCategory>;
template class FullMapOre<QuiverCategory>;
template class OreCalculus<QuiverCategory, FullMapOre<QuiverCategory>>;

}  // namespace uloc
