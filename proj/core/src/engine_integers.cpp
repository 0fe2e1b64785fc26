#include "uloc/engines.hpp"

namespace uloc {

template class SigmaEngine<IntegerCategory>;
template class SigmaOre<IntegerCategory>;
template class OreCalculus<IntegerCategory, SigmaOre<IntegerCategory>>;
template class Induction<IntegerCategory>;
template class FullMapOre<IntegerCategory>;
template class OreCalculus<IntegerCategory, FullMapOre<IntegerCategory>>;

}  // namespace uloc
