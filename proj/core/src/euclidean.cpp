#include "uloc/euclidean.hpp"

namespace uloc {

template class EuclideanCategory<IntegerRing>;
template class EuclideanCategory<PolyRing>;
template class EuclideanOracle<IntegerRing>;
template class EuclideanOracle<PolyRing>;

}  // namespace uloc
