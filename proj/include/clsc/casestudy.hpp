#pragma once

#include "clsc/network.hpp"

namespace clsc {

// The bundled Ohio reference network: 5 manufacturers (3 of them able to
// remanufacture), 10 distribution centers, 50 retailers, a 10% return rate.
// data/casestudy_ohio.json is this network in canonical serialized form; the
// reconstruction procedure behind the edge weights is docs/casestudy.md.
ClscNetwork casestudy_network();

} // namespace clsc
