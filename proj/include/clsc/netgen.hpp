#pragma once

#include "clsc/network.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace clsc {

struct GenSpec {
    int n_manufacturers = 0;
    int n_dcs = 0;
    int n_retailers = 0;
    int n_remanufacturers = 0; // at most n_manufacturers; >= 1 when returns flow
    double demand_min = 0.0;
    double demand_max = 0.0;
    double return_rate = 0.0;    // in [0, 1]
    double capacity_slack = 0.0; // headroom factor on the derived capacities
    bool single_allocation = true;
    std::uint64_t seed = 0;
};

// JSON object: n_manufacturers, n_dcs, n_retailers, demand_range [min, max]
// required; n_remanufacturers, return_rate, capacity_slack (default 0),
// single_allocation (default true), seed (default 0) optional.
GenSpec parse_gen_spec(const std::string& text);
GenSpec load_gen_spec(const std::filesystem::path& path);
// Throws Error(Schema) on out-of-range fields, including a positive
// return_rate with no remanufacturer to absorb it.
void check(const GenSpec& spec);

// Seeded synthetic network, always flow-conserving at default tolerances.
// The draw procedure is fixed so a seed pins the network byte for byte:
// mt19937_64(seed), uniforms via (next() >> 11) * 2^-53, DC attractiveness
// drawn first, then retailer demands; retailers go to DCs by largest-remainder
// quotas on attractiveness; manufacturer flows pour greedily into descending
// DC demand; returns are return_rate * demand routed back through the same DC,
// then poured greedily into the remanufacturers (the first n_remanufacturers
// manufacturers).
ClscNetwork generate(const GenSpec& spec);

} // namespace clsc
