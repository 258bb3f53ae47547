#include "clsc/netgen.hpp"

#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace clsc {

using ordered_json = nlohmann::ordered_json;

void check(const GenSpec& spec) {
    auto bad = [](const std::string& msg) {
        throw Error(ErrorKind::Schema, "generator spec: " + msg);
    };
    if (spec.n_manufacturers < 1) bad("n_manufacturers must be at least 1");
    if (spec.n_dcs < 1) bad("n_dcs must be at least 1");
    if (spec.n_retailers < 1) bad("n_retailers must be at least 1");
    if (spec.n_remanufacturers < 0 || spec.n_remanufacturers > spec.n_manufacturers)
        bad("n_remanufacturers must lie in [0, n_manufacturers]");
    if (!(spec.demand_min > 0.0) || !std::isfinite(spec.demand_min))
        bad("demand_range minimum must be positive");
    if (!(spec.demand_max >= spec.demand_min) || !std::isfinite(spec.demand_max))
        bad("demand_range maximum must be at least the minimum");
    if (!(spec.return_rate >= 0.0 && spec.return_rate <= 1.0))
        bad("return_rate must lie in [0, 1]");
    if (!(spec.capacity_slack >= 0.0) || !std::isfinite(spec.capacity_slack))
        bad("capacity_slack must be nonnegative");
    if (spec.return_rate > 0.0 && spec.n_remanufacturers < 1)
        bad("a positive return_rate needs at least one remanufacturer");
}

namespace {

int require_int(const ordered_json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_integer())
        throw Error(ErrorKind::Schema,
                    std::string("generator spec: '") + key + "' must be an integer");
    return it->get<int>();
}

int optional_int(const ordered_json& doc, const char* key, int fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_number_integer())
        throw Error(ErrorKind::Schema,
                    std::string("generator spec: '") + key + "' must be an integer");
    return it->get<int>();
}

double optional_double(const ordered_json& doc, const char* key, double fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_number())
        throw Error(ErrorKind::Schema, std::string("generator spec: '") + key + "' must be a number");
    return it->get<double>();
}

std::string padded_id(const char* prefix, int index, int count) {
    std::string digits = std::to_string(index);
    std::string max_digits = std::to_string(count);
    std::string out = prefix;
    out.append(max_digits.size() - digits.size(), '0');
    return out + digits;
}

} // namespace

GenSpec parse_gen_spec(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("generator spec: ") + e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorKind::Schema, "generator spec: top level must be an object");

    GenSpec spec;
    spec.n_manufacturers = require_int(doc, "n_manufacturers");
    spec.n_dcs = require_int(doc, "n_dcs");
    spec.n_retailers = require_int(doc, "n_retailers");

    auto range = doc.find("demand_range");
    if (range == doc.end() || !range->is_array() || range->size() != 2 ||
        !(*range)[0].is_number() || !(*range)[1].is_number())
        throw Error(ErrorKind::Schema,
                    "generator spec: 'demand_range' must be a [min, max] number pair");
    spec.demand_min = (*range)[0].get<double>();
    spec.demand_max = (*range)[1].get<double>();

    spec.n_remanufacturers = optional_int(doc, "n_remanufacturers", 0);
    spec.return_rate = optional_double(doc, "return_rate", 0.0);
    spec.capacity_slack = optional_double(doc, "capacity_slack", 0.0);
    auto single = doc.find("single_allocation");
    if (single != doc.end() && !single->is_null()) {
        if (!single->is_boolean())
            throw Error(ErrorKind::Schema, "generator spec: 'single_allocation' must be a bool");
        spec.single_allocation = single->get<bool>();
    }
    auto seed = doc.find("seed");
    if (seed != doc.end() && !seed->is_null()) {
        if (!seed->is_number_integer())
            throw Error(ErrorKind::Schema, "generator spec: 'seed' must be an integer");
        spec.seed = seed->get<std::uint64_t>();
    }

    check(spec);
    return spec;
}

GenSpec load_gen_spec(const std::filesystem::path& path) {
    return parse_gen_spec(detail::read_file(path));
}

namespace {

// Greedy pour of per-sink demands into per-source capacities: sinks in
// descending demand, sources in index order. Float dust that survives the
// pour lands on the sink's last edge so totals stay inside the validator's
// tolerance.
void pour(const std::vector<double>& sink_demand, const std::vector<std::string>& sink_ids,
          std::vector<double>& source_left, const std::vector<std::string>& source_ids,
          Layer layer, bool source_to_sink, std::vector<Edge>& edges) {
    std::vector<std::size_t> order(sink_demand.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sink_demand[a] > sink_demand[b];
    });

    for (std::size_t sink : order) {
        double need = sink_demand[sink];
        if (need <= 0.0) continue;
        std::size_t last_edge = edges.size();
        bool wrote = false;
        for (std::size_t src = 0; src < source_left.size() && need > 0.0; ++src) {
            double take = std::min(need, source_left[src]);
            if (take <= 0.0) continue;
            source_left[src] -= take;
            need -= take;
            Edge e;
            e.layer = layer;
            e.weight = take;
            if (source_to_sink) {
                e.from = source_ids[src];
                e.to = sink_ids[sink];
            } else {
                e.from = sink_ids[sink];
                e.to = source_ids[src];
            }
            last_edge = edges.size();
            edges.push_back(std::move(e));
            wrote = true;
        }
        if (need > 0.0 && wrote) edges[last_edge].weight += need;
    }
}

} // namespace

ClscNetwork generate(const GenSpec& spec) {
    check(spec);

    std::mt19937_64 eng(spec.seed);
    auto u01 = [&eng] { return (eng() >> 11) * 0x1.0p-53; };

    const int n_m = spec.n_manufacturers;
    const int n_dc = spec.n_dcs;
    const int n_re = spec.n_retailers;
    const int n_rm = spec.n_remanufacturers;

    std::vector<std::string> m_ids(n_m), dc_ids(n_dc), re_ids(n_re);
    for (int i = 0; i < n_m; ++i) m_ids[i] = padded_id("M", i + 1, n_m);
    for (int i = 0; i < n_dc; ++i) dc_ids[i] = padded_id("DC", i + 1, n_dc);
    for (int i = 0; i < n_re; ++i) re_ids[i] = padded_id("R", i + 1, n_re);

    std::vector<double> attractiveness(n_dc);
    for (double& a : attractiveness) a = u01();
    std::vector<double> demand(n_re);
    for (double& d : demand)
        d = spec.demand_min + (spec.demand_max - spec.demand_min) * u01();

    double attract_total = 0.0;
    for (double a : attractiveness) attract_total += a;
    std::vector<double> quota(n_dc);
    for (int j = 0; j < n_dc; ++j)
        quota[j] = attract_total > 0.0 ? attractiveness[j] / attract_total : 1.0 / n_dc;

    // Largest-remainder streaming assignment: retailer i goes to the DC whose
    // running count lags its quota the most.
    std::vector<int> assigned_dc(n_re);
    std::vector<int> dc_count(n_dc, 0);
    for (int i = 0; i < n_re; ++i) {
        int best = 0;
        double best_lag = quota[0] * (i + 1) - dc_count[0];
        for (int j = 1; j < n_dc; ++j) {
            double lag = quota[j] * (i + 1) - dc_count[j];
            if (lag > best_lag) {
                best = j;
                best_lag = lag;
            }
        }
        assigned_dc[i] = best;
        ++dc_count[best];
    }

    std::vector<Edge> edges;
    std::vector<double> dc_demand(n_dc, 0.0);
    double total_demand = 0.0;
    for (int i = 0; i < n_re; ++i) {
        edges.push_back({dc_ids[assigned_dc[i]], re_ids[i], Layer::DcRe, demand[i]});
        dc_demand[assigned_dc[i]] += demand[i];
        total_demand += demand[i];
    }

    const double mcap = (total_demand / n_m) * (1.0 + spec.capacity_slack);
    std::vector<double> m_left(n_m, mcap);
    pour(dc_demand, dc_ids, m_left, m_ids, Layer::MDc, true, edges);

    double rcap = 0.0;
    if (n_rm > 0) {
        std::vector<double> dc_return(n_dc, 0.0);
        double total_return = 0.0;
        for (int i = 0; i < n_re; ++i) {
            double back = spec.return_rate * demand[i];
            if (back <= 0.0) continue;
            edges.push_back({re_ids[i], dc_ids[assigned_dc[i]], Layer::ReDc, back});
            dc_return[assigned_dc[i]] += back;
            total_return += back;
        }
        rcap = (total_return / n_rm) * (1.0 + spec.capacity_slack);
        std::vector<std::string> rm_ids(m_ids.begin(), m_ids.begin() + n_rm);
        std::vector<double> rm_left(n_rm, rcap);
        pour(dc_return, dc_ids, rm_left, rm_ids, Layer::DcRm, false, edges);
    }

    std::vector<Facility> facilities;
    for (int i = 0; i < n_m; ++i) {
        Facility f;
        f.id = m_ids[i];
        f.kind = FacilityKind::Manufacturer;
        f.manufacturing_capacity = mcap;
        if (i < n_rm) {
            f.can_remanufacture = true;
            f.remanufacturing_capacity = rcap;
        }
        facilities.push_back(std::move(f));
    }
    for (int i = 0; i < n_dc; ++i)
        facilities.push_back({dc_ids[i], FacilityKind::DistributionCenter, false, std::nullopt,
                              std::nullopt, std::nullopt});
    for (int i = 0; i < n_re; ++i)
        facilities.push_back({re_ids[i], FacilityKind::Retailer, false, std::nullopt, std::nullopt,
                              std::nullopt});

    return ClscNetwork::build(std::move(facilities), std::move(edges), spec.return_rate,
                              spec.single_allocation);
}

} // namespace clsc
