#include "clsc/network.hpp"

#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>

namespace clsc {

using ordered_json = nlohmann::ordered_json;

std::string to_string(FacilityKind kind) {
    switch (kind) {
    case FacilityKind::Manufacturer: return "manufacturer";
    case FacilityKind::DistributionCenter: return "distribution_center";
    case FacilityKind::Retailer: return "retailer";
    }
    return "?";
}

std::string to_string(Layer layer) {
    switch (layer) {
    case Layer::MDc: return "m_dc";
    case Layer::DcRe: return "dc_re";
    case Layer::ReDc: return "re_dc";
    case Layer::DcRm: return "dc_rm";
    }
    return "?";
}

FacilityKind facility_kind_from_string(const std::string& s) {
    if (s == "manufacturer") return FacilityKind::Manufacturer;
    if (s == "distribution_center") return FacilityKind::DistributionCenter;
    if (s == "retailer") return FacilityKind::Retailer;
    throw Error(ErrorKind::Schema, "unknown facility kind '" + s + "'");
}

Layer layer_from_string(const std::string& s) {
    if (s == "m_dc") return Layer::MDc;
    if (s == "dc_re") return Layer::DcRe;
    if (s == "re_dc") return Layer::ReDc;
    if (s == "dc_rm") return Layer::DcRm;
    throw Error(ErrorKind::Schema, "unknown layer '" + s + "'");
}

bool is_forward(Layer layer) { return layer == Layer::MDc || layer == Layer::DcRe; }

FacilityKind layer_source_kind(Layer layer) {
    switch (layer) {
    case Layer::MDc: return FacilityKind::Manufacturer;
    case Layer::DcRe: return FacilityKind::DistributionCenter;
    case Layer::ReDc: return FacilityKind::Retailer;
    case Layer::DcRm: return FacilityKind::DistributionCenter;
    }
    return FacilityKind::Manufacturer;
}

FacilityKind layer_target_kind(Layer layer) {
    switch (layer) {
    case Layer::MDc: return FacilityKind::DistributionCenter;
    case Layer::DcRe: return FacilityKind::Retailer;
    case Layer::ReDc: return FacilityKind::DistributionCenter;
    case Layer::DcRm: return FacilityKind::Manufacturer;
    }
    return FacilityKind::Manufacturer;
}

namespace {

using detail::num_str;

[[noreturn]] void integrity(const std::string& msg) { throw Error(ErrorKind::Integrity, msg); }

} // namespace

ClscNetwork ClscNetwork::build(std::vector<Facility> facilities, std::vector<Edge> edges,
                               std::optional<double> return_rate, bool single_allocation) {
    ClscNetwork net;

    std::sort(facilities.begin(), facilities.end(),
              [](const Facility& a, const Facility& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < facilities.size(); ++i) {
        const Facility& f = facilities[i];
        if (f.id.empty()) integrity("facility with empty id");
        if (!net.index_.emplace(f.id, i).second) integrity("duplicate facility id '" + f.id + "'");
        if (f.can_remanufacture && f.kind != FacilityKind::Manufacturer)
            integrity("facility '" + f.id + "': only manufacturers can remanufacture");
        if (f.manufacturing_capacity.has_value() != (f.kind == FacilityKind::Manufacturer))
            integrity("facility '" + f.id +
                      "': manufacturing_capacity goes with the manufacturer kind, both or neither");
        if (f.remanufacturing_capacity.has_value() != f.can_remanufacture)
            integrity("facility '" + f.id +
                      "': remanufacturing_capacity goes with can_remanufacture, both or neither");
        if (f.manufacturing_capacity && !(*f.manufacturing_capacity >= 0))
            integrity("facility '" + f.id + "': manufacturing_capacity must be nonnegative");
        if (f.remanufacturing_capacity && !(*f.remanufacturing_capacity >= 0))
            integrity("facility '" + f.id + "': remanufacturing_capacity must be nonnegative");
    }

    if (return_rate && !(*return_rate >= 0.0 && *return_rate <= 1.0))
        integrity("return_rate must lie in [0, 1]");

    auto edge_name = [](const Edge& e) {
        return "edge " + e.from + " -> " + e.to + " [" + to_string(e.layer) + "]";
    };

    std::set<std::tuple<int, std::string, std::string>> seen;
    for (const Edge& e : edges) {
        auto from_it = net.index_.find(e.from);
        auto to_it = net.index_.find(e.to);
        if (from_it == net.index_.end())
            integrity(edge_name(e) + ": unknown facility '" + e.from + "'");
        if (to_it == net.index_.end())
            integrity(edge_name(e) + ": unknown facility '" + e.to + "'");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            integrity(edge_name(e) + ": weight must be a positive finite number, got " +
                      num_str(e.weight));
        const Facility& from = facilities[from_it->second];
        const Facility& to = facilities[to_it->second];
        if (from.kind != layer_source_kind(e.layer))
            integrity(edge_name(e) + ": source must be a " +
                      to_string(layer_source_kind(e.layer)));
        if (to.kind != layer_target_kind(e.layer))
            integrity(edge_name(e) + ": target must be a " + to_string(layer_target_kind(e.layer)));
        if (e.layer == Layer::DcRm && !to.can_remanufacture)
            integrity(edge_name(e) + ": target cannot remanufacture");
        if (!seen.emplace(static_cast<int>(e.layer), e.from, e.to).second)
            integrity("duplicate " + edge_name(e));
    }

    if (single_allocation) {
        std::map<std::string, int> fwd_in, rev_out;
        for (const Edge& e : edges) {
            if (e.layer == Layer::DcRe && ++fwd_in[e.to] > 1)
                integrity("single allocation: retailer '" + e.to +
                          "' takes supplies from more than one distribution center");
            if (e.layer == Layer::ReDc && ++rev_out[e.from] > 1)
                integrity("single allocation: retailer '" + e.from +
                          "' returns to more than one distribution center");
        }
    }

    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.layer, a.from, a.to) < std::tie(b.layer, b.from, b.to);
    });

    net.facilities_ = std::move(facilities);
    net.edges_ = std::move(edges);
    net.return_rate_ = return_rate;
    net.single_allocation_ = single_allocation;
    return net;
}

bool ClscNetwork::has(const std::string& id) const { return index_.count(id) != 0; }

const Facility& ClscNetwork::at(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) integrity("unknown facility '" + id + "'");
    return facilities_[it->second];
}

std::vector<const Facility*> ClscNetwork::of_kind(FacilityKind kind) const {
    std::vector<const Facility*> out;
    for (const Facility& f : facilities_)
        if (f.kind == kind) out.push_back(&f);
    return out;
}

std::vector<Edge> ClscNetwork::edges_in_layer(Layer layer) const {
    std::vector<Edge> out;
    for (const Edge& e : edges_)
        if (e.layer == layer) out.push_back(e);
    return out;
}

namespace {

const ordered_json* field(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
}

std::string require_string(const ordered_json& obj, const char* key, const char* what) {
    const ordered_json* v = field(obj, key);
    if (!v) throw Error(ErrorKind::Schema, std::string(what) + ": missing field '" + key + "'");
    if (!v->is_string())
        throw Error(ErrorKind::Schema, std::string(what) + ": field '" + key + "' must be a string");
    return v->get<std::string>();
}

double require_number(const ordered_json& obj, const char* key, const char* what) {
    const ordered_json* v = field(obj, key);
    if (!v) throw Error(ErrorKind::Schema, std::string(what) + ": missing field '" + key + "'");
    if (!v->is_number())
        throw Error(ErrorKind::Schema, std::string(what) + ": field '" + key + "' must be a number");
    return v->get<double>();
}

std::optional<double> optional_number(const ordered_json& obj, const char* key, const char* what) {
    const ordered_json* v = field(obj, key);
    if (!v) return std::nullopt;
    if (!v->is_number())
        throw Error(ErrorKind::Schema,
                    std::string(what) + ": field '" + key + "' must be a number or null");
    return v->get<double>();
}

bool optional_bool(const ordered_json& obj, const char* key, bool fallback, const char* what) {
    const ordered_json* v = field(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean())
        throw Error(ErrorKind::Schema, std::string(what) + ": field '" + key + "' must be a bool");
    return v->get<bool>();
}

ordered_json parse_json(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
    }
}

} // namespace

ClscNetwork load_network_json(const std::string& text) {
    ordered_json doc = parse_json(text, "network file");
    if (!doc.is_object()) throw Error(ErrorKind::Schema, "network file: top level must be an object");
    const ordered_json* jfac = field(doc, "facilities");
    const ordered_json* jedg = field(doc, "edges");
    if (!jfac || !jfac->is_array())
        throw Error(ErrorKind::Schema, "network file: 'facilities' must be an array");
    if (!jedg || !jedg->is_array())
        throw Error(ErrorKind::Schema, "network file: 'edges' must be an array");

    std::vector<Facility> facilities;
    facilities.reserve(jfac->size());
    for (const ordered_json& j : *jfac) {
        if (!j.is_object()) throw Error(ErrorKind::Schema, "facility entries must be objects");
        Facility f;
        f.id = require_string(j, "id", "facility");
        f.kind = facility_kind_from_string(require_string(j, "kind", "facility"));
        f.can_remanufacture = optional_bool(j, "can_remanufacture", false, "facility");
        f.manufacturing_capacity = optional_number(j, "manufacturing_capacity", "facility");
        f.remanufacturing_capacity = optional_number(j, "remanufacturing_capacity", "facility");
        if (const ordered_json* v = field(j, "label")) {
            if (!v->is_string())
                throw Error(ErrorKind::Schema, "facility: field 'label' must be a string or null");
            f.label = v->get<std::string>();
        }
        facilities.push_back(std::move(f));
    }

    std::vector<Edge> edges;
    edges.reserve(jedg->size());
    for (const ordered_json& j : *jedg) {
        if (!j.is_object()) throw Error(ErrorKind::Schema, "edge entries must be objects");
        Edge e;
        e.from = require_string(j, "from", "edge");
        e.to = require_string(j, "to", "edge");
        e.layer = layer_from_string(require_string(j, "layer", "edge"));
        e.weight = require_number(j, "weight", "edge");
        edges.push_back(std::move(e));
    }

    std::optional<double> rate = optional_number(doc, "return_rate", "network file");
    bool single = optional_bool(doc, "single_allocation", false, "network file");
    return ClscNetwork::build(std::move(facilities), std::move(edges), rate, single);
}

ClscNetwork load_network_json_file(const std::filesystem::path& path) {
    return load_network_json(detail::read_file(path));
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text, std::size_t columns,
                                                const std::string& header, const char* what) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            first = false;
            std::string got;
            for (std::size_t i = 0; i < cells.size(); ++i) got += (i ? "," : "") + cells[i];
            if (got != header)
                throw Error(ErrorKind::Schema, std::string(what) + ": expected header '" + header +
                                                   "', got '" + got + "'");
            continue;
        }
        if (cells.size() != columns)
            throw Error(ErrorKind::Parse, std::string(what) + " line " + std::to_string(lineno) +
                                              ": expected " + std::to_string(columns) +
                                              " cells, got " + std::to_string(cells.size()));
        rows.push_back(std::move(cells));
    }
    if (first) throw Error(ErrorKind::Schema, std::string(what) + ": missing header row");
    return rows;
}

double parse_double_cell(const std::string& cell, const char* what) {
    double v = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(ErrorKind::Parse, std::string(what) + ": bad number '" + cell + "'");
    return v;
}

bool parse_bool_cell(const std::string& cell, const char* what) {
    if (cell == "true" || cell == "1") return true;
    if (cell == "false" || cell == "0") return false;
    throw Error(ErrorKind::Parse, std::string(what) + ": bad bool '" + cell + "'");
}

} // namespace

ClscNetwork load_network_csv(const std::string& facilities_csv, const std::string& edges_csv,
                             std::optional<double> return_rate, bool single_allocation) {
    std::vector<Facility> facilities;
    for (const auto& row : parse_csv(facilities_csv, 5,
                                     "id,kind,can_remanufacture,manufacturing_capacity,"
                                     "remanufacturing_capacity",
                                     "facilities csv")) {
        Facility f;
        f.id = row[0];
        f.kind = facility_kind_from_string(row[1]);
        f.can_remanufacture = parse_bool_cell(row[2], "facilities csv");
        if (!row[3].empty()) f.manufacturing_capacity = parse_double_cell(row[3], "facilities csv");
        if (!row[4].empty())
            f.remanufacturing_capacity = parse_double_cell(row[4], "facilities csv");
        facilities.push_back(std::move(f));
    }

    std::vector<Edge> edges;
    for (const auto& row : parse_csv(edges_csv, 4, "from,to,layer,weight", "edges csv")) {
        Edge e;
        e.from = row[0];
        e.to = row[1];
        e.layer = layer_from_string(row[2]);
        e.weight = parse_double_cell(row[3], "edges csv");
        edges.push_back(std::move(e));
    }

    return ClscNetwork::build(std::move(facilities), std::move(edges), return_rate,
                              single_allocation);
}

ClscNetwork load_network_csv_files(const std::filesystem::path& facilities_path,
                                   const std::filesystem::path& edges_path,
                                   std::optional<double> return_rate, bool single_allocation) {
    return load_network_csv(detail::read_file(facilities_path), detail::read_file(edges_path),
                            return_rate, single_allocation);
}

namespace {

// Integral weights round-trip as integers so the canonical file has no stray
// ".0" noise.
ordered_json number_json(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15)
        return ordered_json(static_cast<std::int64_t>(v));
    return ordered_json(v);
}

ordered_json optional_number_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return number_json(*v);
}

} // namespace

std::string serialize_network_json(const ClscNetwork& net) {
    ordered_json doc;
    doc["facilities"] = ordered_json::array();
    for (const Facility& f : net.facilities()) {
        ordered_json j;
        j["id"] = f.id;
        j["kind"] = to_string(f.kind);
        j["can_remanufacture"] = f.can_remanufacture;
        j["manufacturing_capacity"] = optional_number_json(f.manufacturing_capacity);
        j["remanufacturing_capacity"] = optional_number_json(f.remanufacturing_capacity);
        j["label"] = f.label ? ordered_json(*f.label) : ordered_json(nullptr);
        doc["facilities"].push_back(std::move(j));
    }
    doc["edges"] = ordered_json::array();
    for (const Edge& e : net.edges()) {
        ordered_json j;
        j["from"] = e.from;
        j["to"] = e.to;
        j["layer"] = to_string(e.layer);
        j["weight"] = number_json(e.weight);
        doc["edges"].push_back(std::move(j));
    }
    doc["return_rate"] = optional_number_json(net.return_rate());
    doc["single_allocation"] = net.single_allocation();
    return doc.dump(2) + "\n";
}

namespace {

struct Strengths {
    // facility id -> ascending incident weights, per direction
    std::map<std::string, std::vector<double>> in, out;
};

Strengths layer_strengths(const ClscNetwork& net, Layer layer) {
    Strengths s;
    for (const Edge& e : net.edges()) {
        if (e.layer != layer) continue;
        s.out[e.from].push_back(e.weight);
        s.in[e.to].push_back(e.weight);
    }
    for (auto* side : {&s.in, &s.out})
        for (auto& [id, w] : *side) std::sort(w.begin(), w.end());
    return s;
}

double sum(const std::map<std::string, std::vector<double>>& side, const std::string& id) {
    auto it = side.find(id);
    if (it == side.end()) return 0.0;
    double total = 0;
    for (double w : it->second) total += w;
    return total;
}

} // namespace

ValidationReport validate_flows(const ClscNetwork& net, const FlowTolerances& tol) {
    ValidationReport report;
    auto violation = [&](std::string code, const std::string& subject, std::string message,
                         double measured, double expected) {
        report.violations.push_back(
            {std::move(code), subject, std::move(message), measured, expected});
    };

    Strengths m_dc = layer_strengths(net, Layer::MDc);
    Strengths dc_re = layer_strengths(net, Layer::DcRe);
    Strengths re_dc = layer_strengths(net, Layer::ReDc);
    Strengths dc_rm = layer_strengths(net, Layer::DcRm);

    for (const Facility& f : net.facilities()) {
        if (f.kind != FacilityKind::DistributionCenter) continue;
        double in = sum(m_dc.in, f.id);
        double out = sum(dc_re.out, f.id);
        if (std::abs(in - out) > tol.conservation_abs)
            violation("dc_forward_conservation", f.id,
                      "forward in-strength " + num_str(in) + " vs out-strength " + num_str(out),
                      std::abs(in - out), tol.conservation_abs);
    }

    for (const Facility& f : net.facilities()) {
        if (f.kind != FacilityKind::DistributionCenter) continue;
        double in = sum(re_dc.in, f.id);
        double out = sum(dc_rm.out, f.id);
        if (std::abs(in - out) > tol.conservation_abs)
            violation("dc_reverse_conservation", f.id,
                      "reverse in-strength " + num_str(in) + " vs out-strength " + num_str(out),
                      std::abs(in - out), tol.conservation_abs);
    }

    if (net.return_rate()) {
        double rate = *net.return_rate();
        for (const Facility& f : net.facilities()) {
            if (f.kind != FacilityKind::Retailer) continue;
            double expected = rate * sum(dc_re.in, f.id);
            double actual = sum(re_dc.out, f.id);
            double window = tol.return_rate_rel * expected;
            if (std::abs(actual - expected) > window)
                violation("retailer_return_rate", f.id,
                          "reverse out-strength " + num_str(actual) + " vs expected " +
                              num_str(expected),
                          std::abs(actual - expected), window);
        }
    }

    for (const Facility& f : net.facilities()) {
        if (!f.manufacturing_capacity) continue;
        double out = sum(m_dc.out, f.id);
        // small absolute headroom so float dust at exact capacity never trips
        if (out > *f.manufacturing_capacity + tol.conservation_abs)
            violation("manufacturing_capacity_exceeded", f.id,
                      "forward out-strength " + num_str(out) + " above capacity " +
                          num_str(*f.manufacturing_capacity),
                      out, *f.manufacturing_capacity);
    }

    for (const Facility& f : net.facilities()) {
        if (!f.remanufacturing_capacity) continue;
        double in = sum(dc_rm.in, f.id);
        if (in > *f.remanufacturing_capacity + tol.conservation_abs)
            violation("remanufacturing_capacity_exceeded", f.id,
                      "reverse in-strength " + num_str(in) + " above capacity " +
                          num_str(*f.remanufacturing_capacity),
                      in, *f.remanufacturing_capacity);
    }

    return report;
}

} // namespace clsc
