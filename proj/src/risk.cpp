#include "clsc/risk.hpp"

#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace clsc {

using ordered_json = nlohmann::ordered_json;

std::string rule_id(Rule rule) { return "R" + std::to_string(static_cast<int>(rule)); }

std::string rule_name(Rule rule) {
    switch (rule) {
    case Rule::SingleSourceRisk: return "single_source_risk";
    case Rule::FanOutConcentration: return "fan_out_concentration";
    case Rule::FlowConcentration: return "flow_concentration";
    case Rule::LowInvolvement: return "low_involvement";
    case Rule::ImbalancedFlow: return "imbalanced_flow";
    case Rule::CapacitySaturation: return "capacity_saturation";
    case Rule::RedundantCapacity: return "redundant_capacity";
    case Rule::DualRoleCritical: return "dual_role_critical";
    }
    return "?";
}

std::string to_string(Severity s) {
    switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Critical: return "critical";
    }
    return "?";
}

void check(const RiskConfig& cfg) {
    auto bad = [](const std::string& msg) { throw Error(ErrorKind::Schema, "risk config: " + msg); };
    if (!(cfg.share_high > 0.0 && cfg.share_high <= 1.0)) bad("share_high must lie in (0, 1]");
    if (!(cfg.share_low >= 0.0 && cfg.share_low < cfg.share_high))
        bad("share_low must lie in [0, share_high)");
    if (!(cfg.r_low >= 0.0 && cfg.r_low <= 1.0)) bad("r_low must lie in [0, 1]");
    if (cfg.fanout_min < 1) bad("fanout_min must be at least 1");
    if (!(cfg.utilization_eps >= 0.0 && cfg.utilization_eps < 1.0))
        bad("utilization_eps must lie in [0, 1)");
}

RiskConfig parse_risk_config(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("risk config: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Schema, "risk config: top level must be an object");

    RiskConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "fanout_min") {
            if (!value.is_number_integer())
                throw Error(ErrorKind::Schema, "risk config: fanout_min must be an integer");
            cfg.fanout_min = value.get<int>();
            continue;
        }
        double* slot = nullptr;
        if (key == "share_high") slot = &cfg.share_high;
        else if (key == "share_low") slot = &cfg.share_low;
        else if (key == "r_low") slot = &cfg.r_low;
        else if (key == "utilization_eps") slot = &cfg.utilization_eps;
        else throw Error(ErrorKind::Schema, "risk config: unknown key '" + key + "'");
        if (!value.is_number())
            throw Error(ErrorKind::Schema, "risk config: '" + key + "' must be a number");
        *slot = value.get<double>();
    }
    check(cfg);
    return cfg;
}

RiskConfig load_risk_config(const std::filesystem::path& path) {
    return parse_risk_config(detail::read_file(path));
}

namespace {

const char* recommendation(Rule rule) {
    switch (rule) {
    case Rule::SingleSourceRisk:
        return "Contract a second manufacturer for this distribution center so a single supplier "
               "outage cannot cut it off.";
    case Rule::FanOutConcentration:
        return "Many retailers depend on this facility while it is fed by at most one supplier; "
               "add a backup supply line or split the retailer territory.";
    case Rule::FlowConcentration:
        return "This facility carries a dominant share of the layer flow; plan extra capacity, "
               "staffing, and contingency routing.";
    case Rule::LowInvolvement:
        return "Involvement in this layer is marginal; consider consolidating the flow or "
               "repurposing the link.";
    case Rule::ImbalancedFlow:
        return "Flows are strongly skewed toward few partners; rebalancing allocations would "
               "simplify transport planning.";
    case Rule::CapacitySaturation:
        return "Running at capacity leaves no headroom for demand spikes or outages; stagger load "
               "or expand capacity.";
    case Rule::RedundantCapacity:
        return "Spare capacity here can absorb flow rerouted from saturated facilities during "
               "disruptions.";
    case Rule::DualRoleCritical:
        return "Critical in both forward and reverse flows; disruptions propagate through the "
               "whole loop, so monitor closely and add redundancy.";
    }
    return "";
}

Severity severity_of(Rule rule) {
    switch (rule) {
    case Rule::SingleSourceRisk: return Severity::Warning;
    case Rule::FanOutConcentration: return Severity::Critical;
    case Rule::FlowConcentration: return Severity::Critical;
    case Rule::LowInvolvement: return Severity::Info;
    case Rule::ImbalancedFlow: return Severity::Warning;
    case Rule::CapacitySaturation: return Severity::Warning;
    case Rule::RedundantCapacity: return Severity::Info;
    case Rule::DualRoleCritical: return Severity::Critical;
    }
    return Severity::Info;
}

} // namespace

std::vector<Finding> analyze(const std::vector<MetricsRecord>& records, const ClscNetwork& net,
                             const RiskConfig& cfg) {
    check(cfg);

    std::map<std::pair<std::string, Layer>, const MetricsRecord*> by_key;
    for (const MetricsRecord& rec : records) {
        if (!net.has(rec.facility))
            throw Error(ErrorKind::Integrity,
                        "metrics record for unknown facility '" + rec.facility + "'");
        by_key[{rec.facility, rec.layer}] = &rec;
    }
    auto record_of = [&](const std::string& id, Layer layer) -> const MetricsRecord* {
        auto it = by_key.find({id, layer});
        return it == by_key.end() ? nullptr : it->second;
    };

    std::vector<Finding> findings;
    auto emit = [&](Rule rule, const std::string& facility, Layer layer,
                    std::vector<std::pair<std::string, double>> evidence) {
        findings.push_back({facility, layer, rule, severity_of(rule), std::move(evidence),
                            recommendation(rule)});
    };

    for (const MetricsRecord& rec : records) {
        const Facility& f = net.at(rec.facility);
        const bool is_dc = f.kind == FacilityKind::DistributionCenter;

        if (rec.layer == Layer::MDc && is_dc && rec.c_in == 1)
            emit(Rule::SingleSourceRisk, rec.facility, rec.layer,
                 {{"c_in", 1.0}});

        if (rec.layer == Layer::DcRe && is_dc && rec.c_out >= cfg.fanout_min) {
            const MetricsRecord* supply = record_of(rec.facility, Layer::MDc);
            int suppliers = supply ? supply->c_in : 0;
            if (suppliers <= 1)
                emit(Rule::FanOutConcentration, rec.facility, rec.layer,
                     {{"c_out", static_cast<double>(rec.c_out)},
                      {"c_in", static_cast<double>(suppliers)},
                      {"fanout_min", static_cast<double>(cfg.fanout_min)}});
        }

        if (is_dc) {
            std::vector<std::pair<std::string, double>> evidence;
            if (rec.share_in >= cfg.share_high) evidence.emplace_back("share_in", rec.share_in);
            if (rec.share_out >= cfg.share_high) evidence.emplace_back("share_out", rec.share_out);
            if (!evidence.empty()) {
                evidence.emplace_back("share_high", cfg.share_high);
                emit(Rule::FlowConcentration, rec.facility, rec.layer, std::move(evidence));
            }
        }

        {
            std::vector<std::pair<std::string, double>> evidence;
            if (rec.share_in > 0.0 && rec.share_in <= cfg.share_low)
                evidence.emplace_back("share_in", rec.share_in);
            if (rec.share_out > 0.0 && rec.share_out <= cfg.share_low)
                evidence.emplace_back("share_out", rec.share_out);
            if (!evidence.empty()) {
                evidence.emplace_back("share_low", cfg.share_low);
                emit(Rule::LowInvolvement, rec.facility, rec.layer, std::move(evidence));
            }
        }

        {
            std::vector<std::pair<std::string, double>> evidence;
            if (rec.r_absorb && *rec.r_absorb <= cfg.r_low)
                evidence.emplace_back("r_absorb", *rec.r_absorb);
            if (rec.r_disperse && *rec.r_disperse <= cfg.r_low)
                evidence.emplace_back("r_disperse", *rec.r_disperse);
            if (!evidence.empty()) {
                evidence.emplace_back("r_low", cfg.r_low);
                emit(Rule::ImbalancedFlow, rec.facility, rec.layer, std::move(evidence));
            }
        }
    }

    auto utilization = [](double flow, double capacity) {
        if (capacity > 0.0) return flow / capacity;
        return flow > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    };

    for (const Facility* f : net.of_kind(FacilityKind::Manufacturer)) {
        if (f->manufacturing_capacity) {
            if (const MetricsRecord* rec = record_of(f->id, Layer::MDc)) {
                double util = utilization(rec->s_out, *f->manufacturing_capacity);
                std::vector<std::pair<std::string, double>> evidence = {
                    {"utilization", util}, {"capacity", *f->manufacturing_capacity}};
                if (util >= 1.0 - cfg.utilization_eps)
                    emit(Rule::CapacitySaturation, f->id, Layer::MDc, std::move(evidence));
                else
                    emit(Rule::RedundantCapacity, f->id, Layer::MDc, std::move(evidence));
            }
        }
        if (f->remanufacturing_capacity) {
            if (const MetricsRecord* rec = record_of(f->id, Layer::DcRm)) {
                double util = utilization(rec->s_in, *f->remanufacturing_capacity);
                if (util >= 1.0 - cfg.utilization_eps)
                    emit(Rule::CapacitySaturation, f->id, Layer::DcRm,
                         {{"utilization", util}, {"capacity", *f->remanufacturing_capacity}});
            }
        }
    }

    std::map<std::string, int> forward_hits, reverse_hits;
    std::map<std::string, Layer> forward_layer;
    for (const Finding& f : findings) {
        if (f.rule != Rule::FanOutConcentration && f.rule != Rule::FlowConcentration &&
            f.rule != Rule::CapacitySaturation)
            continue;
        if (is_forward(f.layer)) {
            ++forward_hits[f.facility];
            auto it = forward_layer.find(f.facility);
            if (it == forward_layer.end() || f.layer < it->second) forward_layer[f.facility] = f.layer;
        } else {
            ++reverse_hits[f.facility];
        }
    }
    for (const auto& [id, nf] : forward_hits) {
        auto it = reverse_hits.find(id);
        if (it == reverse_hits.end()) continue;
        emit(Rule::DualRoleCritical, id, forward_layer.at(id),
             {{"forward_hits", static_cast<double>(nf)},
              {"reverse_hits", static_cast<double>(it->second)}});
    }

    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.rule, a.layer, a.facility) < std::tie(b.rule, b.layer, b.facility);
    });
    return findings;
}

} // namespace clsc
