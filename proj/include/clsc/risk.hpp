#pragma once

#include "clsc/metrics.hpp"
#include "clsc/network.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace clsc {

struct RiskConfig {
    double share_high = 0.30;      // dominant share of a layer's flow
    double share_low = 0.02;       // marginal involvement
    double r_low = 0.60;           // skewed-flow ceiling on the reducing factor
    int fanout_min = 7;            // retailer fan-out that needs supply backup
    double utilization_eps = 0.005; // slack treated as "at capacity"
};

// JSON object with any subset of the five threshold fields. Unknown keys are
// rejected so typos do not silently fall back to defaults.
RiskConfig parse_risk_config(const std::string& text);
RiskConfig load_risk_config(const std::filesystem::path& path);
// Throws Error(Schema) when thresholds are out of range.
void check(const RiskConfig& cfg);

enum class Rule {
    SingleSourceRisk = 1, // R1
    FanOutConcentration,  // R2
    FlowConcentration,    // R3
    LowInvolvement,       // R4
    ImbalancedFlow,       // R5
    CapacitySaturation,   // R6
    RedundantCapacity,    // R7
    DualRoleCritical,     // R8
};

std::string rule_id(Rule rule);   // "R1".."R8"
std::string rule_name(Rule rule); // "single_source_risk"...

enum class Severity { Info, Warning, Critical };
std::string to_string(Severity s);

struct Finding {
    std::string facility;
    Layer layer = Layer::MDc;
    Rule rule = Rule::SingleSourceRisk;
    Severity severity = Severity::Info;
    // (metric name, value) pairs; metric values are copied verbatim from the
    // records, and each threshold used in the comparison is recorded too.
    std::vector<std::pair<std::string, double>> evidence;
    std::string recommendation;
};

// Rule engine over the metric records:
//   R1 single_source_risk (warning): DC fed by exactly one manufacturer.
//   R2 fan_out_concentration (critical): DC serving >= fanout_min retailers
//      while fed by at most one manufacturer.
//   R3 flow_concentration (critical): DC holding >= share_high of a layer.
//   R4 low_involvement (info): a positive share at or below share_low.
//   R5 imbalanced_flow (warning): a defined reducing factor at or below r_low.
//   R6 capacity_saturation (warning): manufacturing or remanufacturing flow
//      at >= (1 - utilization_eps) of capacity.
//   R7 redundant_capacity (info): manufacturing utilization below that line.
//   R8 dual_role_critical (critical): R2/R3/R6 hits in both a forward and a
//      reverse layer for the same facility.
// Output is sorted by (rule, layer, facility). Throws Error(Integrity) when a
// record names a facility the network lacks.
std::vector<Finding> analyze(const std::vector<MetricsRecord>& records, const ClscNetwork& net,
                             const RiskConfig& cfg = {});

} // namespace clsc
