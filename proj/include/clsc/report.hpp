#pragma once

#include "clsc/metrics.hpp"
#include "clsc/network.hpp"
#include "clsc/risk.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace clsc {

enum class MetricsFormat { TableText, Csv, Json };

// Columns: facility, layer, c_in, s_in, r_absorb, c_out, s_out, r_disperse,
// share_in, share_out. Reducing factors render at two decimals with the
// literal NA when undefined; CSV and JSON additionally carry them at full
// precision so parse(render(x)) == x.
std::string render_metrics(const std::vector<MetricsRecord>& records, MetricsFormat format);

std::vector<MetricsRecord> parse_metrics_csv(const std::string& text);
std::vector<MetricsRecord> parse_metrics_json(const std::string& text);

enum class FlowDirection { Forward, Reverse };

// DOT digraph of the two layers of one direction. Node shape marks the kind
// (box manufacturer, ellipse DC, point retailer); penwidth maps weight
// linearly onto [0.5, 4.5] against the max weight of the rendered layers.
// Only facilities incident to a rendered edge appear, sorted by id.
std::string render_dot(const ClscNetwork& net, FlowDirection direction);

// facility,layer,direction,x,y with one row per curve point.
std::string render_curves_csv(const std::map<CurveKey, CumulativeCurve>& curves);

std::string render_findings_json(const std::vector<Finding>& findings,
                                 const ValidationReport& validation, bool validation_dirty);
std::string render_findings_markdown(const std::vector<Finding>& findings,
                                     const ValidationReport& validation, bool validation_dirty);

struct ReportBundle {
    std::vector<MetricsRecord> metrics;
    std::vector<Finding> findings;
    ValidationReport validation;
    std::map<CurveKey, CumulativeCurve> curves;
    bool validation_dirty = false;
};

ReportBundle make_report_bundle(const ClscNetwork& net, const RiskConfig& cfg = {},
                                bool validation_dirty = false);

// Writes metrics.csv, metrics.json, findings.json, findings.md, forward.dot,
// reverse.dot, and curves.csv under dir, creating it if needed. Byte output
// is deterministic for identical inputs. Throws Error(Io) on write failure.
void write_report_bundle(const ReportBundle& bundle, const ClscNetwork& net,
                         const std::filesystem::path& dir);

} // namespace clsc
