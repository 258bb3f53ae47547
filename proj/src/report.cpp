#include "clsc/report.hpp"

#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <system_error>

namespace clsc {

using ordered_json = nlohmann::ordered_json;
using detail::fixed;
using detail::num_str;

namespace {

std::string round2(const std::optional<double>& r) { return r ? fixed(*r, 2) : "NA"; }
std::string full(const std::optional<double>& r) { return r ? num_str(*r) : "NA"; }

const char* const kMetricsColumns[] = {"facility", "layer",      "c_in",     "s_in",
                                       "r_absorb", "c_out",      "s_out",    "r_disperse",
                                       "share_in", "share_out"};

std::vector<std::string> table_cells(const MetricsRecord& rec) {
    return {rec.facility,
            to_string(rec.layer),
            std::to_string(rec.c_in),
            num_str(rec.s_in),
            round2(rec.r_absorb),
            std::to_string(rec.c_out),
            num_str(rec.s_out),
            round2(rec.r_disperse),
            fixed(rec.share_in, 4),
            fixed(rec.share_out, 4)};
}

std::string render_table_text(const std::vector<MetricsRecord>& records) {
    constexpr std::size_t n = std::size(kMetricsColumns);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size() + 1);
    rows.emplace_back(kMetricsColumns, kMetricsColumns + n);
    for (const MetricsRecord& rec : records) rows.push_back(table_cells(rec));

    std::size_t width[n] = {};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < n; ++c) width[c] = std::max(width[c], row[c].size());

    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < n; ++c) {
            std::string cell = row[c];
            bool left = c < 2; // facility and layer columns
            if (!left) cell.insert(0, width[c] - cell.size(), ' ');
            else if (c + 1 < n) cell.append(width[c] - cell.size(), ' ');
            out += cell;
            if (c + 1 < n) out += "  ";
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    return out;
}

const char kMetricsCsvHeader[] = "facility,layer,c_in,s_in,r_absorb,c_out,s_out,r_disperse,"
                                 "share_in,share_out,r_absorb_2dp,r_disperse_2dp";

std::string render_csv(const std::vector<MetricsRecord>& records) {
    std::string out = kMetricsCsvHeader;
    out += '\n';
    for (const MetricsRecord& rec : records) {
        out += rec.facility;
        out += ',' + to_string(rec.layer);
        out += ',' + std::to_string(rec.c_in);
        out += ',' + num_str(rec.s_in);
        out += ',' + full(rec.r_absorb);
        out += ',' + std::to_string(rec.c_out);
        out += ',' + num_str(rec.s_out);
        out += ',' + full(rec.r_disperse);
        out += ',' + num_str(rec.share_in);
        out += ',' + num_str(rec.share_out);
        out += ',' + round2(rec.r_absorb);
        out += ',' + round2(rec.r_disperse);
        out += '\n';
    }
    return out;
}

ordered_json optional_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string render_json(const std::vector<MetricsRecord>& records) {
    ordered_json doc = ordered_json::array();
    for (const MetricsRecord& rec : records) {
        ordered_json j;
        j["facility"] = rec.facility;
        j["layer"] = to_string(rec.layer);
        j["c_in"] = rec.c_in;
        j["s_in"] = rec.s_in;
        j["r_absorb"] = optional_json(rec.r_absorb);
        j["c_out"] = rec.c_out;
        j["s_out"] = rec.s_out;
        j["r_disperse"] = optional_json(rec.r_disperse);
        j["share_in"] = rec.share_in;
        j["share_out"] = rec.share_out;
        j["r_absorb_2dp"] = round2(rec.r_absorb);
        j["r_disperse_2dp"] = round2(rec.r_disperse);
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

} // namespace

std::string render_metrics(const std::vector<MetricsRecord>& records, MetricsFormat format) {
    switch (format) {
    case MetricsFormat::TableText: return render_table_text(records);
    case MetricsFormat::Csv: return render_csv(records);
    case MetricsFormat::Json: return render_json(records);
    }
    return {};
}

namespace {

double parse_double(const std::string& cell, const char* what) {
    double v = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(ErrorKind::Parse, std::string(what) + ": bad number '" + cell + "'");
    return v;
}

int parse_int(const std::string& cell, const char* what) {
    int v = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(ErrorKind::Parse, std::string(what) + ": bad integer '" + cell + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& cell, const char* what) {
    if (cell == "NA") return std::nullopt;
    return parse_double(cell, what);
}

} // namespace

std::vector<MetricsRecord> parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<MetricsRecord> records;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            first = false;
            if (line != kMetricsCsvHeader)
                throw Error(ErrorKind::Schema, "metrics csv: unexpected header '" + line + "'");
            continue;
        }
        if (cells.size() != 12)
            throw Error(ErrorKind::Parse,
                        "metrics csv: expected 12 cells, got " + std::to_string(cells.size()));
        MetricsRecord rec;
        rec.facility = cells[0];
        rec.layer = layer_from_string(cells[1]);
        rec.c_in = parse_int(cells[2], "metrics csv");
        rec.s_in = parse_double(cells[3], "metrics csv");
        rec.r_absorb = parse_optional(cells[4], "metrics csv");
        rec.c_out = parse_int(cells[5], "metrics csv");
        rec.s_out = parse_double(cells[6], "metrics csv");
        rec.r_disperse = parse_optional(cells[7], "metrics csv");
        rec.share_in = parse_double(cells[8], "metrics csv");
        rec.share_out = parse_double(cells[9], "metrics csv");
        records.push_back(std::move(rec));
    }
    if (first) throw Error(ErrorKind::Schema, "metrics csv: missing header row");
    return records;
}

std::vector<MetricsRecord> parse_metrics_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("metrics json: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::Schema, "metrics json: top level must be an array");
    std::vector<MetricsRecord> records;
    for (const ordered_json& j : doc) {
        if (!j.is_object()) throw Error(ErrorKind::Schema, "metrics json: entries must be objects");
        auto number = [&](const char* key) {
            if (!j.contains(key) || !j.at(key).is_number())
                throw Error(ErrorKind::Schema,
                            std::string("metrics json: field '") + key + "' must be a number");
            return j.at(key).get<double>();
        };
        if (!j.contains("facility") || !j.at("facility").is_string() || !j.contains("layer") ||
            !j.at("layer").is_string())
            throw Error(ErrorKind::Schema, "metrics json: 'facility' and 'layer' must be strings");
        MetricsRecord rec;
        rec.facility = j.at("facility").get<std::string>();
        rec.layer = layer_from_string(j.at("layer").get<std::string>());
        rec.c_in = static_cast<int>(number("c_in"));
        rec.s_in = number("s_in");
        if (j.contains("r_absorb") && !j.at("r_absorb").is_null())
            rec.r_absorb = j.at("r_absorb").get<double>();
        rec.c_out = static_cast<int>(number("c_out"));
        rec.s_out = number("s_out");
        if (j.contains("r_disperse") && !j.at("r_disperse").is_null())
            rec.r_disperse = j.at("r_disperse").get<double>();
        rec.share_in = number("share_in");
        rec.share_out = number("share_out");
        records.push_back(std::move(rec));
    }
    return records;
}

std::string render_dot(const ClscNetwork& net, FlowDirection direction) {
    const bool forward = direction == FlowDirection::Forward;
    const Layer layers[2] = {forward ? Layer::MDc : Layer::ReDc,
                             forward ? Layer::DcRe : Layer::DcRm};

    std::vector<Edge> edges;
    for (const Edge& e : net.edges())
        if (e.layer == layers[0] || e.layer == layers[1]) edges.push_back(e);

    double max_weight = 0.0;
    std::set<std::string> nodes;
    for (const Edge& e : edges) {
        max_weight = std::max(max_weight, e.weight);
        nodes.insert(e.from);
        nodes.insert(e.to);
    }

    std::string out = forward ? "digraph clsc_forward {\n" : "digraph clsc_reverse {\n";
    out += "  rankdir=LR;\n";
    for (const std::string& id : nodes) {
        const Facility& f = net.at(id);
        const char* shape = f.kind == FacilityKind::Manufacturer ? "box"
                            : f.kind == FacilityKind::DistributionCenter ? "ellipse"
                                                                         : "point";
        out += "  \"" + id + "\" [shape=" + shape;
        if (f.label) out += ", label=\"" + *f.label + "\"";
        out += "];\n";
    }
    for (const Edge& e : edges) {
        double penwidth = 0.5 + 4.0 * (e.weight / max_weight);
        out += "  \"" + e.from + "\" -> \"" + e.to + "\" [penwidth=" + fixed(penwidth, 3) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string render_curves_csv(const std::map<CurveKey, CumulativeCurve>& curves) {
    std::string out = "facility,layer,direction,x,y\n";
    for (const auto& [key, curve] : curves) {
        const std::string prefix =
            key.facility + ',' + to_string(key.layer) + ',' + to_string(key.direction) + ',';
        for (Eigen::Index i = 0; i < curve.x.size(); ++i)
            out += prefix + num_str(curve.x[i]) + ',' + num_str(curve.y[i]) + '\n';
    }
    return out;
}

namespace {

ordered_json violations_json(const ValidationReport& validation) {
    ordered_json arr = ordered_json::array();
    for (const Violation& v : validation.violations) {
        ordered_json j;
        j["code"] = v.code;
        j["subject"] = v.subject;
        j["message"] = v.message;
        j["measured"] = v.measured;
        j["expected"] = v.expected;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace

std::string render_findings_json(const std::vector<Finding>& findings,
                                 const ValidationReport& validation, bool validation_dirty) {
    ordered_json doc;
    doc["validation_dirty"] = validation_dirty;
    doc["violations"] = violations_json(validation);
    doc["findings"] = ordered_json::array();
    for (const Finding& f : findings) {
        ordered_json j;
        j["facility"] = f.facility;
        j["layer"] = to_string(f.layer);
        j["rule"] = rule_id(f.rule);
        j["name"] = rule_name(f.rule);
        j["severity"] = to_string(f.severity);
        j["evidence"] = ordered_json::array();
        for (const auto& [metric, value] : f.evidence) {
            ordered_json e;
            e["metric"] = metric;
            e["value"] = value;
            j["evidence"].push_back(std::move(e));
        }
        j["recommendation"] = f.recommendation;
        doc["findings"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string display_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) return num_str(v);
    return fixed(v, 4);
}

} // namespace

std::string render_findings_markdown(const std::vector<Finding>& findings,
                                     const ValidationReport& validation, bool validation_dirty) {
    int critical = 0, warning = 0, info = 0;
    for (const Finding& f : findings) {
        if (f.severity == Severity::Critical) ++critical;
        else if (f.severity == Severity::Warning) ++warning;
        else ++info;
    }

    std::string out = "# Risk findings\n\n";
    out += std::to_string(critical) + " critical, " + std::to_string(warning) + " warning, " +
           std::to_string(info) + " info.\n\n";
    const std::size_t nv = validation.violations.size();
    if (nv == 0) {
        out += "Validation: clean.\n";
    } else {
        out += "Validation: " + std::to_string(nv) + (nv == 1 ? " violation" : " violations") + ".";
        if (validation_dirty) out += " Findings were computed despite the violations.";
        out += '\n';
        for (const Violation& v : validation.violations)
            out += "- " + v.code + " " + v.subject + ": " + v.message + "\n";
    }

    Rule current = Rule::SingleSourceRisk;
    bool any_in_rule = false;
    for (const Finding& f : findings) {
        if (!any_in_rule || f.rule != current) {
            current = f.rule;
            any_in_rule = true;
            out += "\n## " + rule_id(f.rule) + " " + rule_name(f.rule) + " (" +
                   to_string(f.severity) + ")\n\n";
        }
        out += "- " + f.facility + " [" + to_string(f.layer) + "]: ";
        for (std::size_t i = 0; i < f.evidence.size(); ++i) {
            if (i) out += ", ";
            out += f.evidence[i].first + "=" + display_number(f.evidence[i].second);
        }
        out += ". " + f.recommendation + "\n";
    }
    return out;
}

ReportBundle make_report_bundle(const ClscNetwork& net, const RiskConfig& cfg,
                                bool validation_dirty) {
    ReportBundle bundle;
    bundle.metrics = metrics_table(net);
    bundle.findings = analyze(bundle.metrics, net, cfg);
    bundle.validation = validate_flows(net);
    bundle.curves = collect_curves(net);
    bundle.validation_dirty = validation_dirty;
    return bundle;
}

void write_report_bundle(const ReportBundle& bundle, const ClscNetwork& net,
                         const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());

    detail::write_file(dir / "metrics.csv", render_metrics(bundle.metrics, MetricsFormat::Csv));
    detail::write_file(dir / "metrics.json", render_metrics(bundle.metrics, MetricsFormat::Json));
    detail::write_file(dir / "findings.json",
                       render_findings_json(bundle.findings, bundle.validation,
                                            bundle.validation_dirty));
    detail::write_file(dir / "findings.md",
                       render_findings_markdown(bundle.findings, bundle.validation,
                                                bundle.validation_dirty));
    detail::write_file(dir / "forward.dot", render_dot(net, FlowDirection::Forward));
    detail::write_file(dir / "reverse.dot", render_dot(net, FlowDirection::Reverse));
    detail::write_file(dir / "curves.csv", render_curves_csv(bundle.curves));
}

} // namespace clsc
