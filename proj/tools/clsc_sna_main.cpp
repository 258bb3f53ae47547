#include "clsc/casestudy.hpp"
#include "clsc/metrics.hpp"
#include "clsc/netgen.hpp"
#include "clsc/network.hpp"
#include "clsc/report.hpp"
#include "clsc/risk.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

struct InputOpts {
    std::string network;
    std::string facilities;
    std::optional<double> return_rate;
    bool single_allocation = false;
    bool force = false;
};

void add_input_options(CLI::App* cmd, InputOpts& opts, bool with_force) {
    cmd->add_option("network", opts.network,
                    "network file: .json, or an edges .csv used with --facilities")
        ->required();
    cmd->add_option("--facilities", opts.facilities, "facilities csv (csv input only)");
    cmd->add_option("--return-rate", opts.return_rate, "return rate metadata (csv input only)");
    cmd->add_flag("--single-allocation", opts.single_allocation,
                  "single allocation metadata (csv input only)");
    if (with_force)
        cmd->add_flag("--force", opts.force, "analyze even when flow validation fails");
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

clsc::ClscNetwork load_input(const InputOpts& opts) {
    if (ends_with(opts.network, ".json")) return clsc::load_network_json_file(opts.network);
    if (opts.facilities.empty())
        throw clsc::Error(clsc::ErrorKind::Schema,
                          "csv input needs --facilities alongside the edges file");
    return clsc::load_network_csv_files(opts.facilities, opts.network, opts.return_rate,
                                        opts.single_allocation);
}

void print_violations(std::ostream& out, const clsc::ValidationReport& report) {
    for (const clsc::Violation& v : report.violations)
        out << v.code << " " << v.subject << ": " << v.message << "\n";
}

// Returns true when analysis may proceed; fills `dirty` when forced past a
// failed validation.
bool gate(const clsc::ClscNetwork& net, const InputOpts& opts, clsc::ValidationReport& validation,
          bool& dirty) {
    validation = clsc::validate_flows(net);
    if (validation.ok()) return true;
    if (!opts.force) {
        print_violations(std::cerr, validation);
        std::cerr << validation.violations.size()
                  << " validation violation(s); pass --force to analyze anyway\n";
        return false;
    }
    dirty = true;
    return true;
}

struct RiskConfigOpts {
    std::string config_path;
    std::optional<double> share_high, share_low, r_low, utilization_eps;
    std::optional<int> fanout_min;
};

void add_threshold_options(CLI::App* cmd, RiskConfigOpts& opts) {
    cmd->add_option("--share-high", opts.share_high, "dominant layer-share threshold");
    cmd->add_option("--share-low", opts.share_low, "marginal layer-share threshold");
    cmd->add_option("--r-low", opts.r_low, "skewed-flow reducing-factor ceiling");
    cmd->add_option("--fanout-min", opts.fanout_min, "retailer fan-out needing supply backup");
    cmd->add_option("--utilization-eps", opts.utilization_eps, "slack treated as at-capacity");
}

// Precedence: explicit flags, then --config, then CLSC_SNA_CONFIG, then the
// built-in defaults.
clsc::RiskConfig resolve_risk_config(const RiskConfigOpts& opts) {
    clsc::RiskConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = clsc::load_risk_config(opts.config_path);
    } else if (const char* env = std::getenv("CLSC_SNA_CONFIG"); env && *env) {
        cfg = clsc::load_risk_config(env);
    }
    if (opts.share_high) cfg.share_high = *opts.share_high;
    if (opts.share_low) cfg.share_low = *opts.share_low;
    if (opts.r_low) cfg.r_low = *opts.r_low;
    if (opts.fanout_min) cfg.fanout_min = *opts.fanout_min;
    if (opts.utilization_eps) cfg.utilization_eps = *opts.utilization_eps;
    clsc::check(cfg);
    return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw clsc::Error(clsc::ErrorKind::Io, "cannot open '" + path.string() + "'");
    out << text;
    if (!out.good()) throw clsc::Error(clsc::ErrorKind::Io, "cannot write '" + path.string() + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"node-level SNA metrics and risk screening for closed-loop supply chains"};
    app.require_subcommand(1);

    InputOpts validate_opts;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check structure and flow balance");
    add_input_options(validate_cmd, validate_opts, false);

    InputOpts metrics_opts;
    std::string metrics_format = "table";
    std::string metrics_out;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "per-facility layer metrics");
    add_input_options(metrics_cmd, metrics_opts, true);
    metrics_cmd->add_option("--format", metrics_format, "stdout format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    metrics_cmd->add_option("--out", metrics_out, "write metrics.csv/.json/.txt to this directory");

    InputOpts risk_opts;
    RiskConfigOpts risk_cfg_opts;
    std::string risk_out;
    CLI::App* risk_cmd = app.add_subcommand("risk", "rule-based risk findings");
    add_input_options(risk_cmd, risk_opts, true);
    risk_cmd->add_option("--config", risk_cfg_opts.config_path, "threshold config json");
    add_threshold_options(risk_cmd, risk_cfg_opts);
    risk_cmd->add_option("--out", risk_out, "write findings.json and findings.md here");

    InputOpts report_opts;
    RiskConfigOpts report_cfg_opts;
    std::string report_out = "report";
    CLI::App* report_cmd = app.add_subcommand("report", "full report bundle");
    add_input_options(report_cmd, report_opts, true);
    report_cmd->add_option("--config", report_cfg_opts.config_path, "threshold config json");
    report_cmd->add_option("--out", report_out, "output directory");

    std::string gen_spec_path, gen_out;
    std::optional<std::uint64_t> gen_seed;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic network");
    gen_cmd->add_option("spec", gen_spec_path, "generator spec json")->required();
    gen_cmd->add_option("--out", gen_out, "output file (default stdout)");
    gen_cmd->add_option("--seed", gen_seed, "override the spec seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }

    if (validate_cmd->parsed()) {
        clsc::ClscNetwork net = load_input(validate_opts);
        clsc::ValidationReport report = clsc::validate_flows(net);
        print_violations(std::cout, report);
        if (report.ok()) {
            std::cout << "ok\n";
            return kOk;
        }
        std::cout << report.violations.size() << " violation(s)\n";
        return kViolations;
    }

    if (metrics_cmd->parsed()) {
        clsc::ClscNetwork net = load_input(metrics_opts);
        clsc::ValidationReport validation;
        bool dirty = false;
        if (!gate(net, metrics_opts, validation, dirty)) return kViolations;
        std::vector<clsc::MetricsRecord> records = clsc::metrics_table(net);
        if (!metrics_out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(metrics_out, ec);
            if (ec)
                throw clsc::Error(clsc::ErrorKind::Io,
                                  "cannot create '" + metrics_out + "': " + ec.message());
            std::filesystem::path dir(metrics_out);
            write_text(dir / "metrics.csv",
                       clsc::render_metrics(records, clsc::MetricsFormat::Csv));
            write_text(dir / "metrics.json",
                       clsc::render_metrics(records, clsc::MetricsFormat::Json));
            write_text(dir / "metrics.txt",
                       clsc::render_metrics(records, clsc::MetricsFormat::TableText));
            return kOk;
        }
        clsc::MetricsFormat format = metrics_format == "csv"    ? clsc::MetricsFormat::Csv
                                     : metrics_format == "json" ? clsc::MetricsFormat::Json
                                                                : clsc::MetricsFormat::TableText;
        std::cout << clsc::render_metrics(records, format);
        return kOk;
    }

    if (risk_cmd->parsed()) {
        clsc::ClscNetwork net = load_input(risk_opts);
        clsc::RiskConfig cfg = resolve_risk_config(risk_cfg_opts);
        clsc::ValidationReport validation;
        bool dirty = false;
        if (!gate(net, risk_opts, validation, dirty)) return kViolations;
        std::vector<clsc::Finding> findings = clsc::analyze(clsc::metrics_table(net), net, cfg);
        std::string json = clsc::render_findings_json(findings, validation, dirty);
        if (!risk_out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(risk_out, ec);
            if (ec)
                throw clsc::Error(clsc::ErrorKind::Io,
                                  "cannot create '" + risk_out + "': " + ec.message());
            std::filesystem::path dir(risk_out);
            write_text(dir / "findings.json", json);
            write_text(dir / "findings.md",
                       clsc::render_findings_markdown(findings, validation, dirty));
            return kOk;
        }
        std::cout << json;
        return kOk;
    }

    if (report_cmd->parsed()) {
        clsc::ClscNetwork net = load_input(report_opts);
        clsc::RiskConfig cfg = resolve_risk_config(report_cfg_opts);
        clsc::ValidationReport validation;
        bool dirty = false;
        if (!gate(net, report_opts, validation, dirty)) return kViolations;
        clsc::ReportBundle bundle = clsc::make_report_bundle(net, cfg, dirty);
        clsc::write_report_bundle(bundle, net, report_out);
        return kOk;
    }

    clsc::GenSpec spec = clsc::load_gen_spec(gen_spec_path);
    if (gen_seed) spec.seed = *gen_seed;
    clsc::ClscNetwork net = clsc::generate(spec);
    std::string text = clsc::serialize_network_json(net);
    if (gen_out.empty()) std::cout << text;
    else write_text(gen_out, text);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const clsc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == clsc::ErrorKind::Io ? kInternal : kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
