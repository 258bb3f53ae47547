#pragma once

#include "clsc/error.hpp"
#include "clsc/facility.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clsc {

// Immutable validated multigraph. Construction canonicalizes the storage:
// facilities sorted by id, edges sorted by (layer, from, to), so everything
// downstream is order-independent of the input file.
class ClscNetwork {
public:
    // Throws Error(Integrity) on duplicate ids, dangling endpoints, duplicate
    // (from, to, layer) triples, nonpositive weights, kind/layer mismatches,
    // capacity fields on the wrong kind, or single-allocation violations.
    static ClscNetwork build(std::vector<Facility> facilities, std::vector<Edge> edges,
                             std::optional<double> return_rate = std::nullopt,
                             bool single_allocation = false);

    const std::vector<Facility>& facilities() const { return facilities_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<double> return_rate() const { return return_rate_; }
    bool single_allocation() const { return single_allocation_; }

    bool has(const std::string& id) const;
    // Throws Error(Integrity) for unknown ids.
    const Facility& at(const std::string& id) const;

    std::vector<const Facility*> of_kind(FacilityKind kind) const;
    std::vector<Edge> edges_in_layer(Layer layer) const;

private:
    ClscNetwork() = default;

    std::vector<Facility> facilities_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> index_;
    std::optional<double> return_rate_;
    bool single_allocation_ = false;
};

ClscNetwork load_network_json(const std::string& text);
ClscNetwork load_network_json_file(const std::filesystem::path& path);

// Edge list plus a sibling facility table; metadata that the CSV form cannot
// carry is passed explicitly.
ClscNetwork load_network_csv(const std::string& facilities_csv, const std::string& edges_csv,
                             std::optional<double> return_rate = std::nullopt,
                             bool single_allocation = false);
ClscNetwork load_network_csv_files(const std::filesystem::path& facilities_path,
                                   const std::filesystem::path& edges_path,
                                   std::optional<double> return_rate = std::nullopt,
                                   bool single_allocation = false);

// Canonical form: stable key order, sorted rows, integral weights written
// without a fraction. Loading the result reproduces the network exactly.
std::string serialize_network_json(const ClscNetwork& net);

struct FlowTolerances {
    double conservation_abs = 0.5; // units, absorbs float dust on integer data
    double return_rate_rel = 0.01; // relative window for the per-retailer check
};

struct Violation {
    std::string code;
    std::string subject; // facility id
    std::string message;
    double measured = 0.0;
    double expected = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Flow sanity rules: per-DC conservation in both directions, the per-retailer
// return-rate window (skipped when return_rate is absent), and manufacturer /
// remanufacturer capacity limits. Problems are reported, never thrown.
ValidationReport validate_flows(const ClscNetwork& net, const FlowTolerances& tol = {});

} // namespace clsc
