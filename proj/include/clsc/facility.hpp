#pragma once

#include <array>
#include <optional>
#include <string>

namespace clsc {

enum class FacilityKind { Manufacturer, DistributionCenter, Retailer };

// The four relationship layers of a closed-loop network. The first two carry
// the forward flow, the last two carry returns.
enum class Layer { MDc, DcRe, ReDc, DcRm };

inline constexpr std::array<Layer, 4> kAllLayers = {Layer::MDc, Layer::DcRe,
                                                    Layer::ReDc, Layer::DcRm};

std::string to_string(FacilityKind kind);
std::string to_string(Layer layer);
FacilityKind facility_kind_from_string(const std::string& s);
Layer layer_from_string(const std::string& s);

bool is_forward(Layer layer);
FacilityKind layer_source_kind(Layer layer);
// For Layer::DcRm the target must additionally have can_remanufacture set.
FacilityKind layer_target_kind(Layer layer);

struct Facility {
    std::string id;
    FacilityKind kind = FacilityKind::Retailer;
    bool can_remanufacture = false;
    // present iff kind == Manufacturer
    std::optional<double> manufacturing_capacity;
    // present iff can_remanufacture
    std::optional<double> remanufacturing_capacity;
    std::optional<std::string> label;
};

struct Edge {
    std::string from;
    std::string to;
    Layer layer = Layer::MDc;
    double weight = 0.0; // units per period, strictly positive
};

} // namespace clsc
