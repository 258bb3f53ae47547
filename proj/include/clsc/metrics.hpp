#pragma once

#include "clsc/network.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clsc {

enum class Direction { In, Out };
std::string to_string(Direction d);

// Read-only adjacency of one layer. Every facility of the parent network is
// queryable; facilities without incident edges in the layer get empty lists.
class LayerView {
public:
    struct Arc {
        std::string peer;
        double weight;
    };

    LayerView(const ClscNetwork& net, Layer layer);

    Layer layer() const { return layer_; }
    double total_weight() const { return total_; }

    // Throws Error(Integrity) for ids the network does not know.
    const std::vector<Arc>& out_edges(const std::string& id) const;
    const std::vector<Arc>& in_edges(const std::string& id) const;

    // Incident weights sorted ascending, ready for curve and sum work.
    Eigen::ArrayXd out_weights(const std::string& id) const;
    Eigen::ArrayXd in_weights(const std::string& id) const;

private:
    struct Lists {
        std::vector<Arc> out, in;
    };
    const Lists& lists(const std::string& id) const;

    Layer layer_;
    double total_ = 0.0;
    std::map<std::string, Lists> adj_;
};

LayerView layer_view(const ClscNetwork& net, Layer layer);

int degree(const LayerView& view, const std::string& id, Direction direction);
// Sum of incident weights; accumulated in ascending order to keep the float
// error bounded on fractional data.
double strength(const LayerView& view, const std::string& id, Direction direction);

namespace detail {
std::optional<double> reducing_factor_impl(Eigen::ArrayXd weights);
}

// Balance of a weight multiset: twice the trapezoidal area under the sorted
// cumulative fraction curve. 1.0 means all weights equal, the floor is 1/k,
// and fewer than two weights has no defined value. Equals 1 minus the
// discrete Gini coefficient of the multiset.
// Throws std::invalid_argument on nonpositive or non-finite weights.
template <typename Derived>
std::optional<double> reducing_factor(const Eigen::DenseBase<Derived>& weights) {
    const auto& d = weights.derived();
    Eigen::ArrayXd w(d.size());
    Eigen::Index n = 0;
    for (Eigen::Index c = 0; c < d.cols(); ++c)
        for (Eigen::Index r = 0; r < d.rows(); ++r) w[n++] = static_cast<double>(d(r, c));
    return detail::reducing_factor_impl(std::move(w));
}
std::optional<double> reducing_factor(const std::vector<double>& weights);

struct CumulativeCurve {
    // k+1 points from (0,0) to (1,1); x steps by 1/k, y is the cumulative
    // weight fraction of the ascending-sorted multiset.
    Eigen::ArrayXd x;
    Eigen::ArrayXd y;
    double auc = 0.0;           // trapezoidal area under the points
    double auc_max = 0.5;       // area of the uniform case under the same scheme
};

namespace detail {
CumulativeCurve cumulative_curve_impl(Eigen::ArrayXd weights);
}

// Throws std::invalid_argument when the multiset is empty or has nonpositive
// weights. A single weight yields the straight (0,0)->(1,1) curve, auc 1/2.
template <typename Derived>
CumulativeCurve cumulative_curve(const Eigen::DenseBase<Derived>& weights) {
    const auto& d = weights.derived();
    Eigen::ArrayXd w(d.size());
    Eigen::Index n = 0;
    for (Eigen::Index c = 0; c < d.cols(); ++c)
        for (Eigen::Index r = 0; r < d.rows(); ++r) w[n++] = static_cast<double>(d(r, c));
    return detail::cumulative_curve_impl(std::move(w));
}
CumulativeCurve cumulative_curve(const std::vector<double>& weights);

struct MetricsRecord {
    std::string facility;
    Layer layer = Layer::MDc;
    int c_in = 0;
    int c_out = 0;
    double s_in = 0.0;
    double s_out = 0.0;
    std::optional<double> r_absorb;   // absent below in-degree 2
    std::optional<double> r_disperse; // absent below out-degree 2
    double share_in = 0.0;            // s_in over the layer total
    double share_out = 0.0;
};

// One record per (facility, layer) the facility's kind can participate in,
// ordered by (layer, facility id). A layer with zero total flow yields zero
// shares.
std::vector<MetricsRecord> metrics_table(const ClscNetwork& net);

struct CurveKey {
    std::string facility;
    Layer layer = Layer::MDc;
    Direction direction = Direction::In;

    bool operator<(const CurveKey& o) const {
        if (layer != o.layer) return layer < o.layer;
        if (facility != o.facility) return facility < o.facility;
        return direction < o.direction;
    }
};

// Every (facility, layer, direction) with at least one incident edge.
std::map<CurveKey, CumulativeCurve> collect_curves(const ClscNetwork& net);

} // namespace clsc
