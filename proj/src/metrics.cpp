#include "clsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clsc {

std::string to_string(Direction d) { return d == Direction::In ? "in" : "out"; }

LayerView::LayerView(const ClscNetwork& net, Layer layer) : layer_(layer) {
    for (const Facility& f : net.facilities()) adj_[f.id];
    for (const Edge& e : net.edges()) {
        if (e.layer != layer) continue;
        adj_[e.from].out.push_back({e.to, e.weight});
        adj_[e.to].in.push_back({e.from, e.weight});
        total_ += e.weight;
    }
}

const LayerView::Lists& LayerView::lists(const std::string& id) const {
    auto it = adj_.find(id);
    if (it == adj_.end()) throw Error(ErrorKind::Integrity, "unknown facility '" + id + "'");
    return it->second;
}

const std::vector<LayerView::Arc>& LayerView::out_edges(const std::string& id) const {
    return lists(id).out;
}

const std::vector<LayerView::Arc>& LayerView::in_edges(const std::string& id) const {
    return lists(id).in;
}

namespace {

Eigen::ArrayXd ascending_weights(const std::vector<LayerView::Arc>& arcs) {
    Eigen::ArrayXd w(static_cast<Eigen::Index>(arcs.size()));
    for (std::size_t i = 0; i < arcs.size(); ++i) w[static_cast<Eigen::Index>(i)] = arcs[i].weight;
    std::sort(w.data(), w.data() + w.size());
    return w;
}

double ascending_sum(const Eigen::ArrayXd& w) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) total += w[i];
    return total;
}

void require_positive_finite(const Eigen::ArrayXd& w) {
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (!(w[i] > 0.0) || !std::isfinite(w[i]))
            throw std::invalid_argument("weights must be positive finite numbers");
}

} // namespace

Eigen::ArrayXd LayerView::out_weights(const std::string& id) const {
    return ascending_weights(lists(id).out);
}

Eigen::ArrayXd LayerView::in_weights(const std::string& id) const {
    return ascending_weights(lists(id).in);
}

LayerView layer_view(const ClscNetwork& net, Layer layer) { return LayerView(net, layer); }

int degree(const LayerView& view, const std::string& id, Direction direction) {
    const auto& arcs = direction == Direction::In ? view.in_edges(id) : view.out_edges(id);
    return static_cast<int>(arcs.size());
}

double strength(const LayerView& view, const std::string& id, Direction direction) {
    Eigen::ArrayXd w = direction == Direction::In ? view.in_weights(id) : view.out_weights(id);
    return ascending_sum(w);
}

namespace detail {

std::optional<double> reducing_factor_impl(Eigen::ArrayXd w) {
    require_positive_finite(w);
    const Eigen::Index k = w.size();
    if (k < 2) return std::nullopt;
    std::sort(w.data(), w.data() + w.size());
    if (w[0] == w[k - 1]) return 1.0;

    const double total = ascending_sum(w);
    double prefix = 0.0;
    double interior = 0.0; // cumulative fractions at the k-1 interior points
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
        prefix += w[i];
        interior += prefix / total;
    }
    double r = (2.0 * interior + 1.0) / static_cast<double>(k);
    return std::clamp(r, 1.0 / static_cast<double>(k), 1.0);
}

CumulativeCurve cumulative_curve_impl(Eigen::ArrayXd w) {
    require_positive_finite(w);
    const Eigen::Index k = w.size();
    if (k < 1) throw std::invalid_argument("need at least one weight");
    std::sort(w.data(), w.data() + w.size());
    const double total = ascending_sum(w);

    CumulativeCurve curve;
    curve.x.resize(k + 1);
    curve.y.resize(k + 1);
    curve.x[0] = 0.0;
    curve.y[0] = 0.0;
    double prefix = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        prefix += w[i];
        curve.x[i + 1] = static_cast<double>(i + 1) / static_cast<double>(k);
        curve.y[i + 1] = prefix / total;
    }
    curve.x[k] = 1.0;
    curve.y[k] = 1.0;

    double area = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        area += (curve.x[i + 1] - curve.x[i]) * (curve.y[i] + curve.y[i + 1]) / 2.0;
    curve.auc = area;
    curve.auc_max = 0.5;
    return curve;
}

} // namespace detail

std::optional<double> reducing_factor(const std::vector<double>& weights) {
    Eigen::ArrayXd w(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights[i];
    return detail::reducing_factor_impl(std::move(w));
}

CumulativeCurve cumulative_curve(const std::vector<double>& weights) {
    Eigen::ArrayXd w(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights[i];
    return detail::cumulative_curve_impl(std::move(w));
}

namespace {

bool participates(const Facility& f, Layer layer) {
    if (f.kind == layer_source_kind(layer)) return true;
    if (f.kind == layer_target_kind(layer))
        return layer != Layer::DcRm || f.can_remanufacture;
    return false;
}

} // namespace

std::vector<MetricsRecord> metrics_table(const ClscNetwork& net) {
    std::vector<MetricsRecord> records;
    for (Layer layer : kAllLayers) {
        LayerView view(net, layer);
        const double total = view.total_weight();
        for (const Facility& f : net.facilities()) {
            if (!participates(f, layer)) continue;
            MetricsRecord rec;
            rec.facility = f.id;
            rec.layer = layer;
            rec.c_in = degree(view, f.id, Direction::In);
            rec.c_out = degree(view, f.id, Direction::Out);
            Eigen::ArrayXd in_w = view.in_weights(f.id);
            Eigen::ArrayXd out_w = view.out_weights(f.id);
            rec.s_in = ascending_sum(in_w);
            rec.s_out = ascending_sum(out_w);
            rec.r_absorb = detail::reducing_factor_impl(std::move(in_w));
            rec.r_disperse = detail::reducing_factor_impl(std::move(out_w));
            rec.share_in = total > 0.0 ? rec.s_in / total : 0.0;
            rec.share_out = total > 0.0 ? rec.s_out / total : 0.0;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::map<CurveKey, CumulativeCurve> collect_curves(const ClscNetwork& net) {
    std::map<CurveKey, CumulativeCurve> curves;
    for (Layer layer : kAllLayers) {
        LayerView view(net, layer);
        for (const Facility& f : net.facilities()) {
            if (!view.in_edges(f.id).empty())
                curves[{f.id, layer, Direction::In}] =
                    detail::cumulative_curve_impl(view.in_weights(f.id));
            if (!view.out_edges(f.id).empty())
                curves[{f.id, layer, Direction::Out}] =
                    detail::cumulative_curve_impl(view.out_weights(f.id));
        }
    }
    return curves;
}

} // namespace clsc
