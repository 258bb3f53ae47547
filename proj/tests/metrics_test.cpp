#include "clsc/casestudy.hpp"
#include "clsc/metrics.hpp"

#include "test_support.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace clsc;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("reducing factor anchors") {
    // prefix fractions of {1,1,8} are 0.1 and 0.2: (2*(0.1+0.2)+1)/3 = 8/15
    CHECK(*reducing_factor(std::vector<double>{1, 1, 8}) == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
    CHECK(*reducing_factor(std::vector<double>{8, 1, 1}) == *reducing_factor(std::vector<double>{1, 1, 8}));

    // two weights reduce to w_min/W + 1/2
    CHECK(*reducing_factor(std::vector<double>{1, 3}) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(*reducing_factor(std::vector<double>{100, 300}) == doctest::Approx(0.75).epsilon(1e-12));

    // equal weights give exactly 1.0, no rounding involved
    CHECK(*reducing_factor(std::vector<double>{7, 7, 7, 7}) == 1.0);
    CHECK(*reducing_factor(std::vector<double>{0.3, 0.3}) == 1.0);
}

TEST_CASE("reducing factor edge cases") {
    CHECK_FALSE(reducing_factor(std::vector<double>{}).has_value());
    CHECK_FALSE(reducing_factor(std::vector<double>{42}).has_value());
    CHECK_THROWS_AS(reducing_factor(std::vector<double>{1, -2}), std::invalid_argument);
    CHECK_THROWS_AS(reducing_factor(std::vector<double>{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(reducing_factor(std::vector<double>{1, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);

    // extreme skew clamps at the 1/k floor
    double r = *reducing_factor(std::vector<double>{1e-300, 1e300});
    CHECK(r >= 0.5);
    CHECK(r <= 1.0);
}

TEST_CASE("reducing factor accepts Eigen expressions") {
    Eigen::Vector3d v(1, 1, 8);
    Eigen::ArrayXd a(3);
    a << 1, 1, 8;
    std::vector<double> s{1, 1, 8};
    CHECK(*reducing_factor(v) == *reducing_factor(s));
    CHECK(*reducing_factor(a) == *reducing_factor(s));
    CHECK(*reducing_factor(a * 2.0) == doctest::Approx(*reducing_factor(s)).epsilon(1e-12));
    CHECK(*reducing_factor(v.transpose()) == *reducing_factor(s));
}

TEST_CASE("cumulative curve anchors") {
    CumulativeCurve curve = cumulative_curve(std::vector<double>{1, 3});
    REQUIRE(curve.x.size() == 3);
    CHECK(curve.x[0] == 0.0);
    CHECK(curve.x[1] == 0.5);
    CHECK(curve.x[2] == 1.0);
    CHECK(curve.y[0] == 0.0);
    CHECK(curve.y[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(curve.y[2] == 1.0);
    CHECK(curve.auc == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(curve.auc_max == 0.5);

    CumulativeCurve equal = cumulative_curve(std::vector<double>{2, 2});
    CHECK(equal.auc == doctest::Approx(0.5).epsilon(1e-12));

    CumulativeCurve skewed = cumulative_curve(std::vector<double>{1, 1, 8});
    CHECK(skewed.y[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(skewed.y[2] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(skewed.y[3] == 1.0);

    CumulativeCurve single = cumulative_curve(std::vector<double>{5});
    CHECK(single.x.size() == 2);
    CHECK(single.y[1] == 1.0);
    CHECK(single.auc == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(cumulative_curve(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(cumulative_curve(std::vector<double>{-1.0}), std::invalid_argument);
}

TEST_CASE("reducing factor equals twice the curve area") {
    std::mt19937_64 eng(11);
    auto u01 = [&eng] { return (eng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(u01() * 20);
        std::vector<double> w(k);
        for (double& x : w) x = 1.0 + u01() * 999.0;
        CHECK(*reducing_factor(w) ==
              doctest::Approx(2.0 * cumulative_curve(w).auc).epsilon(1e-12));
    }
}

TEST_CASE("layer view exposes sorted adjacency") {
    ClscNetwork net = testsup::toy_network();
    LayerView view = layer_view(net, Layer::MDc);
    CHECK(view.layer() == Layer::MDc);
    CHECK(view.total_weight() == 600.0);

    CHECK(degree(view, "D1", Direction::In) == 2);
    CHECK(degree(view, "D1", Direction::Out) == 0);
    CHECK(strength(view, "D1", Direction::In) == 400.0);
    CHECK(strength(view, "M2", Direction::Out) == 300.0);

    Eigen::ArrayXd w = view.in_weights("D1");
    REQUIRE(w.size() == 2);
    CHECK(w[0] == 100.0);
    CHECK(w[1] == 300.0);

    CHECK(view.in_edges("R1").empty()); // retailer does not touch this layer
    CHECK_THROWS_AS(view.in_edges("NOPE"), Error);
}

TEST_CASE("metrics table covers participating kinds per layer") {
    ClscNetwork net = testsup::toy_network();
    std::vector<MetricsRecord> records = metrics_table(net);
    // m_dc: 2 M + 2 DC; dc_re: 2 DC + 3 R; re_dc: 3 R + 2 DC; dc_rm: 2 DC + 1 RM
    CHECK(records.size() == 4 + 5 + 5 + 3);

    auto find = [&](const char* id, Layer layer) -> const MetricsRecord& {
        for (const MetricsRecord& rec : records)
            if (rec.facility == id && rec.layer == layer) return rec;
        static MetricsRecord missing;
        FAIL("record not found");
        return missing;
    };

    const MetricsRecord& d1 = find("D1", Layer::MDc);
    CHECK(d1.c_in == 2);
    CHECK(d1.s_in == 400.0);
    CHECK(d1.c_out == 0);
    CHECK(d1.s_out == 0.0);
    CHECK(*d1.r_absorb == doctest::Approx(0.75).epsilon(1e-12));
    CHECK_FALSE(d1.r_disperse.has_value());
    CHECK(d1.share_in == doctest::Approx(400.0 / 600.0).epsilon(1e-12));

    const MetricsRecord& m2 = find("M2", Layer::MDc);
    CHECK(m2.c_out == 2);
    CHECK(*m2.r_disperse == doctest::Approx(100.0 / 300.0 + 0.5).epsilon(1e-12));

    // M2 cannot remanufacture, so dc_rm has no M2 record
    for (const MetricsRecord& rec : records)
        CHECK((rec.layer != Layer::DcRm || rec.facility != "M2"));

    // records ordered by (layer, facility)
    for (std::size_t i = 1; i < records.size(); ++i) {
        bool ordered = records[i - 1].layer < records[i].layer ||
                       (records[i - 1].layer == records[i].layer &&
                        records[i - 1].facility < records[i].facility);
        CHECK(ordered);
    }
}

TEST_CASE("fixture record and curve counts") {
    ClscNetwork net = casestudy_network();
    CHECK(metrics_table(net).size() == 148);
    CHECK(collect_curves(net).size() == 146);
}

TEST_CASE("curves only exist for incident directions") {
    ClscNetwork net = testsup::toy_network();
    std::map<CurveKey, CumulativeCurve> curves = collect_curves(net);
    CHECK(curves.count({"D1", Layer::MDc, Direction::In}) == 1);
    CHECK(curves.count({"D1", Layer::MDc, Direction::Out}) == 0);
    CHECK(curves.count({"M1", Layer::DcRm, Direction::In}) == 1);
    CHECK(curves.count({"R1", Layer::DcRe, Direction::In}) == 1);
}

TEST_CASE("permutation of input edges leaves metrics bit-identical") {
    ClscNetwork base = testsup::toy_network();
    std::vector<Facility> facilities = base.facilities();
    std::vector<Edge> edges = base.edges();
    std::reverse(facilities.begin(), facilities.end());
    std::reverse(edges.begin(), edges.end());
    ClscNetwork shuffled = ClscNetwork::build(std::move(facilities), std::move(edges),
                                              base.return_rate(), base.single_allocation());

    std::vector<MetricsRecord> a = metrics_table(base);
    std::vector<MetricsRecord> b = metrics_table(shuffled);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].facility == b[i].facility);
        CHECK(a[i].s_in == b[i].s_in);
        CHECK(a[i].s_out == b[i].s_out);
        CHECK(a[i].r_absorb == b[i].r_absorb);
        CHECK(a[i].r_disperse == b[i].r_disperse);
    }
}

TEST_SUITE_END();
