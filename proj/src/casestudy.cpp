#include "clsc/casestudy.hpp"

#include <utility>
#include <vector>

namespace clsc {

// Reconstructed Ohio-shaped benchmark: 5 manufacturers (3 of them taking
// returns), 10 distribution centers, 50 retailers, 10% product return flow.
// Weights were fitted so every per-facility degree and strength hits its
// reference target and both layer totals balance; docs/casestudy.md walks
// through the procedure.
ClscNetwork casestudy_network() {
    std::vector<Facility> facilities;

    auto manufacturer = [&](const char* id, bool reman) {
        Facility f;
        f.id = id;
        f.kind = FacilityKind::Manufacturer;
        f.manufacturing_capacity = 1100000.0;
        if (reman) {
            f.can_remanufacture = true;
            f.remanufacturing_capacity = 200000.0;
        }
        facilities.push_back(std::move(f));
    };
    manufacturer("M1", true);
    manufacturer("M2", true);
    manufacturer("M3", false);
    manufacturer("M4", true);
    manufacturer("M5", false);

    for (const char* id : {"DC8", "DC33", "DC34", "DC35", "DC39", "DC40", "DC41", "DC43", "DC84",
                           "DC115"})
        facilities.push_back(
            {id, FacilityKind::DistributionCenter, false, std::nullopt, std::nullopt, std::nullopt});

    auto retailer = [](int i) {
        return "R" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    };
    for (int i = 1; i <= 50; ++i)
        facilities.push_back({retailer(i), FacilityKind::Retailer, false, std::nullopt,
                              std::nullopt, std::nullopt});

    std::vector<Edge> edges;
    auto edge = [&](std::string from, std::string to, Layer layer, double weight) {
        edges.push_back({std::move(from), std::move(to), layer, weight});
    };
    // retailer run helper: a block of equal weights plus one balancing edge
    auto fan = [&](const char* dc, int first, int last, double each) {
        for (int i = first; i <= last; ++i) edge(dc, retailer(i), Layer::DcRe, each);
    };
    auto back = [&](int first, int last, const char* dc, double each) {
        for (int i = first; i <= last; ++i) edge(retailer(i), dc, Layer::ReDc, each);
    };

    edge("M1", "DC34", Layer::MDc, 656348);
    edge("M1", "DC39", Layer::MDc, 443652);
    edge("M2", "DC8", Layer::MDc, 70176);
    edge("M2", "DC33", Layer::MDc, 160684);
    edge("M2", "DC39", Layer::MDc, 384934);
    edge("M3", "DC35", Layer::MDc, 569499);
    edge("M3", "DC40", Layer::MDc, 482820);
    edge("M3", "DC84", Layer::MDc, 47681);
    edge("M4", "DC41", Layer::MDc, 598845);
    edge("M4", "DC43", Layer::MDc, 436089);
    edge("M4", "DC115", Layer::MDc, 65066);
    edge("M5", "DC39", Layer::MDc, 879911);
    edge("M5", "DC40", Layer::MDc, 86679);
    edge("M5", "DC43", Layer::MDc, 133410);

    fan("DC8", 1, 9, 5302);
    edge("DC8", "R10", Layer::DcRe, 22458);
    fan("DC33", 11, 28, 6226);
    edge("DC33", "R29", Layer::DcRe, 48616);
    edge("DC34", "R30", Layer::DcRe, 3000);
    edge("DC34", "R31", Layer::DcRe, 4000);
    edge("DC34", "R32", Layer::DcRe, 5000);
    edge("DC34", "R33", Layer::DcRe, 6000);
    edge("DC34", "R34", Layer::DcRe, 244128);
    edge("DC34", "R35", Layer::DcRe, 394220);
    edge("DC35", "R36", Layer::DcRe, 569499);
    fan("DC39", 37, 39, 569499);
    edge("DC40", "R40", Layer::DcRe, 569499);
    edge("DC41", "R41", Layer::DcRe, 29942);
    edge("DC41", "R42", Layer::DcRe, 568903);
    edge("DC43", "R43", Layer::DcRe, 569499);
    fan("DC84", 44, 47, 4410);
    edge("DC84", "R48", Layer::DcRe, 30041);
    edge("DC115", "R49", Layer::DcRe, 32533);
    edge("DC115", "R50", Layer::DcRe, 32533);

    back(1, 9, "DC8", 531);
    edge("R10", "DC8", Layer::ReDc, 2242);
    back(11, 28, "DC33", 628);
    edge("R29", "DC33", Layer::ReDc, 4777);
    edge("R29", "DC34", Layer::ReDc, 90);
    edge("R30", "DC34", Layer::ReDc, 299);
    edge("R31", "DC34", Layer::ReDc, 398);
    edge("R32", "DC34", Layer::ReDc, 498);
    edge("R33", "DC34", Layer::ReDc, 598);
    edge("R34", "DC34", Layer::ReDc, 24333);
    edge("R35", "DC39", Layer::ReDc, 39422);
    edge("R36", "DC35", Layer::ReDc, 56950);
    edge("R37", "DC41", Layer::ReDc, 56950);
    edge("R38", "DC34", Layer::ReDc, 56950);
    edge("R39", "DC34", Layer::ReDc, 56950);
    edge("R40", "DC40", Layer::ReDc, 56950);
    edge("R41", "DC34", Layer::ReDc, 2994);
    edge("R42", "DC34", Layer::ReDc, 56890);
    edge("R43", "DC43", Layer::ReDc, 56950);
    back(44, 47, "DC84", 441);
    edge("R48", "DC84", Layer::ReDc, 3004);
    edge("R49", "DC84", Layer::ReDc, 3255);
    edge("R50", "DC84", Layer::ReDc, 3256);

    edge("DC8", "M2", Layer::DcRm, 7021);
    edge("DC33", "M2", Layer::DcRm, 16081);
    edge("DC34", "M1", Layer::DcRm, 200000);
    edge("DC35", "M4", Layer::DcRm, 56950);
    edge("DC39", "M2", Layer::DcRm, 39422);
    edge("DC40", "M4", Layer::DcRm, 56950);
    edge("DC41", "M4", Layer::DcRm, 56950);
    edge("DC43", "M2", Layer::DcRm, 39079);
    edge("DC43", "M4", Layer::DcRm, 17871);
    edge("DC84", "M4", Layer::DcRm, 11279);

    return ClscNetwork::build(std::move(facilities), std::move(edges), 0.1, false);
}

} // namespace clsc
