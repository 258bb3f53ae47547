#pragma once

#include "clsc/network.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace testsup {

inline std::filesystem::path data_dir() { return CLSC_DATA_DIR; }
inline std::filesystem::path fixture_path() { return data_dir() / "casestudy_ohio.json"; }
inline std::string cli_bin() { return CLSC_SNA_BIN; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

// Fresh per-process scratch directory; wiped on creation, left behind for
// post-mortem poking.
inline std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() /
               ("clsc_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct CmdResult {
    int status = -1;
    std::string out; // stdout and stderr interleaved
};

inline CmdResult run_cmd(const std::string& cmd) {
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CmdResult result;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    int rc = ::pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

// Tiny two-DC network used across suites: two manufacturers, two DCs, three
// retailers, 10% returns, M1 remanufactures everything.
inline clsc::ClscNetwork toy_network() {
    std::vector<clsc::Facility> facilities;
    clsc::Facility m1;
    m1.id = "M1";
    m1.kind = clsc::FacilityKind::Manufacturer;
    m1.manufacturing_capacity = 1000.0;
    m1.can_remanufacture = true;
    m1.remanufacturing_capacity = 100.0;
    facilities.push_back(m1);
    clsc::Facility m2;
    m2.id = "M2";
    m2.kind = clsc::FacilityKind::Manufacturer;
    m2.manufacturing_capacity = 1000.0;
    facilities.push_back(m2);
    for (const char* id : {"D1", "D2"})
        facilities.push_back({id, clsc::FacilityKind::DistributionCenter, false, std::nullopt,
                              std::nullopt, std::nullopt});
    for (const char* id : {"R1", "R2", "R3"})
        facilities.push_back(
            {id, clsc::FacilityKind::Retailer, false, std::nullopt, std::nullopt, std::nullopt});

    std::vector<clsc::Edge> edges = {
        {"M1", "D1", clsc::Layer::MDc, 300},  {"M2", "D1", clsc::Layer::MDc, 100},
        {"M2", "D2", clsc::Layer::MDc, 200},  {"D1", "R1", clsc::Layer::DcRe, 150},
        {"D1", "R2", clsc::Layer::DcRe, 250}, {"D2", "R3", clsc::Layer::DcRe, 200},
        {"R1", "D1", clsc::Layer::ReDc, 15},  {"R2", "D1", clsc::Layer::ReDc, 25},
        {"R3", "D2", clsc::Layer::ReDc, 20},  {"D1", "M1", clsc::Layer::DcRm, 40},
        {"D2", "M1", clsc::Layer::DcRm, 20},
    };
    return clsc::ClscNetwork::build(std::move(facilities), std::move(edges), 0.1, true);
}

} // namespace testsup
