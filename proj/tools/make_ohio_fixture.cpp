#include "clsc/casestudy.hpp"
#include "clsc/network.hpp"

#include <fstream>
#include <iostream>

// Regenerates the canonical fixture file. The committed copy must stay byte
// identical to this output; a unit test enforces that.
int main(int argc, char** argv) {
    const char* path = argc > 1 ? argv[1] : "data/casestudy_ohio.json";
    std::string text = clsc::serialize_network_json(clsc::casestudy_network());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "cannot open " << path << "\n";
        return 1;
    }
    out << text;
    if (!out.good()) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }
    std::cout << path << "\n";
    return 0;
}
