#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing_support {

struct GoldenRow {
    std::string region;
    double a, b, c;
    std::complex<double> z, f;
};

inline std::vector<GoldenRow> load_golden(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<GoldenRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string cell[8];
        for (auto& c : cell)
            std::getline(ss, c, ',');
        rows.push_back({cell[0], std::stod(cell[1]), std::stod(cell[2]), std::stod(cell[3]),
                        {std::stod(cell[4]), std::stod(cell[5])},
                        {std::stod(cell[6]), std::stod(cell[7])}});
    }
    return rows;
}

} // namespace testing_support
