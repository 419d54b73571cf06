#include "fusereid/matrix.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fusereid/errors.hpp"

namespace fusereid {

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    // nlohmann serializes doubles with the shortest representation that
    // round-trips, which keeps output files stable across runs.
    return nlohmann::json(value).dump();
}

void write_csv(const Mat& m, std::ostream& out) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c != 0) out << ',';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

Mat read_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell == "inf") {
                row.push_back(kNoOverlap);
            } else if (cell == "-inf") {
                row.push_back(-kNoOverlap);
            } else {
                row.push_back(std::stod(cell));
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged CSV matrix");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return Mat{};
    Mat m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

}  // namespace fusereid
