#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace fusereid {

/// Dense row-major matrix of doubles. Infinity is a legal entry and marks
/// "no temporal overlap" in trajectory distance matrices; it compares
/// larger than any finite value, which is exactly what ranking and the
/// update indicators need.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Mat&) const = default;

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<double> data_;
};

// Row-normalized affinities in [0,1] (N x N).
using AffinityMatrix = Mat;
// Pairwise embedding distances (N x N).
using FeatureDistanceMatrix = Mat;
// Mean aligned visual-to-wireless distance in meters, or infinity (N x M).
using TrajDistanceMatrix = Mat;

constexpr double kNoOverlap = std::numeric_limits<double>::infinity();

/// Shortest round-trip decimal text for a double; infinities become
/// "inf"/"-inf". Used everywhere a number is written to CSV so repeated
/// runs produce byte-identical files.
std::string format_double(double value);

/// Writes the matrix as bare CSV rows (no header). Infinity is "inf".
void write_csv(const Mat& m, std::ostream& out);

/// Reads a bare CSV matrix written by write_csv.
Mat read_csv_matrix(std::istream& in);

}  // namespace fusereid
