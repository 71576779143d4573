#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptkr {

/// Nearest and next-nearest neighbor of a query point, by Euclidean distance
/// in the plane; equal distances tie-break toward the smaller index.
struct NeighborPair {
    std::size_t nn = 0;
    std::size_t nnn = 0;
    double d_nn = 0.0;
    double d_nnn = 0.0;
};

/// Uniform bucket grid over a point set, giving expected O(1) neighbor
/// queries at roughly uniform density. Exact: ring expansion continues until
/// no closer point can exist.
class PlaneIndex {
public:
    explicit PlaneIndex(std::span<const std::complex<double>> points);

    std::size_t size() const { return points_.size(); }

    /// Distances to the two closest other points (requires >= 3 points).
    NeighborPair two_nearest(std::size_t query) const;

    /// Distances to the kmax closest other points, ascending.
    std::vector<double> knn_distances(std::size_t query, std::size_t kmax) const;

private:
    struct Rank {
        double d;
        std::size_t idx;
        bool operator<(const Rank& o) const { return d < o.d || (d == o.d && idx < o.idx); }
    };

    void visit_cell(long cx, long cy, std::size_t query, std::vector<Rank>& best,
                    std::size_t kmax) const;
    long cell_x(double x) const;
    long cell_y(double y) const;

    std::vector<std::complex<double>> points_;
    std::vector<std::uint32_t> bucket_start_;  // CSR offsets, size nx*ny + 1
    std::vector<std::uint32_t> bucket_items_;
    long nx_ = 1, ny_ = 1;
    double x0_ = 0, y0_ = 0, cw_ = 1, ch_ = 1;
};

}  // namespace ptkr
