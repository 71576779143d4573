#include "neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "errors.hpp"

namespace ptkr {

PlaneIndex::PlaneIndex(std::span<const std::complex<double>> points)
    : points_(points.begin(), points.end()) {
    std::size_t n = points_.size();
    require(n >= 2, ErrorCode::invalid_argument, "need at least 2 points");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& p : points_) {
        require(std::isfinite(p.real()) && std::isfinite(p.imag()), ErrorCode::invalid_argument,
                "non-finite point");
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    double wx = xmax - xmin, wy = ymax - ymin;
    double pad = std::max({wx, wy, 1.0}) * 1e-12;
    wx = std::max(wx, pad);
    wy = std::max(wy, pad);

    long g = std::max<long>(1, static_cast<long>(std::sqrt(static_cast<double>(n) / 2.0)));
    nx_ = g;
    ny_ = g;
    x0_ = xmin;
    y0_ = ymin;
    cw_ = wx / static_cast<double>(nx_);
    ch_ = wy / static_cast<double>(ny_);

    std::vector<std::uint32_t> counts(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> cell(n);
    for (std::size_t i = 0; i < n; ++i) {
        cell[i] = static_cast<std::size_t>(cell_y(points_[i].imag()) * nx_ + cell_x(points_[i].real()));
        ++counts[cell[i] + 1];
    }
    for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
    bucket_start_ = counts;
    bucket_items_.resize(n);
    std::vector<std::uint32_t> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) bucket_items_[cursor[cell[i]]++] = static_cast<std::uint32_t>(i);
}

long PlaneIndex::cell_x(double x) const {
    long c = static_cast<long>(std::floor((x - x0_) / cw_));
    return std::clamp<long>(c, 0, nx_ - 1);
}

long PlaneIndex::cell_y(double y) const {
    long c = static_cast<long>(std::floor((y - y0_) / ch_));
    return std::clamp<long>(c, 0, ny_ - 1);
}

void PlaneIndex::visit_cell(long cx, long cy, std::size_t query, std::vector<Rank>& best,
                            std::size_t kmax) const {
    if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) return;
    std::size_t c = static_cast<std::size_t>(cy * nx_ + cx);
    const std::complex<double> q = points_[query];
    for (std::uint32_t s = bucket_start_[c]; s < bucket_start_[c + 1]; ++s) {
        std::size_t i = bucket_items_[s];
        if (i == query) continue;
        Rank r{std::abs(points_[i] - q), i};
        if (best.size() < kmax) {
            best.push_back(r);
            std::push_heap(best.begin(), best.end());
        } else if (r < best.front()) {
            std::pop_heap(best.begin(), best.end());
            best.back() = r;
            std::push_heap(best.begin(), best.end());
        }
    }
}

std::vector<double> PlaneIndex::knn_distances(std::size_t query, std::size_t kmax) const {
    require(query < points_.size(), ErrorCode::invalid_argument, "query index out of range");
    require(kmax >= 1 && kmax <= points_.size() - 1, ErrorCode::invalid_argument,
            "kmax out of range");
    std::vector<Rank> best;
    best.reserve(kmax + 1);
    long qx = cell_x(points_[query].real());
    long qy = cell_y(points_[query].imag());
    double cell_min = std::min(cw_, ch_);
    long max_ring = std::max(nx_, ny_);
    for (long ring = 0; ring <= max_ring; ++ring) {
        if (ring == 0) {
            visit_cell(qx, qy, query, best, kmax);
        } else {
            for (long dx = -ring; dx <= ring; ++dx) {
                visit_cell(qx + dx, qy - ring, query, best, kmax);
                visit_cell(qx + dx, qy + ring, query, best, kmax);
            }
            for (long dy = -ring + 1; dy <= ring - 1; ++dy) {
                visit_cell(qx - ring, qy + dy, query, best, kmax);
                visit_cell(qx + ring, qy + dy, query, best, kmax);
            }
        }
        // Any point in ring r+1 is at least r * cell_min away.
        if (best.size() == kmax && best.front().d <= static_cast<double>(ring) * cell_min) break;
    }
    std::sort_heap(best.begin(), best.end());
    std::vector<double> out(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) out[i] = best[i].d;
    return out;
}

NeighborPair PlaneIndex::two_nearest(std::size_t query) const {
    require(points_.size() >= 3, ErrorCode::invalid_argument, "need at least 3 points");
    std::vector<Rank> best;
    best.reserve(3);
    long qx = cell_x(points_[query].real());
    long qy = cell_y(points_[query].imag());
    double cell_min = std::min(cw_, ch_);
    long max_ring = std::max(nx_, ny_);
    for (long ring = 0; ring <= max_ring; ++ring) {
        if (ring == 0) {
            visit_cell(qx, qy, query, best, 2);
        } else {
            for (long dx = -ring; dx <= ring; ++dx) {
                visit_cell(qx + dx, qy - ring, query, best, 2);
                visit_cell(qx + dx, qy + ring, query, best, 2);
            }
            for (long dy = -ring + 1; dy <= ring - 1; ++dy) {
                visit_cell(qx - ring, qy + dy, query, best, 2);
                visit_cell(qx + ring, qy + dy, query, best, 2);
            }
        }
        if (best.size() == 2 && best.front().d <= static_cast<double>(ring) * cell_min) break;
    }
    std::sort_heap(best.begin(), best.end());
    NeighborPair pair;
    pair.nn = best[0].idx;
    pair.d_nn = best[0].d;
    pair.nnn = best[1].idx;
    pair.d_nnn = best[1].d;
    return pair;
}

}  // namespace ptkr
