#pragma once

#include "sgo/types.hpp"

#include <vector>

namespace sgo {

/// Regular lattice over a box, ordered lexicographically with the first
/// coordinate most significant. Both ends of every axis are included, so the
/// corners of the region are always candidates.
class CandidateGrid {
public:
    /// 1001 points for d = 1, 101 per axis otherwise.
    static std::vector<int> default_resolution(Eigen::Index dim);

    explicit CandidateGrid(const Region& region);
    CandidateGrid(const Region& region, std::vector<int> points_per_axis);

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const Point& operator[](std::size_t index) const { return points_[index]; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] const Region& region() const { return region_; }
    /// Distance between neighbouring candidates along each axis.
    [[nodiscard]] const Point& spacing() const { return spacing_; }
    [[nodiscard]] const std::vector<int>& resolution() const { return resolution_; }

private:
    Region region_;
    std::vector<int> resolution_;
    Point spacing_;
    std::vector<Point> points_;
};

}  // namespace sgo
