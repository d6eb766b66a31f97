#include "sgo/grid.hpp"

#include "sgo/errors.hpp"

namespace sgo {

std::vector<int> CandidateGrid::default_resolution(Eigen::Index dim) {
    return std::vector<int>(static_cast<std::size_t>(dim), dim == 1 ? 1001 : 101);
}

CandidateGrid::CandidateGrid(const Region& region) : CandidateGrid(region, default_resolution(region.dim())) {}

CandidateGrid::CandidateGrid(const Region& region, std::vector<int> points_per_axis)
    : region_(region), resolution_(std::move(points_per_axis)) {
    const auto d = region_.dim();
    if (static_cast<Eigen::Index>(resolution_.size()) != d) {
        throw InvalidArgument("grid resolution must give one count per dimension");
    }
    std::size_t total = 1;
    spacing_.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const int r = resolution_[static_cast<std::size_t>(k)];
        if (r < 2) throw InvalidArgument("grid resolution must be at least 2 points per axis");
        total *= static_cast<std::size_t>(r);
        spacing_[k] = (region_.upper[k] - region_.lower[k]) / (r - 1);
    }

    auto coordinate = [&](Eigen::Index axis, int step) {
        const int last = resolution_[static_cast<std::size_t>(axis)] - 1;
        if (step == last) return region_.upper[axis];
        const double t = static_cast<double>(step) / last;
        return region_.lower[axis] + (region_.upper[axis] - region_.lower[axis]) * t;
    };

    points_.reserve(total);
    std::vector<int> steps(static_cast<std::size_t>(d), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Point x(d);
        for (Eigen::Index k = 0; k < d; ++k) x[k] = coordinate(k, steps[static_cast<std::size_t>(k)]);
        points_.push_back(std::move(x));
        // odometer increment, last axis fastest
        for (Eigen::Index k = d - 1; k >= 0; --k) {
            auto& s = steps[static_cast<std::size_t>(k)];
            if (++s < resolution_[static_cast<std::size_t>(k)]) break;
            s = 0;
        }
    }
}

}  // namespace sgo
