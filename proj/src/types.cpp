#include "sgo/types.hpp"

#include "sgo/errors.hpp"

#include <cmath>
#include <sstream>

namespace sgo {

Region::Region(Point lo, Point hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() == 0 || lower.size() != upper.size()) {
        throw InvalidArgument("region bounds must be non-empty and of equal dimension");
    }
    for (Eigen::Index k = 0; k < lower.size(); ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || !(lower[k] < upper[k])) {
            throw InvalidArgument("region requires finite bounds with lower < upper in every coordinate");
        }
    }
}

Region::Region(double lo, double hi) : Region(make_point({lo}), make_point({hi})) {}

bool Region::contains(const Point& x) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (!(x[k] >= lower[k] && x[k] <= upper[k])) return false;
    }
    return true;
}

double max_norm_distance(const Point& a, const Point& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

Point make_point(std::initializer_list<double> coords) {
    Point x(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index k = 0;
    for (double c : coords) x[k++] = c;
    return x;
}

std::string format_point(const Point& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (k) os << ", ";
        os << x[k];
    }
    os << ')';
    return os.str();
}

}  // namespace sgo
