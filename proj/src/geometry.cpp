#include "pdef/geometry.hpp"

#include <cmath>

namespace pdef {

double wrap(double coordinate) {
    // IEEE remainder is exact and rounds the quotient half-to-even,
    // giving a value in [-1/2, 1/2]; +1/2 is identified with -1/2.
    double r = std::remainder(coordinate, 1.0);
    if (r >= 0.5) r -= 1.0;
    if (r == 0.0) r = 0.0;  // drop negative zero
    return r;
}

double CirclePerimeter::dist(PerimeterPoint p1, PerimeterPoint p2) const {
    return pdef::dist(p1, p2);
}

double dist(double y1, double y2) {
    return std::fabs(wrap(y1 - y2));
}

double dist(PerimeterPoint p1, PerimeterPoint p2) {
    return dist(p1.coordinate(), p2.coordinate());
}

bool reachable(double speed, PerimeterPoint from, double t_from, PerimeterPoint to, double t_to) {
    if (t_to < t_from) {
        throw std::invalid_argument("reachable: t_to precedes t_from");
    }
    return dist(from, to) <= speed * (t_to - t_from);
}

double CanonicalFrame::to_canonical(double raw) const {
    return orientation * wrap(raw - origin);
}

double CanonicalFrame::to_raw(double canonical) const {
    return wrap(origin + orientation * canonical);
}

CanonicalPair canonicalize_pair(PerimeterPoint pos1, PerimeterPoint pos2) {
    CanonicalPair out;
    out.frame.origin = pos1.coordinate();
    const double offset = wrap(pos2.coordinate() - pos1.coordinate());
    out.frame.orientation = offset < 0.0 ? -1.0 : 1.0;
    out.separation = std::fabs(offset);
    return out;
}

}  // namespace pdef
