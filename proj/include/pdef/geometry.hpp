#pragma once

#include <stdexcept>

namespace pdef {

// Arc-length coordinate on a unit-circumference circle, reduced into [-1/2, 1/2).
double wrap(double coordinate);

class PerimeterPoint {
public:
    PerimeterPoint() = default;
    explicit PerimeterPoint(double coordinate) : coordinate_(wrap(coordinate)) {}

    double coordinate() const { return coordinate_; }

    friend bool operator==(const PerimeterPoint&, const PerimeterPoint&) = default;

private:
    double coordinate_ = 0.0;
};

// Minimal perimeter interface; only the circle is implemented.
class Perimeter {
public:
    virtual ~Perimeter() = default;
    virtual double dist(PerimeterPoint p1, PerimeterPoint p2) const = 0;
};

class CirclePerimeter final : public Perimeter {
public:
    double circumference() const { return 1.0; }
    double dist(PerimeterPoint p1, PerimeterPoint p2) const override;
};

// Shortest arc length on the unit circle, in [0, 1/2].
double dist(PerimeterPoint p1, PerimeterPoint p2);
double dist(double y1, double y2);

// Can a defender of the given speed at (from, t_from) be at (to, t_to)?
// Exact <= comparison, no tolerance. Throws if t_to < t_from.
bool reachable(double speed, PerimeterPoint from, double t_from, PerimeterPoint to, double t_to);

// Maps raw coordinates into the frame where defender 1 sits at 0 and
// defender 2 at +separation. canonical(y) = orientation * wrap(y - origin).
struct CanonicalFrame {
    double origin = 0.0;
    double orientation = 1.0;  // +1 or -1 (reflection)

    double to_canonical(double raw) const;
    double to_raw(double canonical) const;
};

struct CanonicalPair {
    double separation = 0.0;
    CanonicalFrame frame;
};

CanonicalPair canonicalize_pair(PerimeterPoint pos1, PerimeterPoint pos2);

}  // namespace pdef
