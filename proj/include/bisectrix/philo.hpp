#pragma once

#include <array>
#include <cstdint>

#include "bisectrix/geom.hpp"

namespace bisectrix {

/// An angle with vertex B and two unit ray directions, plus an interior point.
/// Directions are normalized and ordered so that cross(dir1, dir2) > 0.
struct AngleScene {
    Point2 vertex;
    Point2 dir1, dir2;
    Point2 interior;

    AngleScene(Point2 vertex_, Point2 dir1_, Point2 dir2_, Point2 interior_);

    /// Oblique coordinates of the interior point in the ray basis; both
    /// strictly positive.
    std::pair<double, double> ray_coords() const;
};

struct PhiloSolution {
    Point2 E, F;    // endpoints on the two rays
    Point2 G;       // perpendicular foot of the vertex on EF
    double length;
    double theta;   // direction angle of the optimal transversal
    double residual;  // | |ED| - |FG| |
};

/// Endpoints of the transversal through the interior point with direction
/// angle theta; theta must lie in the open valid interval.
std::pair<Point2, Point2> transversal_at(const AngleScene& s, double theta);

/// Open interval of direction angles for which the transversal meets both
/// rays with the interior point between the hits.
std::pair<double, double> transversal_interval(const AngleScene& s);

PhiloSolution philo_solve(const AngleScene& s);

/// Closed form for the axis-aligned right angle with interior point (p, q).
struct RightAnglePhilo {
    double length;
    Point2 E, F;
};

RightAnglePhilo philo_right_angle(double p, double q);

/// Minimum over sampled alternative transversals of |E1F1| - |EF|, plus the
/// symmetric-placement residual of D and G about the midpoint of EF.
struct Problem4Report {
    double min_excess;
    double symmetry_residual;
};

Problem4Report problem4_check(const AngleScene& s, const PhiloSolution& sol, int n,
                              std::uint64_t seed);

/// Philo lines through the incenter of the 3-4-5 right triangle, one per
/// vertex angle, shortest first reported.
struct Incenter345Report {
    std::array<PhiloSolution, 3> per_vertex;  // right angle, then the two acute
    int shortest_index;
    double shortest_length;
};

Incenter345Report philo_incenter_345();

}  // namespace bisectrix
