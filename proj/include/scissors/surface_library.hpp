#pragma once

#include <vector>

#include "scissors/surface.hpp"

namespace scissors {

TriSurface octahedron();

/// Seven-vertex torus: triangles (i, i+1, i+3) and (i, i+3, i+2) mod 7.
TriSurface torus7();

/// A single triangle.
TriSurface disk();

/// Equator 1-2-3-4 of octahedron().
EmbeddedCircle octahedron_equator();

/// Connected surface of genus g with b boundary circles.
TriSurface build_standard(int genus, int boundary);

struct MarkedSurface
{
    TriSurface surface;
    std::vector<EmbeddedCircle> meridians;  // one non-separating circle per handle
};

MarkedSurface build_standard_marked(int genus, int boundary);

/// Removes one interior triangle from each and joins the two holes.
TriSurface connected_sum(const TriSurface& a, const TriSurface& b);

/// One surface per component of the class, disjointly united.
TriSurface realize(const DiffeoClass& c);

}  // namespace scissors
