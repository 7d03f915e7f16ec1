#include "scissors/surface_library.hpp"

#include <algorithm>
#include <set>

#include "scissors/error.hpp"

namespace scissors {

TriSurface octahedron()
{
    return TriSurface::from_triangles(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                          {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

EmbeddedCircle octahedron_equator()
{
    return EmbeddedCircle{{1, 2, 3, 4}};
}

TriSurface torus7()
{
    std::vector<Triangle> tris;
    for (std::size_t i = 0; i < 7; ++i)
    {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 3) % 7, (i + 2) % 7});
    }
    return TriSurface::from_triangles(7, std::move(tris));
}

TriSurface disk()
{
    return TriSurface::from_triangles(3, {{0, 1, 2}});
}

MarkedSurface build_standard_marked(int genus, int boundary)
{
    if (genus < 0 || boundary < 0)
        domain_error("InvalidClass", "genus and boundary count must be nonnegative");

    // Sphere with h holes: a 3-row strip of squares with every other square
    // of the middle row removed, outer boundary coned off.
    std::size_t h = static_cast<std::size_t>(2 * genus + boundary);
    std::size_t width = 2 * h + 1;
    auto id = [&](std::size_t x, std::size_t y) { return y * (width + 1) + x; };
    RawComplex c;
    c.vertices = 4 * (width + 1) + 1;
    for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t x = 0; x < width; ++x)
        {
            if (y == 1 && x % 2 == 1)
                continue;
            std::size_t p00 = id(x, y), p10 = id(x + 1, y), p11 = id(x + 1, y + 1), p01 = id(x, y + 1);
            c.triangles.push_back({p00, p10, p11});
            c.triangles.push_back({p00, p11, p01});
        }
    std::size_t apex = 4 * (width + 1);
    std::vector<Cycle> holes(h);
    for (const auto& cycle : raw_boundary_cycles(c))
    {
        if (std::find(cycle.begin(), cycle.end(), id(0, 0)) != cycle.end())
        {
            for (std::size_t i = 0; i < cycle.size(); ++i)
                c.triangles.push_back({cycle[(i + 1) % cycle.size()], cycle[i], apex});
            continue;
        }
        for (std::size_t j = 0; j < h; ++j)
            if (std::find(cycle.begin(), cycle.end(), id(2 * j + 1, 1)) != cycle.end())
                holes[j] = cycle;
    }

    std::vector<Cycle> meridians;
    for (int j = 0; j < genus; ++j)
        meridians.push_back(raw_collar_paste(c, holes[2 * j], holes[2 * j + 1], 0));

    std::vector<std::size_t> relabel;
    MarkedSurface out;
    out.surface = canonicalize(c, &relabel);
    for (const auto& m : meridians)
    {
        Cycle mapped;
        for (std::size_t v : m)
            mapped.push_back(relabel[v]);
        out.meridians.push_back(EmbeddedCircle{std::move(mapped)});
    }
    return out;
}

TriSurface build_standard(int genus, int boundary)
{
    return build_standard_marked(genus, boundary).surface;
}

namespace {

// Index of a triangle with no vertex on the boundary.
std::size_t interior_triangle(const TriSurface& s)
{
    std::set<std::size_t> on_boundary;
    for (const auto& c : boundary_cycles(s))
        on_boundary.insert(c.begin(), c.end());
    for (std::size_t t = 0; t < s.triangles().size(); ++t)
    {
        const auto& tri = s.triangles()[t];
        if (!on_boundary.count(tri[0]) && !on_boundary.count(tri[1]) && !on_boundary.count(tri[2]))
            return t;
    }
    domain_error("NoInteriorTriangle", "surface has no triangle away from its boundary");
}

}  // namespace

TriSurface connected_sum(const TriSurface& a, const TriSurface& b)
{
    require_valid(a);
    require_valid(b);
    std::size_t ta = interior_triangle(a), tb = interior_triangle(b);
    RawComplex c;
    c.vertices = a.vertex_count() + b.vertex_count();
    for (std::size_t t = 0; t < a.triangles().size(); ++t)
        if (t != ta)
            c.triangles.push_back(a.triangles()[t]);
    std::size_t shift = a.vertex_count();
    for (std::size_t t = 0; t < b.triangles().size(); ++t)
        if (t != tb)
        {
            const auto& tri = b.triangles()[t];
            c.triangles.push_back({tri[0] + shift, tri[1] + shift, tri[2] + shift});
        }
    const auto& x = a.triangles()[ta];
    const auto& y = b.triangles()[tb];
    Cycle hole_a{x[0], x[2], x[1]};
    Cycle hole_b{y[0] + shift, y[2] + shift, y[1] + shift};
    raw_collar_paste(c, hole_a, hole_b, 0);
    return canonicalize(c);
}

TriSurface realize(const DiffeoClass& c)
{
    TriSurface out;
    for (const auto& [g, b] : c.components())
        out = disjoint_union(out, build_standard(g, b));
    return out;
}

}  // namespace scissors
