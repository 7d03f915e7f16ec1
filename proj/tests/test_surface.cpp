#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/surface.hpp"
#include "scissors/surface_library.hpp"

using namespace scissors;

namespace {

DiffeoClass cls(std::vector<DiffeoClass::Component> parts)
{
    return DiffeoClass(std::move(parts));
}

std::string error_code(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    return "";
}

std::vector<std::size_t> cycle_lengths(const TriSurface& s)
{
    std::vector<std::size_t> out;
    for (const auto& c : boundary_cycles(s))
        out.push_back(c.size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("validate: fixtures and violations")
{
    CHECK(validate(octahedron()).ok);
    CHECK(validate(disk()).ok);
    CHECK(validate(torus7()).ok);

    // Same triangle twice, glued along two edges with matching directions.
    TriSurface twisted(3, {{0, 1, 2}, {0, 1, 2}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}});
    ValidationReport r = validate(twisted);
    CHECK_FALSE(r.ok);
    CHECK(r.invariant == "Orientation");

    CHECK(validate(TriSurface(2, {{0, 1, 2}}, {})).invariant == "VertexRange");
    CHECK(validate(TriSurface(4, {{0, 1, 2}}, {})).invariant == "IsolatedVertex");
    CHECK(validate(TriSurface::from_triangles(4, {{0, 1, 2}, {0, 2, 1}})).invariant == "DuplicateTriangle");
    // Glue information missing for a shared edge.
    CHECK(validate(TriSurface(4, {{0, 1, 2}, {1, 0, 3}}, {})).invariant == "UngluedEdges");
    // Two disks sharing only a vertex: the link there is two paths.
    CHECK(validate(TriSurface::from_triangles(5, {{0, 1, 2}, {0, 3, 4}})).invariant == "VertexLink");
    // Three triangles on one edge.
    CHECK(validate(TriSurface::from_triangles(5, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}})).invariant
          == "EdgeMultiplicity");
}

TEST_CASE("euler characteristic and classification of fixtures")
{
    CHECK(euler_characteristic(octahedron()) == 2);
    CHECK(euler_characteristic(torus7()) == 0);
    CHECK(euler_characteristic(disk()) == 1);
    CHECK(classify(octahedron()) == cls({{0, 0}}));
    CHECK(classify(disk()) == cls({{0, 1}}));
    CHECK(classify(torus7()) == cls({{1, 0}}));
    CHECK(classify(disjoint_union(torus7(), disk())) == cls({{1, 0}, {0, 1}}));
    CHECK(classify(disjoint_union(torus7(), disk())).to_string() == "{(0,1),(1,0)}");
    CHECK(classify(TriSurface()).to_string() == "{}");
}

TEST_CASE("disjoint union")
{
    CHECK(disjoint_union(octahedron(), TriSurface()) == canonicalize(raw(octahedron())));
    CHECK(classify(disjoint_union(disk(), disk())) == cls({{0, 1}, {0, 1}}));
    std::vector<TriSurface> pool = {octahedron(), torus7(), disk(), build_standard(1, 2), build_standard(0, 3)};
    for (const auto& a : pool)
        for (const auto& b : pool)
        {
            TriSurface u = disjoint_union(a, b);
            CHECK(euler_characteristic(u) == euler_characteristic(a) + euler_characteristic(b));
            CHECK(classify(u) == classify(a) + classify(b));
        }
}

TEST_CASE("build_standard covers the small classes")
{
    for (int g = 0; g <= 3; ++g)
        for (int b = 0; b <= 3; ++b)
        {
            TriSurface s = build_standard(g, b);
            CHECK(validate(s).ok);
            CHECK(classify(s) == cls({{g, b}}));
            CHECK(euler_characteristic(s) == 2 - 2 * g - b);
        }
}

TEST_CASE("cut: sphere along the equator gives two disks")
{
    CutResult r = cut(octahedron(), octahedron_equator());
    CHECK(classify(r.surface) == cls({{0, 1}, {0, 1}}));
    CHECK(euler_characteristic(r.surface) == 2);
    REQUIRE(r.circles.size() == 1);
    CHECK(r.circles[0].first.size() == 4);
    CHECK(r.circles[0].second.size() == 4);
}

TEST_CASE("cut: torus along a triangle boundary and along a meridian")
{
    TriSurface t = torus7();
    CutResult r = cut(t, EmbeddedCircle{{0, 1, 3}});
    // Oracle: chi and boundary count of each piece.
    DiffeoClass c = classify(r.surface);
    CHECK(c == cls({{0, 1}, {1, 1}}));
    for (const auto& [g, b] : c.components())
        CHECK(2 - 2 * g - b == (g == 0 ? 1 : -1));

    CHECK(error_code([&] { cut(t, EmbeddedCircle{{0, 1, 2, 3, 4, 5, 6}}); }) == "NonSeparating");
    CHECK(error_code([&] { cut(disk(), EmbeddedCircle{{0, 1, 2}}); }) == "CircleTouchesBoundary");
    CHECK(error_code([&] { cut(t, EmbeddedCircle{{0, 1}}); }) == "InvalidCircle");
}

TEST_CASE("double_circle: torus meridian and sphere equator")
{
    MarkedSurface torus = build_standard_marked(1, 0);
    REQUIRE(torus.meridians.size() == 1);
    CHECK(error_code([&] { cut(torus.surface, torus.meridians[0]); }) == "NonSeparating");
    DoubledCircle d = double_circle(torus.surface, torus.meridians[0]);
    CutResult r = cut(d.surface, {d.first, d.second});
    CHECK(classify(r.surface) == cls({{0, 2}, {0, 2}}));
    CHECK(euler_characteristic(r.surface) == 0);

    DoubledCircle e = double_circle(octahedron(), octahedron_equator());
    CutResult re = cut(e.surface, {e.first, e.second});
    CHECK(classify(re.surface) == cls({{0, 1}, {0, 2}, {0, 1}}));
    CHECK(euler_characteristic(re.surface) == 2);
}

TEST_CASE("paste: disks to a sphere, annulus to a torus, round trips")
{
    TriSurface two = disjoint_union(disk(), disk());
    auto cycles = boundary_cycles(two);
    REQUIRE(cycles.size() == 2);
    TriSurface sphere = paste(two, BoundaryGluing{cycles[0], cycles[1], 0, true});
    CHECK(classify(sphere) == cls({{0, 0}}));

    TriSurface annulus = build_standard(0, 2);
    auto ac = boundary_cycles(annulus);
    TriSurface torus = paste(annulus, BoundaryGluing{ac[0], ac[1], 1, true});
    CHECK(classify(torus) == cls({{1, 0}}));
    CHECK(euler_characteristic(torus) == 0);

    CHECK(error_code([&] { paste(annulus, BoundaryGluing{ac[0], ac[1], 0, false}); }) == "OrientationClash");
    TriSurface lopsided = disjoint_union(disk(), refine_boundary(disk(), {0, 1, 2}, 5));
    auto lc = boundary_cycles(lopsided);
    CHECK(error_code([&] { paste(lopsided, BoundaryGluing{lc[0], lc[1], 0, true}); }) == "LengthMismatch");

    CutResult r = cut(octahedron(), octahedron_equator());
    TriSurface back = paste(r.surface, canonical_regluing(r.circles[0]));
    CHECK(classify(back) == classify(octahedron()));
    CHECK(euler_characteristic(back) == 2);
}

TEST_CASE("refine_boundary")
{
    TriSurface d = refine_boundary(disk(), {0, 1, 2}, 4);
    CHECK(classify(d) == cls({{0, 1}}));
    CHECK(cycle_lengths(d) == std::vector<std::size_t>{4});
    CHECK(euler_characteristic(d) == 1);
    CHECK(refine_boundary(disk(), {0, 1, 2}, 3) == canonicalize(raw(disk())));
    CHECK(error_code([&] { refine_boundary(disk(), {0, 1, 2}, 2); }) == "ShrinkRequested");
    TriSurface big = refine_boundary(build_standard(1, 1), boundary_cycles(build_standard(1, 1))[0], 11);
    CHECK(classify(big) == cls({{1, 1}}));
    CHECK(cycle_lengths(big) == std::vector<std::size_t>{11});
}

TEST_CASE("sk_move keeps class and chi")
{
    TriSurface genus2 = connected_sum(torus7(), torus7());
    CHECK(classify(genus2) == cls({{2, 0}}));
    auto circles = find_separating_circles(genus2);
    bool found_split = false;
    for (const auto& sc : circles)
    {
        if (!(sc.left == DiffeoClass::Component{1, 1} && sc.right == DiffeoClass::Component{1, 1}))
            continue;
        found_split = true;
        for (std::size_t offset : {0u, 1u, 2u})
        {
            Regluing r = Regluing::identity(1);
            r.offsets[0] = offset;
            TriSurface moved = sk_move(genus2, {sc.circle}, r);
            CHECK(classify(moved) == cls({{2, 0}}));
            CHECK(euler_characteristic(moved) == -2);
        }
    }
    CHECK(found_split);
}

TEST_CASE("separating circles report the classes of both sides")
{
    std::vector<TriSurface> pool = {octahedron(), torus7(), build_standard(2, 1), build_standard(0, 3),
                                    disjoint_union(torus7(), octahedron())};
    for (const auto& s : pool)
    {
        auto circles = find_separating_circles(s);
        CHECK_FALSE(circles.empty());
        for (const auto& sc : circles)
        {
            CutResult r = cut(s, sc.circle);
            DiffeoClass expected = classify(r.surface);
            DiffeoClass original = classify(s);
            // The cut replaces one component by the two reported sides.
            std::vector<DiffeoClass::Component> parts = expected.components();
            auto drop = [&](DiffeoClass::Component c) {
                auto it = std::find(parts.begin(), parts.end(), c);
                REQUIRE(it != parts.end());
                parts.erase(it);
            };
            drop(sc.left);
            drop(sc.right);
            CHECK(parts.size() + 1 == original.size());
        }
    }
}

TEST_CASE("random cut/paste round trips preserve class, chi and boundary lengths")
{
    std::mt19937_64 rng(3);
    std::vector<TriSurface> pool;
    for (int g = 0; g <= 2; ++g)
        for (int b = 0; b <= 2; ++b)
            pool.push_back(build_standard(g, b));
    pool.push_back(torus7());
    pool.push_back(octahedron());
    int done = 0;
    for (int trial = 0; trial < 40; ++trial)
    {
        const TriSurface& s = pool[trial % pool.size()];
        auto circles = find_separating_circles(s);
        if (circles.empty())
            continue;
        const auto& sc = circles[rng() % circles.size()];
        CutResult r = cut(s, sc.circle);
        CHECK(euler_characteristic(r.surface) == euler_characteristic(s));
        CHECK(boundary_cycles(r.surface).size() == boundary_cycles(s).size() + 2);
        TriSurface back = paste(r.surface, canonical_regluing(r.circles[0]));
        CHECK(classify(back) == classify(s));
        CHECK(euler_characteristic(back) == euler_characteristic(s));
        CHECK(cycle_lengths(back) == cycle_lengths(s));
        ++done;
    }
    CHECK(done > 30);
}
