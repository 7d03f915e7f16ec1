#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/euler.hpp"
#include "scissors/sk.hpp"
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

// Homology of a compact orientable surface from its components:
// H0 = Z^components, H1 = sum of 2g (closed) or 2g + b - 1, H2 = Z^closed.
std::array<std::size_t, 3> expected_betti(const DiffeoClass& c)
{
    std::array<std::size_t, 3> b{0, 0, 0};
    for (auto [g, bd] : c.components())
    {
        b[0] += 1;
        b[1] += bd == 0 ? 2 * g : 2 * g + bd - 1;
        b[2] += bd == 0 ? 1 : 0;
    }
    return b;
}

void check_surface_homology(const TriSurface& s)
{
    HomologyType h = homology(chains_of(s));
    auto b = expected_betti(classify(s));
    for (int n = 0; n <= 2; ++n)
    {
        CHECK(h.at(n).free_rank == b[n]);
        CHECK(h.at(n).torsion.empty());
    }
    CHECK(k0_class(chains_of(s)) == euler_characteristic(s));
}

std::vector<TriSurface> sample_surfaces()
{
    std::vector<TriSurface> out{octahedron(), torus7(), disk()};
    for (int g = 0; g <= 2; ++g)
        for (int b = 0; b <= 3; ++b)
            out.push_back(build_standard(g, b));
    out.push_back(disjoint_union(build_standard(1, 1), build_standard(0, 2)));
    out.push_back(disjoint_union(torus7(), disk()));
    return out;
}

std::vector<SquareInstance> generated_squares()
{
    std::vector<SquareInstance> out;
    auto surfaces = sample_surfaces();
    for (const auto& s : surfaces)
    {
        auto separating = find_separating_circles(s);
        for (std::size_t i = 0; i < separating.size() && i < 3; ++i)
            out.push_back(collar_square(s, separating[i].circle));
    }
    for (int g = 1; g <= 2; ++g)
        for (int b = 0; b <= 2; ++b)
            for (const auto& m : build_standard_marked(g, b).meridians)
                out.push_back(collar_square(build_standard_marked(g, b).surface, m));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j)
            out.push_back(coproduct_square(surfaces[i], surfaces[j]));
    return out;
}

}  // namespace

TEST_CASE("chains of fixture surfaces")
{
    ChainComplex oct = chains_of(octahedron());
    CHECK(oct.ranks() == std::vector<std::size_t>{6, 12, 8});
    CHECK(homology(oct).to_string() == "H0=Z^1 H1=0 H2=Z^1");
    CHECK(chains_of(disk()).ranks() == std::vector<std::size_t>{3, 3, 1});
    CHECK(homology(chains_of(torus7())).to_string() == "H0=Z^1 H1=Z^2 H2=Z^1");
    CHECK(edge_list(disk()).size() == 3);
    for (const auto& s : sample_surfaces())
        check_surface_homology(s);
}

TEST_CASE("induced maps of sub-surfaces")
{
    ChainMap id = induced_chain_map(disk(), disk(), {0, 1, 2});
    CHECK(id.levelwise_injective());
    CHECK(error_code([] { induced_chain_map(disk(), octahedron(), {0, 0, 1}); }) == "NotASubcomplex");
    CHECK(error_code([] { induced_chain_map(disk(), disk(), {0, 1}); }) == "NotASubcomplex");
}

TEST_CASE("equator collar square of the octahedron")
{
    SquareInstance q = collar_square(octahedron(), octahedron_equator());
    CHECK(classify(q.a) == cls({{0, 2}}));
    CHECK(classify(q.b) == cls({{0, 1}}));
    CHECK(classify(q.c) == cls({{0, 1}}));
    CHECK(classify(q.d) == cls({{0, 0}}));
    SquareReport r = functor_on_square(q);
    CHECK(r.pass);
    CHECK(r.chi_additive);
    CHECK(r.pushout_homology == r.target_homology);
    CHECK(r.target_homology.to_string() == "H0=Z^1 H1=0 H2=Z^1");
}

TEST_CASE("coproduct square")
{
    SquareInstance q = coproduct_square(torus7(), disk());
    CHECK(q.a.empty());
    CHECK(classify(q.d) == cls({{0, 1}, {1, 0}}));
    SquareReport r = functor_on_square(q);
    CHECK(r.pass);
    CHECK(r.pushout_homology.to_string() == "H0=Z^2 H1=Z^2 H2=Z^1");
}

TEST_CASE("annulus self-gluing gives the torus")
{
    MarkedSurface t = build_standard_marked(1, 0);
    SquareInstance q = collar_square(t.surface, t.meridians.at(0));
    CHECK(classify(q.a) == cls({{0, 2}, {0, 2}}));
    CHECK(classify(q.b) == cls({{0, 2}}));
    CHECK(classify(q.c) == cls({{0, 2}}));
    CHECK(classify(q.d) == cls({{1, 0}}));
    SquareReport r = functor_on_square(q);
    CHECK(r.pass);
    CHECK(r.pushout_homology.to_string() == "H0=Z^1 H1=Z^2 H2=Z^1");
}

TEST_CASE("square_from_cover rejects bad covers")
{
    TriSurface oct = octahedron();
    std::size_t n = oct.triangles().size();
    std::vector<bool> none(n, false), all(n, true);
    CHECK(error_code([&] { square_from_cover(oct, none, none); }) == "InvalidSquare");
    CHECK(error_code([&] { square_from_cover(oct, all, std::vector<bool>(n - 1, true)); }) == "InvalidSquare");
    // Upper and lower hemispheres meet along the equator, which is not in A = Ø.
    std::vector<bool> upper(n), lower(n);
    for (std::size_t t = 0; t < n; ++t)
    {
        bool top = false;
        for (std::size_t v : oct.triangles()[t])
            top = top || v == 0;
        upper[t] = top;
        lower[t] = !top;
    }
    CHECK(error_code([&] { square_from_cover(oct, upper, lower); }) == "InvalidSquare");
    SquareInstance whole = square_from_cover(oct, all, upper);
    CHECK(functor_on_square(whole).pass);
}

TEST_CASE("generated squares commute with homology")
{
    auto squares = generated_squares();
    CHECK(squares.size() >= 50);
    for (const auto& q : squares)
    {
        INFO(q.origin);
        CHECK(induced_chain_map(q.a, q.b, q.a_to_b).levelwise_injective());
        CHECK(induced_chain_map(q.a, q.c, q.a_to_c).levelwise_injective());
        CHECK(induced_chain_map(q.b, q.d, q.b_to_d).levelwise_injective());
        CHECK(induced_chain_map(q.c, q.d, q.c_to_d).levelwise_injective());
        SquareReport r = functor_on_square(q);
        CHECK(r.pass);
        CHECK_FALSE(r.failing_degree.has_value());
    }
    Pi0Report p = pi0_commutation(sample_surfaces(), squares);
    CHECK(p.passed());
    CHECK(p.squares == squares.size());
}

TEST_CASE("pi0: closed forms, the empty surface and both sides of the genus-two relation")
{
    std::vector<TriSurface> generators;
    for (int g = 0; g <= 3; ++g)
        for (int b = 0; b <= 3; ++b)
        {
            generators.push_back(build_standard(g, b));
            CHECK(k0_class(chains_of(generators.back())) == 2 - 2 * g - b);
        }
    CHECK(pi0_commutation(generators).passed());
    CHECK(k0_class(chains_of(TriSurface())) == 0);

    TriSurface left = disjoint_union(connected_sum(torus7(), torus7()), octahedron());
    TriSurface right = disjoint_union(torus7(), torus7());
    CHECK(k0_class(chains_of(left)) == 0);
    CHECK(k0_class(chains_of(right)) == 0);
}

TEST_CASE("pi0: equal SK coordinates give equal k0 classes")
{
    SKGroup group(build_sk2_boundary({3, 3, 3}));
    std::map<IntVector, long> seen;
    for (const auto& type : connected_types({3, 3, 3}))
    {
        TriSurface s = build_standard(type.first, type.second);
        long k = k0_class(chains_of(s));
        auto [it, fresh] = seen.emplace(group.class_of(s).coordinates, k);
        CHECK((fresh || it->second == k));
    }
}

TEST_CASE("squares on randomized move outputs")
{
    std::mt19937_64 rng(17);
    std::size_t checked = 0;
    for (int trial = 0; trial < 30; ++trial)
    {
        TriSurface s = build_standard(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
        auto circles = find_separating_circles(s);
        REQUIRE_FALSE(circles.empty());
        const EmbeddedCircle& c = circles[rng() % circles.size()].circle;
        TriSurface moved = sk_move(s, {c}, Regluing{{0}, {rng() % c.vertices.size()}});
        CHECK(k0_class(chains_of(moved)) == euler_characteristic(s));
        auto after = find_separating_circles(moved);
        if (after.empty())
            continue;
        SquareInstance q = collar_square(moved, after[rng() % after.size()].circle);
        CHECK(functor_on_square(q).pass);
        ++checked;
    }
    CHECK(checked >= 20);
}
