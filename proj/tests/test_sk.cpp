#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/sk.hpp"
#include "scissors/surface_library.hpp"

using namespace scissors;

namespace {

DiffeoClass cls(std::vector<DiffeoClass::Component> parts)
{
    return DiffeoClass(std::move(parts));
}

IntVector scaled(IntVector v, long k)
{
    for (auto& x : v)
        x *= k;
    return v;
}

bool all_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Oracle for gluing_outcomes: realize the pieces, glue circle i of the first
// side to circle perm[i] of the second for every permutation, classify.
std::set<DiffeoClass> concrete_outcomes(const DiffeoClass& m1, const DiffeoClass& m2)
{
    std::set<DiffeoClass> out;
    RawComplex base = raw(realize(m1));
    std::size_t shift = base.vertices;
    RawComplex other = raw(realize(m2));
    base.vertices += other.vertices;
    for (const auto& t : other.triangles)
        base.triangles.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
    std::vector<Cycle> left, right;
    for (const auto& c : raw_boundary_cycles(base))
        (c[0] < shift ? left : right).push_back(c);
    REQUIRE(left.size() == right.size());
    std::vector<std::size_t> perm(left.size());
    std::iota(perm.begin(), perm.end(), 0);
    do
    {
        RawComplex c = base;
        std::vector<Cycle> l = left, r = right;
        for (std::size_t i = 0; i < l.size(); ++i)
        {
            std::size_t len = std::max(l[i].size(), r[perm[i]].size());
            l[i] = raw_refine(c, l[i], len);
            r[perm[i]] = raw_refine(c, r[perm[i]], len);
        }
        for (std::size_t i = 0; i < l.size(); ++i)
            raw_collar_paste(c, l[i], r[perm[i]], 0);
        TriSurface s = canonicalize(c);
        REQUIRE(validate(s).ok);
        out.insert(classify(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TEST_CASE("gluing_outcomes agrees with concrete gluing")
{
    std::vector<std::pair<DiffeoClass, DiffeoClass>> cases = {
        {cls({{0, 2}}), cls({{0, 2}})},
        {cls({{0, 2}, {0, 2}}), cls({{0, 2}, {0, 2}})},
        {cls({{1, 1}, {0, 1}}), cls({{1, 1}, {0, 1}})},
        {cls({{0, 2}}), cls({{0, 1}, {0, 1}})},
        {cls({{0, 3}}), cls({{0, 1}, {0, 2}})},
        {cls({{1, 2}}), cls({{0, 1}, {1, 1}})},
    };
    for (const auto& [a, b] : cases)
    {
        auto got = gluing_outcomes(a, b);
        INFO(a.to_string() << " | " << b.to_string());
        CHECK(std::set<DiffeoClass>(got.begin(), got.end()) == concrete_outcomes(a, b));
    }
    CHECK(gluing_outcomes(cls({{0, 2}, {0, 2}}), cls({{0, 2}, {0, 2}}))
          == std::vector<DiffeoClass>{cls({{1, 0}}), cls({{1, 0}, {1, 0}})});
    CHECK_THROWS_AS(gluing_outcomes(cls({{0, 1}}), cls({{0, 2}})), Error);
    CHECK_THROWS_AS(gluing_outcomes(cls({{0, 1}, {0, 0}}), cls({{0, 1}, {0, 0}})), Error);
}

TEST_CASE("closed SK2 is Z with [Sigma_g] = (1 - g)[S^2]")
{
    SKGroup g(build_sk2());
    CHECK(g.quotient()->invariants().to_string() == "Z^1");
    IntVector sphere = g.class_of(cls({{0, 0}})).coordinates;
    for (int genus = 0; genus <= 3; ++genus)
        CHECK(g.class_of(cls({{genus, 0}})).coordinates == scaled(sphere, 1 - genus));
    CHECK(all_zero(g.class_of(cls({{1, 0}})).coordinates));
    CHECK_THROWS_AS(g.class_of(cls({{0, 1}})), Error);
    // Genus two plus a sphere against two tori.
    CHECK(g.class_of(cls({{2, 0}, {0, 0}})) == g.class_of(cls({{1, 0}, {1, 0}})));
}

TEST_CASE("SK2 with boundary is Z^2 and additive")
{
    SKGroup g(build_sk2_boundary({3, 3, 3}));
    CHECK(g.quotient()->invariants().to_string() == "Z^2");
    CompletenessReport r = invariant_completeness(g);
    CHECK(r.holds);
    CHECK(r.pairs == 16 * 15 / 2);

    std::mt19937_64 rng(11);
    const auto& gens = g.presentation().generators;
    for (int trial = 0; trial < 50; ++trial)
    {
        DiffeoClass a({gens[rng() % gens.size()]});
        DiffeoClass b({gens[rng() % gens.size()], gens[rng() % gens.size()]});
        IntVector sum = g.class_of(a).coordinates;
        IntVector cb = g.class_of(b).coordinates;
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += cb[i];
        CHECK(g.class_of(a + b).coordinates == sum);
    }
    CHECK_THROWS_AS(build_sk2_boundary({3, 1, 3}), Error);
}

TEST_CASE("C1 and the maps alpha, beta")
{
    AbGroupPresentation c1 = build_c1();
    CHECK(c1.generator_count() == 1);
    CHECK(c1.relations().empty());
    CHECK(quotient_invariants(c1).to_string() == "Z^1");

    SKSequence seq = build_sequence({3, 3, 2});
    CHECK(beta(seq, seq.boundary.class_of(cls({{0, 1}}))) == IntVector{1});
    CHECK(beta(seq, seq.boundary.class_of(cls({{1, 3}}))) == IntVector{3});
    SKClass torus = seq.closed.class_of(cls({{1, 0}}));
    CHECK(beta(seq, alpha(seq, torus)) == IntVector{0});
    CHECK(alpha(seq, seq.closed.class_of(cls({{0, 0}}))) == seq.boundary.class_of(cls({{0, 0}})));
    CHECK_THROWS_AS(beta(seq, torus), Error);
    CHECK_THROWS_AS(alpha(seq, seq.boundary.class_of(cls({{0, 1}}))), Error);
}

TEST_CASE("exact sequence at small caps")
{
    for (Caps caps : {Caps{2, 2, 2}, Caps{3, 3, 3}})
    {
        ExactnessReport r = verify_exact_sequence(caps);
        INFO(r.alpha_injective.certificate << " / " << r.exact_at_middle.certificate << " / "
                                            << r.beta_surjective.certificate);
        CHECK(r.alpha_injective.holds);
        CHECK(r.exact_at_middle.holds);
        CHECK(r.beta_surjective.holds);
        CHECK(r.composite_zero);
        CHECK(r.passed());
        CHECK(r.sk2.to_string() == "Z^1");
        CHECK(r.sk2_boundary.to_string() == "Z^2");
    }
}

TEST_CASE("doubling witness")
{
    DoublingWitness w = doubling_witness(disk(), disk());
    CHECK(w.double_class == cls({{0, 0}}));
    CHECK(w.l_class == cls({{0, 0}}));
    CHECK(all_zero(w.lhs));
    CHECK(w.holds);

    DoublingWitness v = doubling_witness(build_standard(1, 1), build_standard(0, 1));
    CHECK(v.double_class == cls({{2, 0}}));
    CHECK(v.l_class == cls({{1, 0}}));
    CHECK(v.double_class.boundary_count() == 0);
    CHECK(v.lhs == v.rhs);
    CHECK(v.holds);

    DoublingWitness u = doubling_witness(build_standard(0, 2), build_standard(1, 2));
    CHECK(u.holds);
    CHECK(u.double_class == cls({{1, 0}}));

    CHECK_THROWS_AS(doubling_witness(disk(), octahedron()), Error);
    CHECK(classify(mirror(build_standard(2, 1))) == cls({{2, 1}}));
}

TEST_CASE("decide_equivalent")
{
    TriSurface genus2 = connected_sum(torus7(), torus7());
    Decision d = decide_equivalent(disjoint_union(genus2, octahedron()), disjoint_union(torus7(), torus7()));
    CHECK(d.equivalent);
    CHECK(d.first == d.second);
    CHECK_FALSE(decide_equivalent(disk(), octahedron()).equivalent);
    Decision t = decide_equivalent(torus7(), octahedron());
    CHECK_FALSE(t.equivalent);
    CHECK(t.first.euler_characteristic == 0);
    CHECK(t.second.euler_characteristic == 2);
    CHECK(t.explanation.find("chi 0 vs 2") != std::string::npos);
}

TEST_CASE("find_witness: genus two plus sphere against two tori, trivial cases")
{
    TriSurface m = disjoint_union(connected_sum(torus7(), torus7()), octahedron());
    TriSurface n = disjoint_union(torus7(), torus7());
    WitnessSearch ws = find_witness(m, n, 4);
    REQUIRE(ws.witness.has_value());
    CHECK(ws.witness->steps.size() <= 4);
    CHECK(classify(replay_witness(m, *ws.witness)) == cls({{1, 0}, {1, 0}}));
    // Deterministic.
    WitnessSearch again = find_witness(m, n, 4);
    REQUIRE(again.witness.has_value());
    CHECK(again.witness->steps.size() == ws.witness->steps.size());
    CHECK(again.witness->steps[0].circles == ws.witness->steps[0].circles);

    WitnessSearch same = find_witness(torus7(), build_standard(1, 0), 3);
    REQUIRE(same.witness.has_value());
    CHECK(same.witness->steps.empty());

    CHECK_FALSE(find_witness(m, n, 0).witness.has_value());
    CHECK_THROWS_AS(find_witness(torus7(), octahedron(), 2), Error);
}

TEST_CASE("skk collapse")
{
    Regluing id1 = Regluing::identity(1);
    Regluing shifted1{{0}, {2}};
    SkkCertificate a = skk_collapse_check(1, id1, shifted1);
    CHECK(a.phi_class == cls({{0, 2}}));
    CHECK(a.psi_class == cls({{0, 2}}));
    CHECK(a.zero);

    SkkCertificate b = skk_collapse_check(2, Regluing::identity(2), Regluing{{1, 0}, {0, 1}});
    CHECK(b.phi_class == cls({{0, 2}, {0, 2}}));
    CHECK(b.psi_class == b.phi_class);
    CHECK(b.zero);

    CHECK_THROWS_AS(skk_collapse_check(2, Regluing{{0, 0}, {0, 0}}, Regluing::identity(2)), Error);
    CHECK_THROWS_AS(skk_collapse_check(4, Regluing::identity(4), Regluing::identity(4)), Error);
}
