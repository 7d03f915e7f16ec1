#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "scissors/chains.hpp"
#include "scissors/error.hpp"

using namespace scissors;

namespace {

SparseMatrix sp(std::initializer_list<std::initializer_list<long>> rows)
{
    return SparseMatrix::from_dense(IntMatrix::from_rows(rows));
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

ChainComplex times(long d)
{
    return ChainComplex(0, {1, 1}, {sp({{d}})});
}

// Elementary pieces: Z in degree n, or Z -(d)-> Z in degrees n+1, n.
struct Piece
{
    int degree;
    long factor;  // 0 for a lone Z
};

ChainComplex from_pieces(const std::vector<Piece>& pieces)
{
    ChainComplex c;
    for (const auto& p : pieces)
    {
        ChainComplex e = p.factor == 0 ? ChainComplex(p.degree, {1}, {})
                                       : ChainComplex(p.degree, {1, 1}, {sp({{p.factor}})});
        c = direct_sum(c, e);
    }
    return c;
}

// Oracle homology of a sum of pieces: lone Z gives Z, d gives Z/d (|d| > 1).
std::map<int, std::pair<std::size_t, std::vector<long>>> expected_homology(const std::vector<Piece>& pieces)
{
    std::map<int, std::pair<std::size_t, std::vector<long>>> h;
    for (const auto& p : pieces)
    {
        if (p.factor == 0)
            h[p.degree].first += 1;
        else if (std::abs(p.factor) > 1)
            h[p.degree].second.push_back(std::abs(p.factor));
    }
    return h;
}

// Primary decomposition of the torsion, as a multiset of prime powers.
std::vector<long> prime_powers(const std::vector<long>& orders)
{
    std::vector<long> out;
    for (long n : orders)
        for (long p = 2; n > 1; ++p)
        {
            long q = 1;
            while (n % p == 0)
            {
                n /= p;
                q *= p;
            }
            if (q > 1)
                out.push_back(q);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> to_longs(const IntVector& v)
{
    std::vector<long> out;
    for (const auto& x : v)
        out.push_back(x.get_si());
    return out;
}

std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n)
{
    IntMatrix g = IntMatrix::identity(n), inv = IntMatrix::identity(n);
    if (n < 2)
        return {g, inv};
    for (int step = 0; step < 6; ++step)
    {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j)
            continue;
        long k = static_cast<long>(rng() % 5) - 2;
        g.add_row_multiple(i, j, k);
        inv.add_col_multiple(j, i, -k);
    }
    return {g, inv};
}

std::vector<Piece> random_pieces(std::mt19937_64& rng)
{
    std::vector<Piece> pieces;
    std::size_t count = 1 + rng() % 5;
    for (std::size_t i = 0; i < count; ++i)
    {
        int degree = static_cast<int>(rng() % 3);
        long factor = static_cast<long>(rng() % 7) - 1;  // -1..5, 0 means lone Z
        pieces.push_back({degree, factor});
    }
    return pieces;
}

ChainComplex scramble(std::mt19937_64& rng, const ChainComplex& c)
{
    std::vector<IntMatrix> g, inv;
    for (std::size_t r : c.ranks())
    {
        auto [a, b] = random_unimodular(rng, r);
        g.push_back(a);
        inv.push_back(b);
    }
    return change_basis(c, g, inv);
}

}  // namespace

TEST_CASE("homology: small complexes")
{
    HomologyType h = homology(times(2));
    CHECK(h.at(0).to_string() == "Z/2");
    CHECK(h.at(1).to_string() == "0");
    CHECK(h.to_string() == "H0=Z/2 H1=0");
    CHECK(euler_char(times(2)) == 0);
    CHECK(k0_class(times(2)) == 0);

    ChainComplex zero(0, {0, 0, 0}, {SparseMatrix(0, 0), SparseMatrix(0, 0)});
    for (int n = 0; n <= 2; ++n)
        CHECK(homology(zero).at(n).to_string() == "0");
    CHECK(homology(ChainComplex()).groups.empty());
    CHECK(quasi_iso_type_equal(zero, ChainComplex()));
    CHECK_FALSE(quasi_iso_type_equal(times(2), zero));
    CHECK(quasi_iso_type_equal(times(1), zero));
}

TEST_CASE("construction errors")
{
    CHECK(error_code([] { ChainComplex(0, {1, 1, 1}, {sp({{1}}), sp({{1}})}); }) == "BoundarySquareNonzero");
    CHECK(error_code([] { ChainComplex(0, {1, 2}, {sp({{1}})}); }) == "ShapeMismatch");
    CHECK(error_code([] { ChainComplex(0, {1, 1}, {}); }) == "ShapeMismatch");
    ChainComplex c = times(2);
    CHECK(error_code([&] { ChainMap(c, c, {sp({{1}}), sp({{2}})}); }) == "NotAChainMap");
    CHECK(error_code([&] { ChainMap(c, c, {sp({{1, 0}})}); }) == "ShapeMismatch");
    ChainMap twice(c, c, {sp({{2}}), sp({{2}})});
    CHECK_FALSE(twice.levels()[0].cokernel_torsion.empty());
    CHECK(twice.levelwise_injective());
    CHECK_FALSE(ChainMap::zero(c, c).levelwise_injective());
}

TEST_CASE("homology matches the elementary-piece oracle after base change")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 80; ++trial)
    {
        auto pieces = random_pieces(rng);
        ChainComplex plain = from_pieces(pieces);
        ChainComplex c = scramble(rng, plain);
        HomologyType h = homology(c);
        auto expected = expected_homology(pieces);
        long chi = 0;
        for (int n = c.lo(); n <= c.hi(); ++n)
        {
            auto [free, torsion] = expected[n];
            CHECK(h.at(n).free_rank == free);
            // Invariant factors and primary decomposition describe the same group.
            CHECK(prime_powers(to_longs(h.at(n).torsion)) == prime_powers(torsion));
            chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(free);
        }
        CHECK(k0_class(c) == chi);
        CHECK(euler_char(c) == chi);
        CHECK(quasi_iso_type_equal(c, plain));
        CHECK(k0_class(add_acyclic_pair(c, 1)) == chi);
        CHECK(quasi_iso_type_equal(add_acyclic_pair(c, 2), c));
    }
}

TEST_CASE("quasi-isomorphism type is an equivalence relation")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial)
    {
        // Small piece pool so that equal types occur often.
        auto pick = [&] {
            std::vector<Piece> p{{0, 0}};
            if (rng() % 2)
                p.push_back({0, 2});
            if (rng() % 2)
                p.push_back({1, 1});
            return scramble(rng, from_pieces(p));
        };
        ChainComplex a = pick(), b = pick(), c = pick();
        CHECK(quasi_iso_type_equal(a, a));
        CHECK(quasi_iso_type_equal(a, b) == quasi_iso_type_equal(b, a));
        if (quasi_iso_type_equal(a, b) && quasi_iso_type_equal(b, c))
            CHECK(quasi_iso_type_equal(a, c));
    }
}

TEST_CASE("pushout: coproduct, identity, split and torsion cases")
{
    ChainComplex b = times(3);
    ChainComplex c = from_pieces({{0, 0}, {1, 0}});
    ChainComplex empty;

    PushoutResult sum = pushout(ChainMap::zero(empty, b), ChainMap::zero(empty, c));
    CHECK(quasi_iso_type_equal(sum.complex, direct_sum(b, c)));
    CHECK(sum.complex.ranks() == direct_sum(b, c).ranks());

    ChainComplex a = ChainComplex(0, {1}, {});
    // a -> b in degree 0 is the identity on Z; a -> c hits the degree-0 Z.
    ChainMap ab(a, b, {sp({{1}})});
    ChainMap ac(a, c, {sp({{1}})});
    PushoutResult p = pushout(ab, ac);
    CHECK(p.method == PushoutMethod::Coordinate);
    CHECK(k0_class(a) + k0_class(p.complex) == k0_class(b) + k0_class(c));

    PushoutResult id = pushout(ChainMap::identity(c), ChainMap::identity(c));
    CHECK(quasi_iso_type_equal(id.complex, c));

    // Diagonal Z -> Z^2 is split but not a coordinate inclusion.
    ChainComplex two(0, {2}, {});
    PushoutResult split = pushout(ChainMap(a, two, {sp({{1}, {1}})}), ChainMap(a, a, {sp({{1}})}));
    CHECK(split.method == PushoutMethod::Split);
    CHECK(split.complex.ranks() == std::vector<std::size_t>{2});
    CHECK(homology(split.complex).at(0).to_string() == "Z^2");

    // Z -(2)-> Z with nothing on the other side: the quotient is Z/2.
    PushoutResult cone = pushout(ChainMap(a, a, {sp({{2}})}), ChainMap::zero(a, empty));
    CHECK(cone.method == PushoutMethod::Cone);
    CHECK(homology(cone.complex).at(0).to_string() == "Z/2");
    CHECK(k0_class(a) + k0_class(cone.complex) == k0_class(a) + k0_class(empty));

    CHECK(error_code([&] { pushout(ChainMap::zero(a, b), ChainMap::zero(a, c)); }) == "NotACofibration");
    CHECK(error_code([&] { pushout(ChainMap::identity(b), ChainMap::identity(c)); }) == "NotComposable");
}

TEST_CASE("pushout additivity on random split inclusions")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial)
    {
        // A = pieces, B = A ⊕ extra (inclusion of a summand, then scrambled
        // in B), C = A ⊕ other with the inclusion.
        auto pa = random_pieces(rng), pb = random_pieces(rng), pc = random_pieces(rng);
        ChainComplex a = from_pieces(pa);
        ChainComplex b = direct_sum(a, from_pieces(pb));
        ChainComplex c = direct_sum(a, from_pieces(pc));
        auto inclusion = [&](const ChainComplex& target) {
            std::vector<SparseMatrix> m;
            for (int n = a.lo(); n <= a.hi(); ++n)
            {
                std::vector<SparseVector> cols;
                for (std::size_t j = 0; j < a.rank(n); ++j)
                    cols.push_back(SparseVector::unit(j));
                m.push_back(SparseMatrix(target.rank(n), a.rank(n), std::move(cols)));
            }
            return ChainMap(a, target, std::move(m));
        };
        PushoutResult p = pushout(inclusion(b), inclusion(c));
        CHECK(k0_class(a) + k0_class(p.complex) == k0_class(b) + k0_class(c));
        // Pushout along a summand inclusion: P = A ⊕ extra ⊕ other.
        CHECK(quasi_iso_type_equal(p.complex, direct_sum(a, direct_sum(from_pieces(pb), from_pieces(pc)))));
    }
}
