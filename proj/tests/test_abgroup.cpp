#include <algorithm>
#include <random>

#include "doctest.h"
#include "scissors/abgroup.hpp"
#include "scissors/error.hpp"
#include "support/convert.hpp"
#include "support/oracles.hpp"

using namespace scissors;

namespace {

void check_smith(const IntMatrix& a, const SmithForm& s)
{
    IntMatrix d = IntMatrix::diagonal(a.rows(), a.cols(), s.invariant_factors);
    CHECK(s.row_transform * a * s.col_transform == d);
    CHECK(s.row_transform * s.row_inverse == IntMatrix::identity(a.rows()));
    CHECK(s.col_transform * s.col_inverse == IntMatrix::identity(a.cols()));
    Integer du = determinant(s.row_transform), dv = determinant(s.col_transform);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    const auto& f = s.invariant_factors;
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        CHECK(f[i] >= 0);
        if (i + 1 < f.size() && f[i] != 0)
            CHECK(f[i + 1] % f[i] == 0);
        if (i + 1 < f.size() && f[i] == 0)
            CHECK(f[i + 1] == 0);
    }
}

std::vector<std::string> labels(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("g" + std::to_string(i));
    return out;
}

}  // namespace

TEST_CASE("smith: diag(2,3) becomes (1,6) and the quotient is cyclic of order 6")
{
    IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
    SmithForm s = smith_normal_form(a);
    check_smith(a, s);
    CHECK(s.invariant_factors == IntVector{1, 6});

    oracle::Mat rows = {{2, 0}, {0, 3}};
    CHECK(oracle::coset_count(rows, 2) == 6u);
    // (1,1) generates: its first five multiples are not in the lattice.
    for (int k = 1; k < 6; ++k)
        CHECK_FALSE(oracle::in_lattice(rows, {k, k}));
    CHECK(oracle::in_lattice(rows, {6, 6}));
}

TEST_CASE("smith: zero matrix keeps identity transforms")
{
    IntMatrix a(2, 2);
    SmithForm s = smith_normal_form(a);
    CHECK(s.invariant_factors == IntVector{0, 0});
    CHECK(s.row_transform == IntMatrix::identity(2));
    CHECK(s.col_transform == IntMatrix::identity(2));
}

TEST_CASE("smith: [[2,4],[6,8]] gives (2,4)")
{
    IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SmithForm s = smith_normal_form(a);
    check_smith(a, s);
    CHECK(s.invariant_factors == IntVector{2, 4});
    oracle::Mat m = {{2, 4}, {6, 8}};
    CHECK(oracle::content(m) == 2);
    CHECK(abs(oracle::cofactor_det(m)) == 8);
}

TEST_CASE("smith: rectangular and degenerate shapes")
{
    check_smith(IntMatrix(0, 3), smith_normal_form(IntMatrix(0, 3)));
    check_smith(IntMatrix(3, 0), smith_normal_form(IntMatrix(3, 0)));
    IntMatrix a = IntMatrix::from_rows({{4, 6, 8}, {6, 9, 12}});
    SmithForm s = smith_normal_form(a);
    check_smith(a, s);
    CHECK(s.invariant_factors == IntVector{1, 0});
}

TEST_CASE("smith: deterministic for a fixed input")
{
    IntMatrix a = IntMatrix::from_rows({{3, -7, 2}, {5, 1, -4}, {0, 6, 9}});
    SmithForm s1 = smith_normal_form(a), s2 = smith_normal_form(a);
    CHECK(s1.row_transform == s2.row_transform);
    CHECK(s1.col_transform == s2.col_transform);
    CHECK(invariant_factors(a) == s1.invariant_factors);
}

TEST_CASE("smith: random matrices against coset enumeration")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 4);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial)
    {
        std::size_t r = dim(rng), c = dim(rng);
        oracle::Mat m = oracle::random_matrix(rng, r, c, -5, 5);
        IntMatrix a = to_matrix(m, c);
        SmithForm s = smith_normal_form(a);
        check_smith(a, s);
        auto order = oracle::coset_count(m, c);
        if (!order)
            continue;
        Integer product = 1;
        for (const auto& d : s.invariant_factors)
            product *= d;
        CHECK(product == Integer(static_cast<unsigned long>(*order)));
        ++compared;
    }
    CHECK(compared > 20);
}

TEST_CASE("quotient_invariants: basic groups")
{
    CHECK(quotient_invariants(AbGroupPresentation(labels(2), {})) == GroupInvariants{2, {}});
    auto g = AbGroupPresentation::from_dense(labels(2), {{2, 0}, {0, 3}});
    CHECK(quotient_invariants(g) == GroupInvariants{0, {6}});
    CHECK(quotient_invariants(AbGroupPresentation::from_dense(labels(1), {{1}})) == GroupInvariants{0, {}});
    CHECK(GroupInvariants{0, {}}.to_string() == "0");
    CHECK(GroupInvariants{2, {2, 6}}.to_string() == "Z^2 + Z/2 + Z/6");
    CHECK(GroupInvariants{1, {}}.to_string() == "Z^1");
}

TEST_CASE("quotient_invariants: presentation validation")
{
    CHECK_THROWS_AS(AbGroupPresentation(std::vector<std::string>{"a", "a"}, {}), Error);
    CHECK_THROWS_AS(AbGroupPresentation::from_dense(labels(2), {{1, 2, 3}}), Error);
}

TEST_CASE("element_normal_form: examples")
{
    auto g = AbGroupPresentation::from_dense(labels(2), {{2, 0}});
    QuotientGroup q(g);
    IntVector a = q.normal_form(IntVector{3, 5});
    IntVector b = q.normal_form(IntVector{1, 5});
    CHECK(a == b);
    CHECK(oracle::in_lattice({{2, 0}}, {2, 0}));
    CHECK(q.moduli() == IntVector{2, 0});
    CHECK(a[0] == 1);
    CHECK(abs(a[1]) == 5);
    CHECK(q.is_zero(IntVector{2, 0}));

    auto free = AbGroupPresentation(labels(2), {});
    CHECK(element_normal_form(free, {7, -2}) == IntVector{7, -2});
    CHECK_THROWS_AS(element_normal_form(free, {1}), Error);
}

TEST_CASE("quotient: permuting generators or adding derived relations keeps the type")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 60; ++trial)
    {
        std::size_t n = 1 + trial % 4, k = trial % 5;
        oracle::Mat m = oracle::random_matrix(rng, k, n, -6, 6);
        auto base = quotient_invariants(AbGroupPresentation::from_dense(labels(n), m));

        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        oracle::Mat permuted = m;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t i = 0; i < n; ++i)
                permuted[r][perm[i]] = m[r][i];
        CHECK(quotient_invariants(AbGroupPresentation::from_dense(labels(n), permuted)) == base);

        oracle::Vec combo(n);
        for (const auto& row : m)
        {
            int c = coef(rng);
            for (std::size_t i = 0; i < n; ++i)
                combo[i] += c * row[i];
        }
        oracle::Mat extended = m;
        extended.push_back(combo);
        CHECK(quotient_invariants(AbGroupPresentation::from_dense(labels(n), extended)) == base);
    }
}

TEST_CASE("normal form agrees with lattice membership, and lift is a section")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 80; ++trial)
    {
        std::size_t n = 1 + trial % 3, k = 1 + trial % 3;
        oracle::Mat m = oracle::random_matrix(rng, k, n, -5, 5);
        QuotientGroup q(n, to_sparse_rows(m));
        for (int pair = 0; pair < 10; ++pair)
        {
            oracle::Vec v(n), w(n), diff(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                v[i] = entry(rng);
                w[i] = entry(rng);
                diff[i] = v[i] - w[i];
            }
            CHECK((q.normal_form(v) == q.normal_form(w)) == oracle::in_lattice(m, diff));
            IntVector nf = q.normal_form(v);
            CHECK(q.normal_form(q.lift(nf)) == nf);
        }
        for (const auto& row : m)
            CHECK(q.is_zero(row));
    }
}

TEST_CASE("unit elimination handles larger sparse systems")
{
    // Chain of relations e_i = e_{i+1} plus 4 e_0 = 0: quotient Z/4.
    std::size_t n = 200;
    std::vector<SparseVector> rels;
    for (std::size_t i = 0; i + 1 < n; ++i)
        rels.push_back(SparseVector({{i, 1}, {i + 1, -1}}));
    rels.push_back(SparseVector::unit(0, 4));
    QuotientGroup q(n, rels);
    CHECK(q.invariants() == GroupInvariants{0, {4}});
    IntVector e(n);
    e[n - 1] = 5;
    CHECK(q.normal_form(e) == IntVector{1});
}

namespace {

std::shared_ptr<const QuotientGroup> group(std::size_t n, const oracle::Mat& rels)
{
    return std::make_shared<QuotientGroup>(n, to_sparse_rows(rels));
}

}  // namespace

TEST_CASE("homs: injectivity and surjectivity")
{
    auto g = group(2, {{2, 0}});
    AbHom id(g, g, IntMatrix::identity(2), to_sparse_rows({{2, 0}}));
    CHECK(hom_is_injective(id));
    CHECK(hom_is_surjective(id));

    auto z = group(1, {});
    AbHom doubling(z, z, IntMatrix::from_rows({{2}}), {});
    CHECK(hom_is_injective(doubling));
    CHECK_FALSE(hom_is_surjective(doubling));

    auto z2 = group(1, {{2}});
    AbHom quot(z, z2, IntMatrix::from_rows({{1}}), {});
    CHECK_FALSE(hom_is_injective(quot));
    CHECK(hom_is_surjective(quot));

    // Z/2 -> Z/4 by 1 -> 2 is injective, not surjective.
    auto z4 = group(1, {{4}});
    AbHom inc(z2, z4, IntMatrix::from_rows({{2}}), to_sparse_rows({{2}}));
    CHECK(hom_is_injective(inc));
    CHECK_FALSE(hom_is_surjective(inc));

    // Z/2 -> Z by 1 -> 1 is not well defined.
    CHECK_THROWS_AS(AbHom(z2, z, IntMatrix::from_rows({{1}}), to_sparse_rows({{2}})), Error);
}

TEST_CASE("homs: exactness")
{
    auto zero = group(0, {});
    auto z = group(1, {});
    AbHom in(zero, z, IntMatrix(0, 1), {});
    AbHom id(z, z, IntMatrix::identity(1), {});
    AbHom out(z, zero, IntMatrix(1, 0), {});
    CHECK(check_exact_at(in, id));
    CHECK(check_exact_at(id, out));

    auto z2 = group(1, {{2}});
    AbHom times2(z, z, IntMatrix::from_rows({{2}}), {});
    AbHom quot(z, z2, IntMatrix::from_rows({{1}}), {});
    CHECK(check_exact_at(times2, quot));
    AbHom times4(z, z, IntMatrix::from_rows({{4}}), {});
    CHECK_FALSE(check_exact_at(times4, quot));

    CHECK_THROWS_AS(check_exact_at(times2, AbHom(z2, z2, IntMatrix::identity(1), to_sparse_rows({{2}}))), Error);
}
