#include "scissors/chains.hpp"

#include <algorithm>

#include "scissors/error.hpp"
#include "scissors/smith.hpp"

namespace scissors {

namespace {

std::string shape(const SparseMatrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Columns of m as (row, sign) when every column is a signed basis vector and
// no row is hit twice.
bool signed_unit_columns(const SparseMatrix& m, std::vector<std::pair<std::size_t, int>>* out)
{
    std::vector<bool> hit(m.rows(), false);
    std::vector<std::pair<std::size_t, int>> cols;
    for (const auto& col : m.columns())
    {
        if (col.size() != 1)
            return false;
        const auto& [row, value] = col.terms()[0];
        if ((value != 1 && value != -1) || hit[row])
            return false;
        hit[row] = true;
        cols.push_back({row, value > 0 ? 1 : -1});
    }
    if (out)
        *out = std::move(cols);
    return true;
}

// Columns [begin, end) of m.
SparseMatrix column_block(const SparseMatrix& m, std::size_t begin, std::size_t end)
{
    std::vector<SparseVector> cols(m.columns().begin() + static_cast<long>(begin),
                                   m.columns().begin() + static_cast<long>(end));
    return SparseMatrix(m.rows(), end - begin, std::move(cols));
}

SparseVector shifted(const SparseVector& v, std::size_t by, const Integer& factor = 1)
{
    std::vector<SparseVector::Term> terms;
    for (const auto& [i, x] : v.terms())
        terms.push_back({i + by, x * factor});
    return SparseVector(std::move(terms));
}

}  // namespace

ChainComplex::ChainComplex(int lo, std::vector<std::size_t> ranks, std::vector<SparseMatrix> boundaries)
    : lo_(lo), ranks_(std::move(ranks)), boundaries_(std::move(boundaries))
{
    std::size_t expected = ranks_.empty() ? 0 : ranks_.size() - 1;
    if (boundaries_.size() != expected)
        domain_error("ShapeMismatch", "expected " + std::to_string(expected) + " boundary matrices, got "
                                          + std::to_string(boundaries_.size()));
    for (std::size_t k = 0; k < boundaries_.size(); ++k)
        if (boundaries_[k].rows() != ranks_[k] || boundaries_[k].cols() != ranks_[k + 1])
            domain_error("ShapeMismatch", "boundary out of degree " + std::to_string(lo_ + static_cast<int>(k) + 1)
                                              + " is " + shape(boundaries_[k]) + ", expected "
                                              + std::to_string(ranks_[k]) + "x" + std::to_string(ranks_[k + 1]));
    for (std::size_t k = 0; k + 1 < boundaries_.size(); ++k)
        if (!(boundaries_[k] * boundaries_[k + 1]).is_zero())
            domain_error("BoundarySquareNonzero", "boundary composite from degree "
                                                      + std::to_string(lo_ + static_cast<int>(k) + 2) + " to "
                                                      + std::to_string(lo_ + static_cast<int>(k)) + " is nonzero");
}

std::size_t ChainComplex::rank(int n) const
{
    if (n < lo_ || n > hi())
        return 0;
    return ranks_[static_cast<std::size_t>(n - lo_)];
}

SparseMatrix ChainComplex::boundary(int n) const
{
    if (n > lo_ && n <= hi())
        return boundaries_[static_cast<std::size_t>(n - lo_ - 1)];
    return SparseMatrix(rank(n - 1), rank(n));
}

namespace {

// Assembles a complex over lo..hi from a per-degree boundary function.
template <class Ranks, class Boundary>
ChainComplex assemble(int lo, int hi, Ranks rank, Boundary boundary)
{
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> bds;
    for (int n = lo; n <= hi; ++n)
    {
        ranks.push_back(rank(n));
        if (n > lo)
            bds.push_back(boundary(n));
    }
    return ChainComplex(lo, std::move(ranks), std::move(bds));
}

}  // namespace

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b)
{
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    return assemble(
        std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()), [&](int n) { return a.rank(n) + b.rank(n); },
        [&](int n) { return direct_sum(a.boundary(n), b.boundary(n)); });
}

ChainComplex add_acyclic_pair(const ChainComplex& c, int n)
{
    ChainComplex pair(n - 1, {1, 1}, {SparseMatrix::from_dense(IntMatrix::from_rows({{1}}))});
    return direct_sum(c, pair);
}

ChainComplex change_basis(const ChainComplex& c, const std::vector<IntMatrix>& g,
                          const std::vector<IntMatrix>& g_inverse)
{
    std::size_t m = c.ranks().size();
    if (g.size() != m || g_inverse.size() != m)
        domain_error("ShapeMismatch", "one base change per degree is required");
    for (std::size_t k = 0; k < m; ++k)
        if (g[k].rows() != c.ranks()[k] || g[k].cols() != c.ranks()[k] || !(g[k] * g_inverse[k] == IntMatrix::identity(c.ranks()[k])))
            domain_error("NotUnimodular", "base change in degree " + std::to_string(c.lo() + static_cast<int>(k))
                                              + " is not an invertible square matrix with the given inverse");
    return assemble(
        c.lo(), c.hi(), [&](int n) { return c.rank(n); },
        [&](int n) {
            std::size_t k = static_cast<std::size_t>(n - c.lo());
            return SparseMatrix::from_dense(g[k - 1] * c.boundary(n).to_dense() * g_inverse[k]);
        });
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<SparseMatrix> matrices)
    : source_(std::move(source)), target_(std::move(target)), matrices_(std::move(matrices))
{
    if (matrices_.size() > source_.ranks().size())
        domain_error("ShapeMismatch", "more chain-map matrices than source degrees");
    for (std::size_t k = 0; k < matrices_.size(); ++k)
    {
        int n = source_.lo() + static_cast<int>(k);
        if (matrices_[k].rows() != target_.rank(n) || matrices_[k].cols() != source_.rank(n))
            domain_error("ShapeMismatch", "chain-map matrix in degree " + std::to_string(n) + " is "
                                              + shape(matrices_[k]));
    }
    if (source_.empty())
        return;
    for (int n = source_.lo(); n <= source_.hi() + 1; ++n)
    {
        SparseMatrix lhs = in_degree(n - 1) * source_.boundary(n);
        SparseMatrix rhs = target_.boundary(n) * in_degree(n);
        if (!(lhs == rhs))
            domain_error("NotAChainMap", "map does not commute with the boundary out of degree " + std::to_string(n));
    }
}

SparseMatrix ChainMap::in_degree(int n) const
{
    int k = n - source_.lo();
    if (k >= 0 && static_cast<std::size_t>(k) < matrices_.size())
        return matrices_[static_cast<std::size_t>(k)];
    return SparseMatrix(target_.rank(n), source_.rank(n));
}

std::vector<ChainMap::Level> ChainMap::levels() const
{
    std::vector<Level> out;
    for (int n = source_.lo(); n <= source_.hi(); ++n)
    {
        SparseMatrix m = in_degree(n);
        Level level;
        level.degree = n;
        if (signed_unit_columns(m, nullptr))
        {
            level.injective = true;
        }
        else
        {
            IntVector d = invariant_factors(m.to_dense());
            std::size_t rank = 0;
            for (const auto& x : d)
            {
                if (x != 0)
                    ++rank;
                if (x > 1)
                    level.cokernel_torsion.push_back(x);
            }
            level.injective = rank == m.cols();
        }
        out.push_back(std::move(level));
    }
    return out;
}

bool ChainMap::levelwise_injective() const
{
    for (const auto& l : levels())
        if (!l.injective)
            return false;
    return true;
}

ChainMap ChainMap::identity(const ChainComplex& c)
{
    std::vector<SparseMatrix> m;
    for (std::size_t r : c.ranks())
        m.push_back(SparseMatrix::identity(r));
    return ChainMap(c, c, std::move(m));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target)
{
    return ChainMap(source, target, {});
}

// ---------------------------------------------------------------------------

const GroupInvariants& HomologyType::at(int n) const
{
    static const GroupInvariants trivial;
    int k = n - lo;
    if (k < 0 || static_cast<std::size_t>(k) >= groups.size())
        return trivial;
    return groups[static_cast<std::size_t>(k)];
}

std::string HomologyType::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < groups.size(); ++k)
    {
        if (!out.empty())
            out += " ";
        out += "H" + std::to_string(lo + static_cast<int>(k)) + "=" + groups[k].to_string();
    }
    return out;
}

bool operator==(const HomologyType& a, const HomologyType& b)
{
    int lo = std::min(a.lo, b.lo);
    int hi = std::max(a.lo + static_cast<int>(a.groups.size()), b.lo + static_cast<int>(b.groups.size()));
    for (int n = lo; n < hi; ++n)
        if (!(a.at(n) == b.at(n)))
            return false;
    return true;
}

HomologyType homology(const ChainComplex& c)
{
    HomologyType h;
    h.lo = c.lo();
    if (c.empty())
        return h;
    // coker(boundary(n+1)) = C_n / B_n carries the torsion of H_n; its free
    // rank gives the rank of boundary(n+1).
    std::vector<std::size_t> image_rank(c.ranks().size() + 1, 0);  // rank of boundary(lo + k)
    std::vector<IntVector> torsion(c.ranks().size());
    for (int n = c.lo(); n <= c.hi(); ++n)
    {
        std::size_t k = static_cast<std::size_t>(n - c.lo());
        SparseMatrix d = c.boundary(n + 1);
        QuotientGroup q(c.rank(n), d.columns());
        image_rank[k + 1] = c.rank(n) - q.invariants().free_rank;
        torsion[k] = q.invariants().torsion;
    }
    for (int n = c.lo(); n <= c.hi(); ++n)
    {
        std::size_t k = static_cast<std::size_t>(n - c.lo());
        GroupInvariants g;
        g.free_rank = c.rank(n) - image_rank[k] - image_rank[k + 1];
        g.torsion = torsion[k];
        h.groups.push_back(std::move(g));
    }
    return h;
}

long k0_class(const ChainComplex& c)
{
    HomologyType h = homology(c);
    long chi = 0;
    for (std::size_t k = 0; k < h.groups.size(); ++k)
    {
        long r = static_cast<long>(h.groups[k].free_rank);
        chi += (h.lo + static_cast<int>(k)) % 2 == 0 ? r : -r;
    }
    return chi;
}

long euler_char(const ChainComplex& c)
{
    long chi = 0;
    for (int n = c.lo(); n <= c.hi(); ++n)
    {
        long r = static_cast<long>(c.rank(n));
        chi += n % 2 == 0 ? r : -r;
    }
    long via_homology = k0_class(c);
    if (chi != via_homology)
        domain_error("EulerMismatch", "rank sum " + std::to_string(chi) + " differs from homology sum "
                                          + std::to_string(via_homology));
    return chi;
}

bool quasi_iso_type_equal(const ChainComplex& c, const ChainComplex& d)
{
    return homology(c) == homology(d);
}

// ---------------------------------------------------------------------------

namespace {

bool same_complex(const ChainComplex& a, const ChainComplex& b)
{
    if (a.lo() != b.lo() || a.ranks() != b.ranks())
        return false;
    for (int n = a.lo() + 1; n <= a.hi(); ++n)
        if (!(a.boundary(n) == b.boundary(n)))
            return false;
    return true;
}

// Quotient data per degree: projection (B ⊕ C)_n -> P_n and a section back.
struct Quotient
{
    SparseMatrix projection;
    SparseMatrix section;
};

Quotient coordinate_quotient(const SparseMatrix& f, const SparseMatrix& g, std::size_t b, std::size_t c)
{
    std::vector<std::pair<std::size_t, int>> image;
    signed_unit_columns(f, &image);
    std::vector<long> hit(b, -1);
    for (std::size_t a = 0; a < image.size(); ++a)
        hit[image[a].first] = static_cast<long>(a);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < b; ++i)
        if (hit[i] < 0)
            kept.push_back(i);
    std::size_t p = kept.size() + c;
    std::vector<std::size_t> position(b, 0);
    for (std::size_t k = 0; k < kept.size(); ++k)
        position[kept[k]] = k;

    // e_{f(a)} = sign * f(a) is identified with sign * g(a).
    std::vector<SparseVector> proj(b + c);
    for (std::size_t i = 0; i < b; ++i)
    {
        if (hit[i] < 0)
            proj[i] = SparseVector::unit(position[i]);
        else
        {
            std::size_t a = static_cast<std::size_t>(hit[i]);
            proj[i] = shifted(g.column(a), kept.size(), image[a].second);
        }
    }
    for (std::size_t j = 0; j < c; ++j)
        proj[b + j] = SparseVector::unit(kept.size() + j);
    std::vector<SparseVector> sec(p);
    for (std::size_t k = 0; k < kept.size(); ++k)
        sec[k] = SparseVector::unit(kept[k]);
    for (std::size_t j = 0; j < c; ++j)
        sec[kept.size() + j] = SparseVector::unit(b + j);
    return {SparseMatrix(p, b + c, std::move(proj)), SparseMatrix(b + c, p, std::move(sec))};
}

Quotient split_quotient(const SparseMatrix& f, const SparseMatrix& g, std::size_t b, std::size_t c)
{
    std::size_t a = f.cols();
    IntMatrix m(b + c, a);
    IntMatrix fd = f.to_dense(), gd = g.to_dense();
    for (std::size_t j = 0; j < a; ++j)
    {
        for (std::size_t i = 0; i < b; ++i)
            m(i, j) = fd(i, j);
        for (std::size_t i = 0; i < c; ++i)
            m(b + i, j) = -gd(i, j);
    }
    SmithForm s = smith_normal_form(m);
    std::size_t p = b + c - a;
    IntMatrix proj(p, b + c), sec(b + c, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < b + c; ++j)
        {
            proj(i, j) = s.row_transform(a + i, j);
            sec(j, i) = s.row_inverse(j, a + i);
        }
    return {SparseMatrix::from_dense(proj), SparseMatrix::from_dense(sec)};
}

}  // namespace

PushoutResult pushout(const ChainMap& f, const ChainMap& g)
{
    if (!same_complex(f.source(), g.source()))
        domain_error("NotComposable", "the two maps have different sources");
    PushoutMethod method = PushoutMethod::Coordinate;
    for (const auto& level : f.levels())
    {
        if (!level.injective)
            domain_error("NotACofibration", "f is not injective in degree " + std::to_string(level.degree));
        if (!signed_unit_columns(f.in_degree(level.degree), nullptr))
            method = std::max(method, level.cokernel_torsion.empty() ? PushoutMethod::Split : PushoutMethod::Cone);
    }

    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    const ChainComplex& c = g.target();
    int lo = std::min(b.lo(), c.lo());
    int hi = std::max(b.hi(), c.hi());
    if (b.empty())
        lo = c.lo(), hi = c.hi();
    else if (c.empty())
        lo = b.lo(), hi = b.hi();
    PushoutResult r;
    r.method = method;

    if (method == PushoutMethod::Cone)
    {
        // P_n = B_n ⊕ C_n ⊕ A_{n-1}, d(b, c, a) = (db + f a, dc - g a, -da).
        if (!a.empty())
        {
            lo = std::min(lo, a.lo() + 1);
            hi = std::max(hi, a.hi() + 1);
        }
        auto rank = [&](int n) { return b.rank(n) + c.rank(n) + a.rank(n - 1); };
        r.complex = assemble(lo, hi, rank, [&](int n) {
            std::size_t bn = b.rank(n), cn = c.rank(n), bm = b.rank(n - 1), cm = c.rank(n - 1);
            SparseMatrix db = b.boundary(n), dc = c.boundary(n), da = a.boundary(n - 1);
            SparseMatrix fa = f.in_degree(n - 1), ga = g.in_degree(n - 1);
            std::vector<SparseVector> cols;
            for (std::size_t j = 0; j < bn; ++j)
                cols.push_back(db.column(j));
            for (std::size_t j = 0; j < cn; ++j)
                cols.push_back(shifted(dc.column(j), bm));
            for (std::size_t j = 0; j < a.rank(n - 1); ++j)
            {
                SparseVector v = fa.column(j);
                v.add_scaled(shifted(ga.column(j), bm), -1);
                v.add_scaled(shifted(da.column(j), bm + cm), -1);
                cols.push_back(std::move(v));
            }
            return SparseMatrix(rank(n - 1), rank(n), std::move(cols));
        });
        std::vector<SparseMatrix> fb, fc;
        for (int n = b.lo(); n <= b.hi(); ++n)
        {
            std::vector<SparseVector> cols;
            for (std::size_t j = 0; j < b.rank(n); ++j)
                cols.push_back(SparseVector::unit(j));
            fb.push_back(SparseMatrix(rank(n), b.rank(n), std::move(cols)));
        }
        for (int n = c.lo(); n <= c.hi(); ++n)
        {
            std::vector<SparseVector> cols;
            for (std::size_t j = 0; j < c.rank(n); ++j)
                cols.push_back(SparseVector::unit(b.rank(n) + j));
            fc.push_back(SparseMatrix(rank(n), c.rank(n), std::move(cols)));
        }
        r.from_b = ChainMap(b, r.complex, std::move(fb));
        r.from_c = ChainMap(c, r.complex, std::move(fc));
        return r;
    }

    std::vector<Quotient> q;
    for (int n = lo; n <= hi; ++n)
    {
        SparseMatrix fn = f.in_degree(n), gn = g.in_degree(n);
        q.push_back(method == PushoutMethod::Coordinate ? coordinate_quotient(fn, gn, b.rank(n), c.rank(n))
                                                        : split_quotient(fn, gn, b.rank(n), c.rank(n)));
    }
    auto at = [&](int n) -> const Quotient& { return q[static_cast<std::size_t>(n - lo)]; };
    r.complex = assemble(
        lo, hi, [&](int n) { return at(n).projection.rows(); },
        [&](int n) {
            SparseMatrix d = direct_sum(b.boundary(n), c.boundary(n));
            return at(n - 1).projection * d * at(n).section;
        });
    std::vector<SparseMatrix> fb, fc;
    for (int n = b.lo(); n <= b.hi(); ++n)
        fb.push_back(column_block(at(n).projection, 0, b.rank(n)));
    for (int n = c.lo(); n <= c.hi(); ++n)
        fc.push_back(column_block(at(n).projection, b.rank(n), b.rank(n) + c.rank(n)));
    r.from_b = ChainMap(b, r.complex, std::move(fb));
    r.from_c = ChainMap(c, r.complex, std::move(fc));
    return r;
}

}  // namespace scissors
