#include "scissors/abgroup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors {

namespace {

Integer floor_mod(const Integer& x, const Integer& d)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return r;
}

// y is zero in Z^k / diag(moduli)?
bool zero_mod(const IntVector& y, const IntVector& moduli)
{
    for (std::size_t k = 0; k < y.size(); ++k)
    {
        if (moduli[k] == 0 ? y[k] != 0 : floor_mod(y[k], moduli[k]) != 0)
            return false;
    }
    return true;
}

std::vector<IntVector> diagonal_relations(const IntVector& moduli)
{
    std::vector<IntVector> out;
    for (std::size_t k = 0; k < moduli.size(); ++k)
        if (moduli[k] != 0)
        {
            IntVector row(moduli.size());
            row[k] = moduli[k];
            out.push_back(std::move(row));
        }
    return out;
}

std::string factors_string(const IntVector& d)
{
    return "d=" + to_string(d);
}

}  // namespace

std::string GroupInvariants::to_string() const
{
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0)
    {
        out << "Z^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion)
    {
        out << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    return first ? "0" : out.str();
}

// ---------------------------------------------------------------------------

AbGroupPresentation::AbGroupPresentation(std::vector<std::string> generators, std::vector<SparseVector> relations)
    : generators_(std::move(generators)), relations_(std::move(relations))
{
    std::set<std::string> seen;
    for (const auto& g : generators_)
        if (!seen.insert(g).second)
            malformed("duplicate generator label '" + g + "'");
    for (std::size_t r = 0; r < relations_.size(); ++r)
        if (relations_[r].max_index_bound() > generators_.size())
            malformed("relation " + std::to_string(r) + " refers to a generator beyond "
                      + std::to_string(generators_.size()));
}

AbGroupPresentation AbGroupPresentation::from_dense(std::vector<std::string> generators,
                                                    const std::vector<IntVector>& relations)
{
    std::vector<SparseVector> sparse;
    sparse.reserve(relations.size());
    for (std::size_t r = 0; r < relations.size(); ++r)
    {
        if (relations[r].size() != generators.size())
            malformed("relation " + std::to_string(r) + " has length " + std::to_string(relations[r].size())
                      + ", expected " + std::to_string(generators.size()));
        sparse.push_back(SparseVector::from_dense(relations[r]));
    }
    return AbGroupPresentation(std::move(generators), std::move(sparse));
}

std::size_t AbGroupPresentation::index_of(const std::string& label) const
{
    auto it = std::find(generators_.begin(), generators_.end(), label);
    if (it == generators_.end())
        domain_error("UnknownGenerator", "no generator named '" + label + "'");
    return static_cast<std::size_t>(it - generators_.begin());
}

// ---------------------------------------------------------------------------

QuotientGroup::QuotientGroup(std::size_t generators, const std::vector<SparseVector>& relations)
    : elimination_(eliminate_unit_pivots(relations, generators))
{
    smith_ = smith_normal_form(elimination_.residual);
    std::size_t m = elimination_.residual_columns.size();
    for (std::size_t i = 0; i < m; ++i)
    {
        Integer d = i < smith_.invariant_factors.size() ? smith_.invariant_factors[i] : Integer(0);
        if (d == 1)
            continue;
        kept_.push_back(i);
        moduli_.push_back(d);
        if (d == 0)
            ++invariants_.free_rank;
        else
            invariants_.torsion.push_back(d);
    }
}

QuotientGroup::QuotientGroup(const AbGroupPresentation& presentation)
    : QuotientGroup(presentation.generator_count(), presentation.relations())
{
}

IntVector QuotientGroup::reduce_coordinates(IntVector y) const
{
    IntVector out(kept_.size());
    for (std::size_t k = 0; k < kept_.size(); ++k)
        out[k] = moduli_[k] == 0 ? y[kept_[k]] : floor_mod(y[kept_[k]], moduli_[k]);
    return out;
}

IntVector QuotientGroup::normal_form(const SparseVector& v) const
{
    if (v.max_index_bound() > generator_count())
        domain_error("LengthMismatch", "vector refers to generator beyond " + std::to_string(generator_count()));
    SparseVector reduced = elimination_.reduce(v);
    IntVector w = elimination_.restrict_to_residual(reduced);
    return reduce_coordinates(multiply(w, smith_.col_transform));
}

IntVector QuotientGroup::normal_form(const IntVector& v) const
{
    if (v.size() != generator_count())
        domain_error("LengthMismatch", "vector length " + std::to_string(v.size()) + " does not match "
                                           + std::to_string(generator_count()) + " generators");
    return normal_form(SparseVector::from_dense(v));
}

IntVector QuotientGroup::lift(const IntVector& coordinates) const
{
    if (coordinates.size() != kept_.size())
        domain_error("LengthMismatch", "expected " + std::to_string(kept_.size()) + " coordinates");
    std::size_t m = elimination_.residual_columns.size();
    IntVector y(m);
    for (std::size_t k = 0; k < kept_.size(); ++k)
        y[kept_[k]] = coordinates[k];
    IntVector w = m ? multiply(y, smith_.col_inverse) : IntVector{};
    IntVector out(generator_count());
    for (std::size_t i = 0; i < m; ++i)
        out[elimination_.residual_columns[i]] = w[i];
    return out;
}

bool QuotientGroup::is_zero(const IntVector& v) const
{
    for (const auto& x : normal_form(v))
        if (x != 0)
            return false;
    return true;
}

GroupInvariants quotient_invariants(const AbGroupPresentation& g)
{
    return QuotientGroup(g).invariants();
}

IntVector element_normal_form(const AbGroupPresentation& g, const IntVector& v)
{
    return QuotientGroup(g).normal_form(v);
}

// ---------------------------------------------------------------------------

Lattice::Lattice(std::size_t dim, const std::vector<IntVector>& generators)
    : dim_(dim), smith_(smith_normal_form(IntMatrix::from_rows(generators, dim)))
{
}

bool Lattice::contains(const IntVector& x) const
{
    if (x.size() != dim_)
        domain_error("LengthMismatch", "lattice membership query of wrong length");
    IntVector y = multiply(x, smith_.col_transform);
    std::size_t r = rank();
    for (std::size_t i = 0; i < dim_; ++i)
    {
        if (i < r)
        {
            if (y[i] % smith_.invariant_factors[i] != 0)
                return false;
        }
        else if (y[i] != 0)
            return false;
    }
    return true;
}

std::vector<IntVector> preimage_lattice(const IntMatrix& m, const std::vector<IntVector>& target_relations)
{
    IntMatrix stacked = stack_rows(m, IntMatrix::from_rows(target_relations, m.cols()));
    SmithForm s = smith_normal_form(stacked);
    std::vector<IntVector> out;
    for (std::size_t i = s.rank(); i < stacked.rows(); ++i)
    {
        IntVector x(m.rows());
        bool nonzero = false;
        for (std::size_t k = 0; k < m.rows(); ++k)
        {
            x[k] = s.row_transform(i, k);
            nonzero = nonzero || x[k] != 0;
        }
        if (nonzero)
            out.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------------------

AbHom::AbHom(std::shared_ptr<const QuotientGroup> source, std::shared_ptr<const QuotientGroup> target,
             IntMatrix matrix, const std::vector<SparseVector>& source_relations)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != source_->generator_count() || matrix_.cols() != target_->generator_count())
        domain_error("ShapeMismatch", "hom matrix is " + std::to_string(matrix_.rows()) + "x"
                                          + std::to_string(matrix_.cols()) + ", expected "
                                          + std::to_string(source_->generator_count()) + "x"
                                          + std::to_string(target_->generator_count()));
    for (std::size_t r = 0; r < source_relations.size(); ++r)
    {
        IntVector image = target_->normal_form(multiply(source_relations[r], matrix_));
        if (std::any_of(image.begin(), image.end(), [](const Integer& x) { return x != 0; }))
            domain_error("NotWellDefined", "source relation " + std::to_string(r)
                                               + " is not sent into the target relations");
    }
    std::size_t n = source_->coordinate_count();
    std::vector<IntVector> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        IntVector e(n);
        e[k] = 1;
        rows.push_back(apply(source_->lift(e)));
    }
    reduced_ = IntMatrix::from_rows(rows, target_->coordinate_count());
}

IntVector AbHom::apply(const IntVector& v) const
{
    return target_->normal_form(multiply(v, matrix_));
}

HomCheck check_injective(const AbHom& f)
{
    const IntVector& src_mod = f.source().moduli();
    auto kernel = preimage_lattice(f.reduced(), diagonal_relations(f.target().moduli()));
    for (const auto& x : kernel)
        if (!zero_mod(x, src_mod))
            return {false, "nonzero kernel element " + to_string(x)};
    return {true, "kernel generators=" + std::to_string(kernel.size()) + " all vanish in source"};
}

HomCheck check_surjective(const AbHom& f)
{
    IntMatrix stacked = stack_rows(
        f.reduced(), IntMatrix::from_rows(diagonal_relations(f.target().moduli()), f.target().coordinate_count()));
    IntVector d = invariant_factors(stacked);
    std::size_t t = f.target().coordinate_count();
    bool ok = d.size() >= t && std::all_of(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(t),
                                           [](const Integer& x) { return x == 1; });
    return {ok, factors_string(d)};
}

HomCheck check_exact(const AbHom& f, const AbHom& g)
{
    if (f.target_ptr() != g.source_ptr()
        && (f.target().moduli() != g.source().moduli()
            || f.target().generator_count() != g.source().generator_count()))
        domain_error("NotComposable", "target of the first map is not the source of the second");

    const IntVector& mid_mod = g.source().moduli();
    std::size_t mid = mid_mod.size();

    for (std::size_t k = 0; k < f.reduced().rows(); ++k)
    {
        IntVector image = multiply(f.reduced().row(k), g.reduced());
        if (!zero_mod(image, g.target().moduli()))
            return {false, "composite nonzero on source coordinate " + std::to_string(k)};
    }

    std::vector<IntVector> image_rows;
    for (std::size_t k = 0; k < f.reduced().rows(); ++k)
        image_rows.push_back(f.reduced().row(k));
    for (auto& r : diagonal_relations(mid_mod))
        image_rows.push_back(std::move(r));
    Lattice image(mid, image_rows);

    auto kernel = preimage_lattice(g.reduced(), diagonal_relations(g.target().moduli()));
    for (const auto& x : kernel)
        if (!image.contains(x))
            return {false, "kernel element " + to_string(x) + " outside image"};
    return {true, "image " + factors_string(image.invariant_factors()) + " kernel generators="
                      + std::to_string(kernel.size())};
}

bool hom_is_injective(const AbHom& f)
{
    return check_injective(f).holds;
}

bool hom_is_surjective(const AbHom& f)
{
    return check_surjective(f).holds;
}

bool check_exact_at(const AbHom& f, const AbHom& g)
{
    return check_exact(f, g).holds;
}

}  // namespace scissors
