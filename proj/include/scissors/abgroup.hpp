#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "scissors/matrix.hpp"
#include "scissors/smith.hpp"

namespace scissors {

/// Isomorphism type Z^free_rank + Z/t_1 + ... with t_i > 1 and t_i | t_{i+1}.
struct GroupInvariants
{
    std::size_t free_rank = 0;
    IntVector torsion;

    /// "Z^2 + Z/2 + Z/6", or "0" for the trivial group.
    std::string to_string() const;

    friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

/**
 * Free abelian group on named generators modulo relation vectors.
 */
class AbGroupPresentation
{
    public:
        AbGroupPresentation() = default;
        AbGroupPresentation(std::vector<std::string> generators, std::vector<SparseVector> relations);

        static AbGroupPresentation from_dense(std::vector<std::string> generators,
                                              const std::vector<IntVector>& relations);

        const std::vector<std::string>& generators() const { return generators_; }
        const std::vector<SparseVector>& relations() const { return relations_; }
        std::size_t generator_count() const { return generators_.size(); }

        /// Index of a generator label; throws UnknownGenerator.
        std::size_t index_of(const std::string& label) const;

    private:
        std::vector<std::string> generators_;
        std::vector<SparseVector> relations_;
};

/**
 * The quotient Z^n / <relations>, precomputed once so that invariants and
 * normal forms are cheap to query.
 *
 * Canonical coordinates follow the Smith basis with the unit directions
 * dropped: torsion coordinates come first (reduced into [0, d)), free
 * coordinates last. moduli()[k] is d for a torsion coordinate and 0 for a
 * free one.
 */
class QuotientGroup
{
    public:
        QuotientGroup(std::size_t generators, const std::vector<SparseVector>& relations);
        explicit QuotientGroup(const AbGroupPresentation& presentation);

        std::size_t generator_count() const { return elimination_.columns; }
        std::size_t coordinate_count() const { return moduli_.size(); }
        const GroupInvariants& invariants() const { return invariants_; }
        const IntVector& moduli() const { return moduli_; }

        IntVector normal_form(const SparseVector& v) const;
        IntVector normal_form(const IntVector& v) const;

        /// A vector of Z^n whose normal form is `coordinates` (reduced or not).
        IntVector lift(const IntVector& coordinates) const;

        bool is_zero(const IntVector& v) const;

    private:
        IntVector reduce_coordinates(IntVector y) const;

        UnitElimination elimination_;
        SmithForm smith_;
        std::vector<std::size_t> kept_;  // Smith indices that survive as coordinates
        IntVector moduli_;
        GroupInvariants invariants_;
};

GroupInvariants quotient_invariants(const AbGroupPresentation& g);
IntVector element_normal_form(const AbGroupPresentation& g, const IntVector& v);

/**
 * Sublattice of Z^dim spanned by the given rows, with an SNF-based
 * membership test.
 */
class Lattice
{
    public:
        Lattice(std::size_t dim, const std::vector<IntVector>& generators);

        std::size_t dimension() const { return dim_; }
        std::size_t rank() const { return smith_.rank(); }
        const IntVector& invariant_factors() const { return smith_.invariant_factors; }
        bool contains(const IntVector& x) const;

    private:
        std::size_t dim_;
        SmithForm smith_;
};

/// Generators of {x : x·M ∈ rowspace(R)}, where rows(M) = source dimension.
std::vector<IntVector> preimage_lattice(const IntMatrix& m, const std::vector<IntVector>& target_relations);

/**
 * Homomorphism between two quotient groups given on generators: row i of
 * the matrix is the image of source generator i. Construction checks that
 * every source relation is sent into the target relation lattice.
 */
class AbHom
{
    public:
        AbHom(std::shared_ptr<const QuotientGroup> source, std::shared_ptr<const QuotientGroup> target,
              IntMatrix matrix, const std::vector<SparseVector>& source_relations);

        const QuotientGroup& source() const { return *source_; }
        const QuotientGroup& target() const { return *target_; }
        const std::shared_ptr<const QuotientGroup>& source_ptr() const { return source_; }
        const std::shared_ptr<const QuotientGroup>& target_ptr() const { return target_; }
        const IntMatrix& matrix() const { return matrix_; }

        /// Image of a source vector, in target canonical coordinates.
        IntVector apply(const IntVector& v) const;

        /// The map between canonical-coordinate groups: row k is the image of
        /// the k-th source coordinate vector.
        const IntMatrix& reduced() const { return reduced_; }

    private:
        std::shared_ptr<const QuotientGroup> source_;
        std::shared_ptr<const QuotientGroup> target_;
        IntMatrix matrix_;
        IntMatrix reduced_;
};

struct HomCheck
{
    bool holds = false;
    std::string certificate;  // invariant factors of the deciding SNF, or a witness vector
};

HomCheck check_injective(const AbHom& f);
HomCheck check_surjective(const AbHom& f);
HomCheck check_exact(const AbHom& f, const AbHom& g);

bool hom_is_injective(const AbHom& f);
bool hom_is_surjective(const AbHom& f);
bool check_exact_at(const AbHom& f, const AbHom& g);

}  // namespace scissors
