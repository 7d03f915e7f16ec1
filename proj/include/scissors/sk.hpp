#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scissors/abgroup.hpp"
#include "scissors/squares.hpp"
#include "scissors/surface.hpp"

namespace scissors {

enum class SKFlavor
{
    Closed,
    WithBoundary,
};

/**
 * Scissors congruence group of surfaces at a truncation. Generators are the
 * connected classes within caps (closed ones only for the closed flavor), so
 * disjoint union is addition of generator vectors.
 *
 * WithBoundary relations are the collar squares of mfd2_instance written on
 * connected generators. Closed relations come from cut-and-paste directly:
 * two piece multisets with the same number of boundary circles, glued in
 * every possible pattern, give equal classes.
 */
struct SKPresentation
{
    SKFlavor flavor = SKFlavor::WithBoundary;
    Caps caps;
    std::vector<DiffeoClass::Component> generators;
    AbGroupPresentation group;

    std::size_t index_of(DiffeoClass::Component c) const;  // throws CapExceeded

    /// Sum of the generators of the components.
    IntVector vector_of(const DiffeoClass& c) const;
};

/// Distinct closed results of gluing every circle of m1 to a circle of m2.
std::vector<DiffeoClass> gluing_outcomes(const DiffeoClass& m1, const DiffeoClass& m2);

SKPresentation build_sk2(const Caps& caps = {3, 3, 2});
SKPresentation build_sk2_boundary(const Caps& caps);

/// C1 = Z generated by the circle.
AbGroupPresentation build_c1();

struct SKClass
{
    std::shared_ptr<const QuotientGroup> group;
    IntVector coordinates;

    friend bool operator==(const SKClass& a, const SKClass& b)
    {
        return a.group == b.group && a.coordinates == b.coordinates;
    }
};

class SKGroup
{
    public:
        explicit SKGroup(SKPresentation presentation);

        const SKPresentation& presentation() const { return presentation_; }
        const std::shared_ptr<const QuotientGroup>& quotient() const { return quotient_; }

        SKClass class_of(const DiffeoClass& c) const;
        SKClass class_of(const TriSurface& s) const;
        SKClass difference(const DiffeoClass& a, const DiffeoClass& b) const;

    private:
        SKPresentation presentation_;
        std::shared_ptr<const QuotientGroup> quotient_;
};

/// SK2 -> SK2^∂ -> C1 -> 0 at one set of caps.
struct SKSequence
{
    SKGroup closed;
    SKGroup boundary;
    std::shared_ptr<const QuotientGroup> c1;
    AbHom alpha;
    AbHom beta;
};

SKSequence build_sequence(const Caps& caps);

SKClass alpha(const SKSequence& seq, const SKClass& x);
IntVector beta(const SKSequence& seq, const SKClass& x);

struct ExactnessReport
{
    Caps caps;
    GroupInvariants sk2;
    GroupInvariants sk2_boundary;
    GroupInvariants c1;
    HomCheck alpha_injective;
    HomCheck exact_at_middle;
    HomCheck beta_surjective;
    bool composite_zero = false;

    bool passed() const
    {
        return alpha_injective.holds && exact_at_middle.holds && beta_surjective.holds && composite_zero;
    }
};

ExactnessReport verify_exact_sequence(const Caps& caps);

/// Euler characteristic, boundary circle count, and the signature, which
/// vanishes identically for surfaces.
struct SKInvariants
{
    long euler_characteristic = 0;
    int boundary_circles = 0;
    long signature = 0;

    friend bool operator==(const SKInvariants&, const SKInvariants&) = default;
};

SKInvariants sk_invariants(const DiffeoClass& c);

struct CompletenessReport
{
    bool holds = true;
    std::size_t pairs = 0;
    std::string counterexample;
};

/// Equal invariants iff equal coordinates, over all generator pairs.
CompletenessReport invariant_completeness(const SKGroup& g);

/// Smallest caps whose boundary presentation contains every given class.
Caps caps_covering(const std::vector<DiffeoClass>& classes);

struct Decision
{
    bool equivalent = false;
    SKInvariants first;
    SKInvariants second;
    IntVector first_coordinates;
    IntVector second_coordinates;
    std::string explanation;
};

/// Decided by coordinate equality in SK2^∂; the invariants explain it.
Decision decide_equivalent(const TriSurface& m, const TriSurface& n);

/// Mirror image: every triangle reversed.
TriSurface mirror(const TriSurface& s);

struct DoublingWitness
{
    TriSurface double_m;  // M glued to its mirror by the identity
    TriSurface l;         // N glued to the mirror of M
    DiffeoClass double_class;
    DiffeoClass l_class;
    IntVector lhs;  // [M] - [N]
    IntVector rhs;  // [DM] - [L]
    bool holds = false;
};

/// The i-th boundary cycle of N is matched with the i-th of the mirror of M.
/// Coordinates are taken in `group` when given, otherwise in a boundary
/// presentation sized to cover all four classes.
DoublingWitness doubling_witness(const TriSurface& m, const TriSurface& n, const SKGroup* group = nullptr);

struct MoveStep
{
    std::vector<EmbeddedCircle> circles;
    Regluing regluing;
};

struct MoveWitness
{
    std::vector<MoveStep> steps;
};

struct WitnessSearch
{
    std::optional<MoveWitness> witness;  // empty when the budget ran out
    std::size_t states_explored = 0;
};

/**
 * Breadth-first search over moves that cut along two circles from
 * find_separating_circles and swap the pairing. States are identified by
 * diffeomorphism class. Deterministic.
 */
WitnessSearch find_witness(const TriSurface& m, const TriSurface& n, std::size_t budget);

/// Applies the steps in order, checking chi and boundary count after each.
/// Throws WitnessReplayFailed.
TriSurface replay_witness(const TriSurface& m, const MoveWitness& w);

struct SkkCertificate
{
    std::size_t circles = 0;
    DiffeoClass phi_class;
    DiffeoClass psi_class;
    IntVector difference;  // SK2^∂ coordinates of [phi gluing] - [psi gluing]
    bool zero = false;
};

/// Two stacks of n annuli glued end to end by phi, and again by psi.
SkkCertificate skk_collapse_check(std::size_t circles, const Regluing& phi, const Regluing& psi);

}  // namespace scissors
