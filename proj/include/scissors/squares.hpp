#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "scissors/abgroup.hpp"
#include "scissors/surface.hpp"

namespace scissors {

/// Objects, a basepoint, and distinguished squares (A, B, C, D): A -> B and
/// C -> D horizontal, A -> C and B -> D vertical.
struct SquaresPresentation
{
    std::vector<std::string> objects;
    std::size_t basepoint = 0;
    std::vector<std::array<std::size_t, 4>> squares;
};

/// Z{objects} modulo [O] and [A] + [D] - [B] - [C] for every square.
AbGroupPresentation k0_presentation(const SquaresPresentation& p);

/**
 * A finite category with squares spelled out in full: morphism list with a
 * composition table, membership in the cofibration and cofiber-map
 * subcategories, distinguished squares given by their four morphisms, and a
 * chosen coproduct (with injections) for every ordered pair of objects.
 */
struct FiniteSquaresCategory
{
    struct Morphism
    {
        std::size_t source = 0;
        std::size_t target = 0;
        bool cofibration = false;
        bool cofiber = false;
    };

    /// top: A -> B, left: A -> C, right: B -> D, bottom: C -> D.
    struct Square
    {
        std::size_t top = 0;
        std::size_t left = 0;
        std::size_t right = 0;
        std::size_t bottom = 0;

        friend bool operator==(const Square&, const Square&) = default;
    };

    struct Coproduct
    {
        std::size_t a = 0;
        std::size_t b = 0;
        std::size_t sum = 0;
        std::size_t in_a = 0;
        std::size_t in_b = 0;
    };

    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    std::vector<std::string> objects;
    std::size_t basepoint = 0;
    std::vector<Morphism> morphisms;
    std::vector<std::size_t> identity;              // per object
    std::vector<std::vector<std::size_t>> compose;  // compose[g][f] = g after f, or none
    std::vector<Square> squares;
    std::vector<Coproduct> coproducts;
};

struct HypothesisCheck
{
    std::string name;
    bool pass = true;
    std::string witness;  // first counterexample when failing
};

/// Checks table sanity, the four axioms of a category with squares, and the
/// three hypotheses under which K0 has the square presentation.
std::vector<HypothesisCheck> check_lemma_hypotheses(const FiniteSquaresCategory& c);

/// All commutative squares whose horizontals are cofibrations and whose
/// verticals are cofiber maps.
std::vector<FiniteSquaresCategory::Square> commutative_squares(const FiniteSquaresCategory& c);

/// The poset O < A, B < S with every commutative square distinguished and
/// joins as coproducts.
FiniteSquaresCategory diamond_category();

// ---------------------------------------------------------------------------
// Truncated category of surfaces.

struct Caps
{
    int genus = 2;
    int boundary = 2;
    int components = 2;

    friend bool operator==(const Caps&, const Caps&) = default;
};

/// Connected types (g, b) within caps, ordered lexicographically.
std::vector<DiffeoClass::Component> connected_types(const Caps& caps);

/// Ø followed by every multiset of connected types with at most
/// caps.components members, ordered by size then lexicographically.
std::vector<DiffeoClass> objects_within(const Caps& caps);

struct Mfd2Instance
{
    Caps caps;
    std::vector<DiffeoClass> classes;  // object i
    SquaresPresentation presentation;
    std::size_t coproduct_squares = 0;
    std::size_t collar_squares = 0;
    std::size_t skipped = 0;  // gluings whose result left the caps

    std::size_t index_of(const DiffeoClass& c) const;  // throws CapExceeded
};

/**
 * Coproduct squares (Ø, X, Y, X ⊔ Y) for every split of an object, and collar
 * squares ({(0,2)}^k, B, C, D) for connected B, C glued along k circles,
 * D = (g_B + g_C + k - 1, b_B + b_C - 2k). k = 2 with C an annulus is
 * the self-gluing of two circles of B.
 */
Mfd2Instance mfd2_instance(const Caps& caps);

struct K0Result
{
    GroupInvariants invariants;
    std::vector<DiffeoClass> classes;
    std::vector<IntVector> coordinates;  // per class, canonical coordinates
};

K0Result k0_of_mfd2(const Caps& caps);

}  // namespace scissors
