#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scissors/chains.hpp"
#include "scissors/surface.hpp"

namespace scissors {

/// Undirected edges (u < v) of a surface in lexicographic order; the basis
/// of degree 1 in chains_of, each oriented from u to v.
std::vector<std::pair<std::size_t, std::size_t>> edge_list(const TriSurface& s);

/// Simplicial chains in degrees 0..2: vertices, edges, triangles.
ChainComplex chains_of(const TriSurface& s);

/// Chain map of a simplicial inclusion given on vertices (sub id -> ambient
/// id). Throws NotASubcomplex when an edge or triangle has no image.
ChainMap induced_chain_map(const TriSurface& sub, const TriSurface& ambient,
                           const std::vector<std::size_t>& vertex_map);

/**
 * Surfaces A, B, C, D with vertex maps of the inclusions A -> B, A -> C,
 * B -> D, C -> D. D is the union of the images of B and C, meeting exactly
 * in the image of A.
 */
struct SquareInstance
{
    TriSurface a, b, c, d;
    std::vector<std::size_t> a_to_b, a_to_c, b_to_d, c_to_d;
    std::string origin;  // how the instance was produced
};

/// Builds the square from D and two triangle subsets covering it.
/// Throws InvalidSquare if they miss a triangle or meet outside A.
SquareInstance square_from_cover(const TriSurface& d, const std::vector<bool>& in_b, const std::vector<bool>& in_c);

/// A = Ø, D = B ⊔ C.
SquareInstance coproduct_square(const TriSurface& b, const TriSurface& c);

/**
 * Square obtained by thickening a circle of D into parallel bands. For a
 * separating circle A is one annulus and B, C are the two sides with it.
 * Otherwise A is two annuli, C the band between them and B the rest.
 */
SquareInstance collar_square(const TriSurface& d, const EmbeddedCircle& circle);

struct SquareReport
{
    bool pass = false;
    HomologyType pushout_homology;
    HomologyType target_homology;
    std::optional<int> failing_degree;
    PushoutMethod method = PushoutMethod::Coordinate;
    bool chi_additive = false;  // chi(A) + chi(D) = chi(B) + chi(C)
};

/// Pushout of the chains of A -> B and A -> C compared with the chains of D.
SquareReport functor_on_square(const SquareInstance& q);

struct Pi0Report
{
    std::size_t surfaces = 0;
    std::size_t squares = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// k0_class(chains_of(s)) = chi(s) on each surface, and chi additivity on
/// each square, evaluated through both the chains and the classes.
Pi0Report pi0_commutation(const std::vector<TriSurface>& surfaces, const std::vector<SquareInstance>& squares = {});

}  // namespace scissors
