#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace scissors {

using Triangle = std::array<std::size_t, 3>;

/// Vertex sequence of a closed curve, read cyclically.
using Cycle = std::vector<std::size_t>;

/// Directed edge `edge` of a triangle: (t[edge], t[(edge + 1) % 3]).
struct EdgeRef
{
    std::size_t triangle = 0;
    int edge = 0;

    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

using GluedPair = std::pair<EdgeRef, EdgeRef>;

/**
 * Oriented triangulated compact surface, possibly with boundary, possibly
 * disconnected, possibly empty.
 *
 * Triangles are oriented by their cyclic vertex order. Two triangles sharing
 * an edge must traverse it in opposite directions; that pair is listed in
 * the gluing. Unglued edges form the boundary.
 *
 * Operations in this header return canonically relabelled surfaces.
 */
class TriSurface
{
    public:
        TriSurface() = default;
        TriSurface(std::size_t vertices, std::vector<Triangle> triangles, std::vector<GluedPair> gluing);

        /// Gluing derived from the vertex labels (each edge glued to its reverse).
        static TriSurface from_triangles(std::size_t vertices, std::vector<Triangle> triangles);

        std::size_t vertex_count() const { return vertices_; }
        const std::vector<Triangle>& triangles() const { return triangles_; }
        const std::vector<GluedPair>& gluing() const { return gluing_; }
        bool empty() const { return triangles_.empty() && vertices_ == 0; }

        friend bool operator==(const TriSurface&, const TriSurface&) = default;

    private:
        std::size_t vertices_ = 0;
        std::vector<Triangle> triangles_;
        std::vector<GluedPair> gluing_;
};

/// Multiset of connected types (genus, boundary circles), kept sorted.
class DiffeoClass
{
    public:
        using Component = std::pair<int, int>;

        DiffeoClass() = default;
        explicit DiffeoClass(std::vector<Component> components);

        const std::vector<Component>& components() const { return components_; }
        bool empty() const { return components_.empty(); }
        std::size_t size() const { return components_.size(); }

        long euler_characteristic() const;
        int boundary_count() const;
        int max_genus() const;
        int max_boundary() const;

        DiffeoClass operator+(const DiffeoClass& other) const;

        /// "{(0,1),(1,0)}", "{}" for the empty manifold.
        std::string to_string() const;

        friend auto operator<=>(const DiffeoClass&, const DiffeoClass&) = default;

    private:
        std::vector<Component> components_;
};

struct EmbeddedCircle
{
    Cycle vertices;

    friend bool operator==(const EmbeddedCircle&, const EmbeddedCircle&) = default;
};

struct ValidationReport
{
    bool ok = true;
    std::string invariant;  // empty when ok
    std::string detail;
};

ValidationReport validate(const TriSurface& s);

/// Throws InvalidSurface naming the first violated invariant.
void require_valid(const TriSurface& s);

long euler_characteristic(const TriSurface& s);
DiffeoClass classify(const TriSurface& s);

/// Boundary cycles in the induced orientation, each starting at its least
/// vertex, sorted by that vertex.
std::vector<Cycle> boundary_cycles(const TriSurface& s);

/// Component index per triangle (components numbered by least triangle).
std::vector<std::size_t> triangle_components(const TriSurface& s);
std::size_t component_count(const TriSurface& s);

TriSurface disjoint_union(const TriSurface& a, const TriSurface& b);

// ---------------------------------------------------------------------------
// Raw complexes: vertex ids and triangle order are preserved, new vertices
// are appended. Used to chain several operations before relabelling once.

struct RawComplex
{
    std::size_t vertices = 0;
    std::vector<Triangle> triangles;
};

RawComplex raw(const TriSurface& s);

/// Canonical relabelling: triangles rotated to start at their least vertex,
/// vertices renumbered by breadth-first first appearance from the least
/// triangle of each component, triangles sorted. Unused vertices vanish.
/// `vertex_map`, if given, receives old id -> new id (npos for dropped ids).
TriSurface canonicalize(const RawComplex& c, std::vector<std::size_t>* vertex_map = nullptr);

std::vector<Cycle> raw_boundary_cycles(const RawComplex& c);

struct RawSplit
{
    RawComplex complex;
    Cycle left;   // left[t] = v_t; the side on the left of the circle
    Cycle right;  // right[u] = v'_{-u}; identity regluing has offset 0
};

/// Duplicates the circle: triangles on its right get fresh copies of its
/// vertices. No validity checks.
RawSplit raw_split(const RawComplex& c, const Cycle& circle);

/// Glues two boundary cycles of equal length k through a collar so that
/// left[t] is identified with right[(offset - t) mod k]. Adds k vertices and
/// 4k triangles; returns the middle cycle w, oriented like `left`.
Cycle raw_collar_paste(RawComplex& c, const Cycle& left, const Cycle& right, std::size_t offset);

/// Subdivides edges of a boundary cycle until it has `target` edges.
/// Returns the refined cycle (same orientation, same starting vertex).
Cycle raw_refine(RawComplex& c, const Cycle& cycle, std::size_t target);

// ---------------------------------------------------------------------------
// Cut and paste.

/// A cut circle after cutting: the copy on the first piece and the copy on
/// the second, matched as first[t] <-> second[(-t) mod k].
struct CutCircle
{
    Cycle first;
    Cycle second;
};

struct CutResult
{
    TriSurface surface;
    std::vector<CutCircle> circles;
    std::vector<int> side;  // per triangle of `surface`: 0 first piece, 1 second piece
};

/**
 * Cuts along pairwise disjoint circles. The pieces must split into two
 * groups with every circle having one copy in each group; otherwise
 * NonSeparating is raised (double_circle turns a non-separating circle into
 * a separating pair).
 */
CutResult cut(const TriSurface& s, const std::vector<EmbeddedCircle>& circles);
CutResult cut(const TriSurface& s, const EmbeddedCircle& c);

/// Glues boundary cycle `left` to boundary cycle `right`: left[t] meets
/// right[(offset - t) mod k]. A non-reversing gluing (left[t] meets
/// right[offset + t]) would flip orientation and is rejected.
struct BoundaryGluing
{
    Cycle left;
    Cycle right;
    std::size_t offset = 0;
    bool reversing = true;
};

/// The gluing that undoes a cut along one circle.
BoundaryGluing canonical_regluing(const CutCircle& c);

TriSurface paste(const TriSurface& s, const std::vector<BoundaryGluing>& gluings);
TriSurface paste(const TriSurface& s, const BoundaryGluing& g);

TriSurface refine_boundary(const TriSurface& s, const Cycle& cycle, std::size_t target_length);

struct DoubledCircle
{
    TriSurface surface;
    EmbeddedCircle first;
    EmbeddedCircle second;  // parallel copy; the thin annulus between lies right of both
};

DoubledCircle double_circle(const TriSurface& s, const EmbeddedCircle& c);

/// Pairing of first copies with second copies after a cut, plus a cyclic
/// offset per pair: first_i is glued to second_{permutation[i]}.
struct Regluing
{
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> offsets;

    static Regluing identity(std::size_t circles);
};

/// Cut along the circles, then paste back with the given regluing. Cycles of
/// unequal length are refined to match first.
TriSurface sk_move(const TriSurface& s, const std::vector<EmbeddedCircle>& circles, const Regluing& regluing);

/// A separating circle found by region growing, with the classes of its two
/// sides (the left side first).
struct SeparatingCircle
{
    EmbeddedCircle circle;
    std::size_t component = 0;
    DiffeoClass::Component left;
    DiffeoClass::Component right;
};

/// A finite family of separating circles, at most one per component and
/// per unordered pair of side types.
std::vector<SeparatingCircle> find_separating_circles(const TriSurface& s);

/// Checks the circle is simple, of length >= 3, runs along edges, and avoids
/// the boundary. Throws InvalidCircle or CircleTouchesBoundary.
void require_circle(const TriSurface& s, const EmbeddedCircle& c);

}  // namespace scissors
