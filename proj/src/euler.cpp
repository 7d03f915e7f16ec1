#include "scissors/euler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "scissors/error.hpp"

namespace scissors {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey key(std::size_t u, std::size_t v)
{
    return u < v ? EdgeKey{u, v} : EdgeKey{v, u};
}

std::vector<EdgeKey> triangle_edges(const Triangle& t)
{
    return {key(t[0], t[1]), key(t[1], t[2]), key(t[2], t[0])};
}

// Position of t in the sorted, deduplicated edge list.
std::size_t edge_index(const std::vector<EdgeKey>& edges, EdgeKey e)
{
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e)
        return npos;
    return static_cast<std::size_t>(it - edges.begin());
}

std::vector<EdgeKey> edges_of(const std::vector<Triangle>& triangles)
{
    std::vector<EdgeKey> edges;
    for (const auto& t : triangles)
        for (const auto& e : triangle_edges(t))
            edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// +1 when (x, y, z) is a cyclic rotation of t, -1 when it is reversed.
int relative_orientation(const Triangle& t, std::size_t x, std::size_t y, std::size_t z)
{
    for (int r = 0; r < 3; ++r)
    {
        if (t[r] != x)
            continue;
        if (t[(r + 1) % 3] == y && t[(r + 2) % 3] == z)
            return 1;
        if (t[(r + 1) % 3] == z && t[(r + 2) % 3] == y)
            return -1;
    }
    return 0;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> edge_list(const TriSurface& s)
{
    return edges_of(s.triangles());
}

ChainComplex chains_of(const TriSurface& s)
{
    std::size_t nv = s.vertex_count();
    auto edges = edge_list(s);
    std::vector<SparseVector> d1;
    for (const auto& [u, v] : edges)
        d1.push_back(SparseVector({{u, -1}, {v, 1}}));
    std::vector<SparseVector> d2;
    for (const auto& t : s.triangles())
    {
        std::vector<SparseVector::Term> terms;
        for (int i = 0; i < 3; ++i)
        {
            std::size_t a = t[i], b = t[(i + 1) % 3];
            terms.push_back({edge_index(edges, key(a, b)), a < b ? 1 : -1});
        }
        d2.push_back(SparseVector(std::move(terms)));
    }
    return ChainComplex(0, {nv, edges.size(), s.triangles().size()},
                        {SparseMatrix(nv, edges.size(), std::move(d1)),
                         SparseMatrix(edges.size(), s.triangles().size(), std::move(d2))});
}

ChainMap induced_chain_map(const TriSurface& sub, const TriSurface& ambient, const std::vector<std::size_t>& vertex_map)
{
    if (vertex_map.size() != sub.vertex_count())
        domain_error("NotASubcomplex", "vertex map has the wrong length");
    std::vector<bool> used(ambient.vertex_count(), false);
    std::vector<SparseVector> m0;
    for (std::size_t v : vertex_map)
    {
        if (v >= ambient.vertex_count() || used[v])
            domain_error("NotASubcomplex", "vertex map is not injective into the ambient surface");
        used[v] = true;
        m0.push_back(SparseVector::unit(v));
    }
    auto sub_edges = edge_list(sub);
    auto amb_edges = edge_list(ambient);
    std::vector<SparseVector> m1;
    for (const auto& [u, v] : sub_edges)
    {
        std::size_t a = vertex_map[u], b = vertex_map[v];
        std::size_t e = edge_index(amb_edges, key(a, b));
        if (e == npos)
            domain_error("NotASubcomplex", "edge " + std::to_string(u) + "-" + std::to_string(v) + " has no image");
        m1.push_back(SparseVector::unit(e, a < b ? 1 : -1));
    }
    std::map<std::array<std::size_t, 3>, std::size_t> by_vertices;
    for (std::size_t t = 0; t < ambient.triangles().size(); ++t)
    {
        auto sorted = ambient.triangles()[t];
        std::sort(sorted.begin(), sorted.end());
        by_vertices[{sorted[0], sorted[1], sorted[2]}] = t;
    }
    std::vector<SparseVector> m2;
    for (const auto& t : sub.triangles())
    {
        std::array<std::size_t, 3> img{vertex_map[t[0]], vertex_map[t[1]], vertex_map[t[2]]};
        std::array<std::size_t, 3> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        auto it = by_vertices.find(sorted);
        if (it == by_vertices.end())
            domain_error("NotASubcomplex", "a triangle has no image");
        int sign = relative_orientation(ambient.triangles()[it->second], img[0], img[1], img[2]);
        m2.push_back(SparseVector::unit(it->second, sign));
    }
    ChainComplex source = chains_of(sub), target = chains_of(ambient);
    std::vector<SparseMatrix> mats{SparseMatrix(target.rank(0), source.rank(0), std::move(m0)),
                                   SparseMatrix(target.rank(1), source.rank(1), std::move(m1)),
                                   SparseMatrix(target.rank(2), source.rank(2), std::move(m2))};
    return ChainMap(std::move(source), std::move(target), std::move(mats));
}

namespace {

struct Sub
{
    TriSurface surface;
    std::vector<std::size_t> from_raw;  // raw vertex -> sub vertex, npos if absent
};

Sub extract(const RawComplex& c, const std::vector<bool>& keep)
{
    RawComplex part;
    part.vertices = c.vertices;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        if (keep[t])
            part.triangles.push_back(c.triangles[t]);
    Sub s;
    s.surface = canonicalize(part, &s.from_raw);
    ValidationReport r = validate(s.surface);
    if (!r.ok)
        domain_error("InvalidSquare", "a piece of the cover is not a surface: " + r.invariant);
    return s;
}

// sub vertex -> ambient vertex, through raw ids.
std::vector<std::size_t> compose(const Sub& sub, const std::vector<std::size_t>& raw_to_ambient)
{
    std::vector<std::size_t> out(sub.surface.vertex_count(), npos);
    for (std::size_t v = 0; v < sub.from_raw.size(); ++v)
        if (sub.from_raw[v] != npos)
            out[sub.from_raw[v]] = raw_to_ambient[v];
    return out;
}

std::set<std::size_t> vertices_where(const RawComplex& c, const std::vector<bool>& keep)
{
    std::set<std::size_t> out;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        if (keep[t])
            out.insert(c.triangles[t].begin(), c.triangles[t].end());
    return out;
}

std::set<EdgeKey> edges_where(const RawComplex& c, const std::vector<bool>& keep)
{
    std::set<EdgeKey> out;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        if (keep[t])
            for (const auto& e : triangle_edges(c.triangles[t]))
                out.insert(e);
    return out;
}

SquareInstance square_from_raw(const RawComplex& c, const std::vector<bool>& in_b, const std::vector<bool>& in_c,
                               std::string origin)
{
    std::size_t n = c.triangles.size();
    if (in_b.size() != n || in_c.size() != n)
        domain_error("InvalidSquare", "cover flags must have one entry per triangle");
    std::vector<bool> in_a(n);
    for (std::size_t t = 0; t < n; ++t)
    {
        if (!in_b[t] && !in_c[t])
            domain_error("InvalidSquare", "triangle " + std::to_string(t) + " is in neither B nor C");
        in_a[t] = in_b[t] && in_c[t];
    }
    auto va = vertices_where(c, in_a), vb = vertices_where(c, in_b), vc = vertices_where(c, in_c);
    for (std::size_t v : vb)
        if (vc.count(v) && !va.count(v))
            domain_error("InvalidSquare", "B and C share vertex " + std::to_string(v) + " outside A");
    auto ea = edges_where(c, in_a), eb = edges_where(c, in_b), ec = edges_where(c, in_c);
    for (const auto& e : eb)
        if (ec.count(e) && !ea.count(e))
            domain_error("InvalidSquare", "B and C share an edge outside A");

    std::vector<std::size_t> raw_to_d;
    SquareInstance q;
    q.origin = std::move(origin);
    q.d = canonicalize(c, &raw_to_d);
    require_valid(q.d);
    Sub a = extract(c, in_a), b = extract(c, in_b), cc = extract(c, in_c);
    q.a = a.surface;
    q.b = b.surface;
    q.c = cc.surface;
    q.b_to_d = compose(b, raw_to_d);
    q.c_to_d = compose(cc, raw_to_d);
    q.a_to_b = compose(a, b.from_raw);
    q.a_to_c = compose(a, cc.from_raw);
    return q;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
    return x;
}

// Union-find of triangles sharing an edge.
std::vector<std::size_t> edge_components(const RawComplex& c)
{
    std::vector<std::size_t> parent(c.triangles.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::map<EdgeKey, std::size_t> first;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        for (const auto& e : triangle_edges(c.triangles[t]))
        {
            auto [it, fresh] = first.emplace(e, t);
            if (!fresh)
                parent[find_root(parent, t)] = find_root(parent, it->second);
        }
    for (std::size_t t = 0; t < parent.size(); ++t)
        parent[t] = find_root(parent, t);
    return parent;
}

std::size_t triangle_at(const RawComplex& c, std::size_t v)
{
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        if (std::find(c.triangles[t].begin(), c.triangles[t].end(), v) != c.triangles[t].end())
            return t;
    return npos;
}

}  // namespace

SquareInstance square_from_cover(const TriSurface& d, const std::vector<bool>& in_b, const std::vector<bool>& in_c)
{
    require_valid(d);
    return square_from_raw(raw(d), in_b, in_c, "cover");
}

SquareInstance coproduct_square(const TriSurface& b, const TriSurface& c)
{
    RawComplex r = raw(b);
    std::size_t shift = r.vertices;
    std::size_t nb = r.triangles.size();
    r.vertices += c.vertex_count();
    for (const auto& t : c.triangles())
        r.triangles.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
    std::vector<bool> in_b(r.triangles.size(), false), in_c(r.triangles.size(), false);
    for (std::size_t t = 0; t < r.triangles.size(); ++t)
        (t < nb ? in_b : in_c)[t] = true;
    return square_from_raw(r, in_b, in_c, "coproduct");
}

SquareInstance collar_square(const TriSurface& d, const EmbeddedCircle& circle)
{
    require_valid(d);
    require_circle(d, circle);
    std::size_t k = circle.vertices.size();
    RawSplit sp = raw_split(raw(d), circle.vertices);
    RawComplex c = sp.complex;
    std::size_t n0 = c.triangles.size();
    auto comp = edge_components(c);
    std::size_t left = comp[triangle_at(c, sp.left[0])];
    std::size_t right = comp[triangle_at(c, sp.right[0])];
    Cycle w = raw_collar_paste(c, sp.left, sp.right, 0);

    std::vector<bool> in_b, in_c;
    if (left != right)
    {
        // L | band l-w | band w-r | R; A is the two bands.
        for (std::size_t t = 0; t < c.triangles.size(); ++t)
        {
            bool band = t >= n0;
            in_b.push_back(band || comp[t] != right);
            in_c.push_back(band || comp[t] == right);
        }
        return square_from_raw(c, in_b, in_c, "separating collar");
    }

    // Split the middle circle again: bands X1 (l-w), X4 (w'-r) from the first
    // collar, X2 and X3 from the second. A = X1 ⊔ X4, C = X1..X4, B = rest ∪ A.
    RawSplit sp2 = raw_split(c, w);
    RawComplex c2 = sp2.complex;
    raw_collar_paste(c2, sp2.left, sp2.right, 0);
    for (std::size_t t = 0; t < c2.triangles.size(); ++t)
    {
        in_b.push_back(t < n0 + 4 * k);
        in_c.push_back(t >= n0);
    }
    return square_from_raw(c2, in_b, in_c, "non-separating collar");
}

SquareReport functor_on_square(const SquareInstance& q)
{
    ChainMap f = induced_chain_map(q.a, q.b, q.a_to_b);
    ChainMap g = induced_chain_map(q.a, q.c, q.a_to_c);
    // The maps into D must exist as chain maps too.
    induced_chain_map(q.b, q.d, q.b_to_d);
    induced_chain_map(q.c, q.d, q.c_to_d);
    PushoutResult p = pushout(f, g);
    ChainComplex cd = chains_of(q.d);

    SquareReport r;
    r.method = p.method;
    r.pushout_homology = homology(p.complex);
    r.target_homology = homology(cd);
    for (int n = 0; n <= 2 && !r.failing_degree; ++n)
        if (!(r.pushout_homology.at(n) == r.target_homology.at(n)))
            r.failing_degree = n;
    r.chi_additive = euler_char(f.source()) + euler_char(cd) == euler_char(f.target()) + euler_char(g.target());
    r.pass = !r.failing_degree && r.chi_additive;
    return r;
}

Pi0Report pi0_commutation(const std::vector<TriSurface>& surfaces, const std::vector<SquareInstance>& squares)
{
    Pi0Report r;
    for (const auto& s : surfaces)
    {
        ++r.surfaces;
        long k0 = k0_class(chains_of(s));
        long chi = euler_characteristic(s);
        if (k0 != chi || classify(s).euler_characteristic() != chi)
            r.failures.push_back("surface " + classify(s).to_string() + ": k0 class " + std::to_string(k0)
                                 + ", chi " + std::to_string(chi));
    }
    for (const auto& q : squares)
    {
        ++r.squares;
        long via_chains = k0_class(chains_of(q.a)) + k0_class(chains_of(q.d)) - k0_class(chains_of(q.b))
                          - k0_class(chains_of(q.c));
        long via_classes = classify(q.a).euler_characteristic() + classify(q.d).euler_characteristic()
                           - classify(q.b).euler_characteristic() - classify(q.c).euler_characteristic();
        if (via_chains != 0 || via_classes != 0)
            r.failures.push_back("square (" + q.origin + "): relation defect " + std::to_string(via_chains)
                                 + " via chains, " + std::to_string(via_classes) + " via classes");
    }
    return r;
}

}  // namespace scissors
