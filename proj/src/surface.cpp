#include "scissors/surface.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

using Edge = std::pair<std::size_t, std::size_t>;

Edge undirected(std::size_t a, std::size_t b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

Edge directed(const Triangle& t, int e)
{
    return {t[e], t[(e + 1) % 3]};
}

Triangle rotate_min_first(Triangle t)
{
    while (t[0] > t[1] || t[0] > t[2])
        t = {t[1], t[2], t[0]};
    return t;
}

std::string triangle_string(const Triangle& t)
{
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

std::string cycle_string(const Cycle& c)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < c.size(); ++i)
        out << (i ? "," : "") << c[i];
    out << "]";
    return out.str();
}

class UnionFind
{
    public:
        explicit UnionFind(std::size_t n) : parent_(n)
        {
            std::iota(parent_.begin(), parent_.end(), std::size_t{0});
        }

        std::size_t find(std::size_t x)
        {
            while (parent_[x] != x)
            {
                parent_[x] = parent_[parent_[x]];
                x = parent_[x];
            }
            return x;
        }

        void unite(std::size_t a, std::size_t b)
        {
            a = find(a);
            b = find(b);
            if (a != b)
                parent_[std::max(a, b)] = std::min(a, b);
        }

    private:
        std::vector<std::size_t> parent_;
};

std::map<Edge, EdgeRef> directed_edges(const std::vector<Triangle>& tris)
{
    std::map<Edge, EdgeRef> out;
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (int e = 0; e < 3; ++e)
            out.emplace(directed(tris[t], e), EdgeRef{t, e});
    return out;
}

std::vector<GluedPair> derive_gluing(const std::vector<Triangle>& tris)
{
    auto edges = directed_edges(tris);
    std::vector<GluedPair> out;
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(tris[t], e);
            auto it = edges.find({b, a});
            if (it == edges.end())
                continue;
            EdgeRef self{t, e};
            if (self < it->second)
                out.emplace_back(self, it->second);
        }
    return out;
}

// Component id per triangle via shared vertices; ids numbered by least triangle.
std::vector<std::size_t> raw_triangle_components(const RawComplex& c)
{
    UnionFind uf(c.triangles.size());
    std::vector<std::size_t> owner(c.vertices, npos);
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        for (std::size_t v : c.triangles[t])
        {
            if (owner[v] == npos)
                owner[v] = t;
            else
                uf.unite(owner[v], t);
        }
    std::vector<std::size_t> id(c.triangles.size());
    std::map<std::size_t, std::size_t> root_id;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
    {
        auto [it, inserted] = root_id.emplace(uf.find(t), root_id.size());
        id[t] = it->second;
    }
    return id;
}

// Finds the triangle containing directed edge (a, b).
std::size_t triangle_with(const RawComplex& c, std::size_t a, std::size_t b)
{
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        for (int e = 0; e < 3; ++e)
            if (directed(c.triangles[t], e) == Edge{a, b})
                return t;
    return npos;
}

// Rotation r with given[t] == cycle[(t + r) % k], or npos.
std::size_t rotation_of(const Cycle& cycle, const Cycle& given)
{
    if (cycle.size() != given.size() || cycle.empty())
        return npos;
    std::size_t k = cycle.size();
    auto it = std::find(cycle.begin(), cycle.end(), given[0]);
    if (it == cycle.end())
        return npos;
    std::size_t r = static_cast<std::size_t>(it - cycle.begin());
    for (std::size_t t = 0; t < k; ++t)
        if (given[t] != cycle[(t + r) % k])
            return npos;
    return r;
}

// Index of the boundary cycle `given` is a rotation of; raises for
// non-boundary or reversed cycles.
std::size_t locate_boundary_cycle(const std::vector<Cycle>& cycles, const Cycle& given)
{
    for (std::size_t i = 0; i < cycles.size(); ++i)
    {
        if (rotation_of(cycles[i], given) != npos)
            return i;
        Cycle reversed(given.rbegin(), given.rend());
        if (rotation_of(cycles[i], reversed) != npos)
            domain_error("OrientationClash", "cycle " + cycle_string(given)
                                                 + " runs against the boundary orientation");
    }
    domain_error("NotBoundaryCycle", "cycle " + cycle_string(given) + " is not a boundary cycle");
}

std::vector<std::size_t> map_cycle(const Cycle& c, const std::vector<std::size_t>& m)
{
    Cycle out;
    out.reserve(c.size());
    for (std::size_t v : c)
        out.push_back(m[v]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

TriSurface::TriSurface(std::size_t vertices, std::vector<Triangle> triangles, std::vector<GluedPair> gluing)
    : vertices_(vertices), triangles_(std::move(triangles)), gluing_(std::move(gluing))
{
}

TriSurface TriSurface::from_triangles(std::size_t vertices, std::vector<Triangle> triangles)
{
    auto gluing = derive_gluing(triangles);
    return TriSurface(vertices, std::move(triangles), std::move(gluing));
}

DiffeoClass::DiffeoClass(std::vector<Component> components) : components_(std::move(components))
{
    for (const auto& [g, b] : components_)
        if (g < 0 || b < 0)
            domain_error("InvalidClass", "genus and boundary count must be nonnegative");
    std::sort(components_.begin(), components_.end());
}

long DiffeoClass::euler_characteristic() const
{
    long chi = 0;
    for (const auto& [g, b] : components_)
        chi += 2 - 2 * g - b;
    return chi;
}

int DiffeoClass::boundary_count() const
{
    int total = 0;
    for (const auto& c : components_)
        total += c.second;
    return total;
}

int DiffeoClass::max_genus() const
{
    int m = 0;
    for (const auto& c : components_)
        m = std::max(m, c.first);
    return m;
}

int DiffeoClass::max_boundary() const
{
    int m = 0;
    for (const auto& c : components_)
        m = std::max(m, c.second);
    return m;
}

DiffeoClass DiffeoClass::operator+(const DiffeoClass& other) const
{
    std::vector<Component> all = components_;
    all.insert(all.end(), other.components_.begin(), other.components_.end());
    return DiffeoClass(std::move(all));
}

std::string DiffeoClass::to_string() const
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < components_.size(); ++i)
        out << (i ? "," : "") << "(" << components_[i].first << "," << components_[i].second << ")";
    out << "}";
    return out.str();
}

// ---------------------------------------------------------------------------

ValidationReport validate(const TriSurface& s)
{
    auto fail = [](std::string invariant, std::string detail) {
        return ValidationReport{false, std::move(invariant), std::move(detail)};
    };
    const auto& tris = s.triangles();
    std::size_t n = s.vertex_count();

    for (std::size_t t = 0; t < tris.size(); ++t)
    {
        for (std::size_t v : tris[t])
            if (v >= n)
                return fail("VertexRange", "triangle " + std::to_string(t) + " uses vertex " + std::to_string(v)
                                               + " but there are " + std::to_string(n));
        if (tris[t][0] == tris[t][1] || tris[t][1] == tris[t][2] || tris[t][0] == tris[t][2])
            return fail("DegenerateTriangle", "triangle " + std::to_string(t) + " repeats a vertex");
    }

    std::map<EdgeRef, EdgeRef> partner;
    for (const auto& [x, y] : s.gluing())
    {
        for (const EdgeRef& r : {x, y})
            if (r.triangle >= tris.size() || r.edge < 0 || r.edge > 2)
                return fail("GluingReference", "gluing refers to missing edge (" + std::to_string(r.triangle) + ","
                                                   + std::to_string(r.edge) + ")");
        if (x == y || partner.count(x) || partner.count(y))
            return fail("GluingReference", "edge (" + std::to_string(x.triangle) + "," + std::to_string(x.edge)
                                               + ") is glued more than once");
        partner[x] = y;
        partner[y] = x;
        Edge ex = directed(tris[x.triangle], x.edge), ey = directed(tris[y.triangle], y.edge);
        if (ex == ey)
            return fail("Orientation", "triangles " + std::to_string(x.triangle) + " and "
                                           + std::to_string(y.triangle) + " traverse glued edge "
                                           + std::to_string(ex.first) + "->" + std::to_string(ex.second)
                                           + " in the same direction");
        if (ex.first != ey.second || ex.second != ey.first)
            return fail("GluingMismatch", "glued edges " + std::to_string(ex.first) + "-" + std::to_string(ex.second)
                                              + " and " + std::to_string(ey.first) + "-"
                                              + std::to_string(ey.second) + " have different endpoints");
    }

    std::map<Edge, std::vector<EdgeRef>> by_edge;
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(tris[t], e);
            by_edge[undirected(a, b)].push_back({t, e});
        }
    for (const auto& [edge, refs] : by_edge)
    {
        std::string name = std::to_string(edge.first) + "-" + std::to_string(edge.second);
        if (refs.size() > 2)
            return fail("EdgeMultiplicity", "edge " + name + " lies on " + std::to_string(refs.size()) + " triangles");
        if (refs.size() == 2)
        {
            Edge e0 = directed(tris[refs[0].triangle], refs[0].edge);
            Edge e1 = directed(tris[refs[1].triangle], refs[1].edge);
            if (e0 == e1)
                return fail("Orientation", "triangles " + std::to_string(refs[0].triangle) + " and "
                                               + std::to_string(refs[1].triangle) + " traverse edge " + name
                                               + " in the same direction");
            auto it = partner.find(refs[0]);
            if (it == partner.end() || !(it->second == refs[1]))
                return fail("UngluedEdges", "edge " + name + " is shared by triangles "
                                                + std::to_string(refs[0].triangle) + " and "
                                                + std::to_string(refs[1].triangle) + " but not glued");
        }
    }

    std::set<Triangle> seen;
    for (std::size_t t = 0; t < tris.size(); ++t)
    {
        Triangle sorted = tris[t];
        std::sort(sorted.begin(), sorted.end());
        if (!seen.insert(sorted).second)
            return fail("DuplicateTriangle", "triangle " + std::to_string(t) + " " + triangle_string(tris[t])
                                                 + " repeats an earlier vertex set");
    }

    std::vector<std::vector<Edge>> link(n);
    for (const auto& t : tris)
        for (int i = 0; i < 3; ++i)
            link[t[i]].push_back({t[(i + 1) % 3], t[(i + 2) % 3]});
    for (std::size_t v = 0; v < n; ++v)
    {
        if (link[v].empty())
            return fail("IsolatedVertex", "vertex " + std::to_string(v) + " lies on no triangle");
    }
    for (std::size_t v = 0; v < n; ++v)
    {
        std::map<std::size_t, int> out_deg, in_deg;
        std::map<std::size_t, std::size_t> index;
        for (const auto& [a, b] : link[v])
        {
            ++out_deg[a];
            ++in_deg[b];
            index.emplace(a, index.size());
            index.emplace(b, index.size());
        }
        UnionFind uf(index.size());
        for (const auto& [a, b] : link[v])
            uf.unite(index[a], index[b]);
        bool connected = true;
        for (const auto& [x, i] : index)
            connected = connected && uf.find(i) == 0;
        std::size_t sources = 0, sinks = 0;
        bool degrees_ok = true;
        for (const auto& [x, i] : index)
        {
            int o = out_deg[x], in = in_deg[x];
            if (o > 1 || in > 1)
                degrees_ok = false;
            if (o == 1 && in == 0)
                ++sources;
            if (o == 0 && in == 1)
                ++sinks;
        }
        bool cycle = sources == 0 && sinks == 0 && index.size() == link[v].size();
        bool path = sources == 1 && sinks == 1 && index.size() == link[v].size() + 1;
        if (!connected || !degrees_ok || !(cycle || path))
            return fail("VertexLink", "link of vertex " + std::to_string(v) + " is neither a cycle nor a path");
    }
    return {};
}

void require_valid(const TriSurface& s)
{
    ValidationReport r = validate(s);
    if (!r.ok)
        domain_error("InvalidSurface", r.invariant + ": " + r.detail);
}

long euler_characteristic(const TriSurface& s)
{
    std::set<Edge> edges;
    for (const auto& t : s.triangles())
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(t, e);
            edges.insert(undirected(a, b));
        }
    return static_cast<long>(s.vertex_count()) - static_cast<long>(edges.size())
           + static_cast<long>(s.triangles().size());
}

std::vector<Cycle> raw_boundary_cycles(const RawComplex& c)
{
    auto edges = directed_edges(c.triangles);
    std::map<std::size_t, std::size_t> next;
    for (const auto& [e, ref] : edges)
        if (!edges.count({e.second, e.first}))
            next[e.first] = e.second;
    std::vector<Cycle> out;
    std::set<std::size_t> used;
    for (const auto& [start, unused] : next)
    {
        if (used.count(start))
            continue;
        Cycle cycle;
        std::size_t v = start;
        while (!used.count(v))
        {
            used.insert(v);
            cycle.push_back(v);
            auto it = next.find(v);
            if (it == next.end())
                break;
            v = it->second;
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::vector<Cycle> boundary_cycles(const TriSurface& s)
{
    return raw_boundary_cycles(raw(s));
}

std::vector<std::size_t> triangle_components(const TriSurface& s)
{
    return raw_triangle_components(raw(s));
}

std::size_t component_count(const TriSurface& s)
{
    auto ids = triangle_components(s);
    return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

DiffeoClass classify(const TriSurface& s)
{
    require_valid(s);
    auto comp = triangle_components(s);
    std::size_t k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<long> verts(k), edges(k), faces(k), bounds(k);
    std::vector<std::size_t> vertex_comp(s.vertex_count(), npos);
    std::set<Edge> seen;
    for (std::size_t t = 0; t < s.triangles().size(); ++t)
    {
        const auto& tri = s.triangles()[t];
        ++faces[comp[t]];
        for (int e = 0; e < 3; ++e)
        {
            if (vertex_comp[tri[e]] == npos)
            {
                vertex_comp[tri[e]] = comp[t];
                ++verts[comp[t]];
            }
            auto [a, b] = directed(tri, e);
            if (seen.insert(undirected(a, b)).second)
                ++edges[comp[t]];
        }
    }
    for (const auto& c : boundary_cycles(s))
        ++bounds[vertex_comp[c[0]]];
    std::vector<DiffeoClass::Component> parts;
    for (std::size_t i = 0; i < k; ++i)
    {
        long chi = verts[i] - edges[i] + faces[i];
        long twice_genus = 2 - chi - bounds[i];
        if (twice_genus < 0 || twice_genus % 2 != 0)
            domain_error("InvalidComplex", "component " + std::to_string(i) + " has chi=" + std::to_string(chi)
                                               + " and b=" + std::to_string(bounds[i])
                                               + ", which no oriented surface has");
        parts.emplace_back(static_cast<int>(twice_genus / 2), static_cast<int>(bounds[i]));
    }
    return DiffeoClass(std::move(parts));
}

// ---------------------------------------------------------------------------

RawComplex raw(const TriSurface& s)
{
    return RawComplex{s.vertex_count(), s.triangles()};
}

TriSurface canonicalize(const RawComplex& c, std::vector<std::size_t>* vertex_map)
{
    std::vector<Triangle> tris;
    tris.reserve(c.triangles.size());
    for (const auto& t : c.triangles)
        tris.push_back(rotate_min_first(t));

    std::map<Edge, std::vector<std::size_t>> by_edge;
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(tris[t], e);
            by_edge[undirected(a, b)].push_back(t);
        }
    auto less_triangle = [&](std::size_t x, std::size_t y) {
        return tris[x] != tris[y] ? tris[x] < tris[y] : x < y;
    };

    std::vector<std::size_t> order(tris.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), less_triangle);

    std::vector<std::size_t> relabel(c.vertices, npos);
    std::size_t next_id = 0;
    std::vector<bool> visited(tris.size(), false);
    for (std::size_t start : order)
    {
        if (visited[start])
            continue;
        std::queue<std::size_t> queue;
        queue.push(start);
        visited[start] = true;
        while (!queue.empty())
        {
            std::size_t t = queue.front();
            queue.pop();
            for (std::size_t v : tris[t])
                if (relabel[v] == npos)
                    relabel[v] = next_id++;
            for (int e = 0; e < 3; ++e)
            {
                auto [a, b] = directed(tris[t], e);
                std::vector<std::size_t> around = by_edge[undirected(a, b)];
                std::sort(around.begin(), around.end(), less_triangle);
                for (std::size_t u : around)
                    if (!visited[u])
                    {
                        visited[u] = true;
                        queue.push(u);
                    }
            }
        }
    }

    std::vector<Triangle> out;
    out.reserve(tris.size());
    for (const auto& t : tris)
        out.push_back(rotate_min_first({relabel[t[0]], relabel[t[1]], relabel[t[2]]}));
    std::sort(out.begin(), out.end());
    if (vertex_map)
        *vertex_map = relabel;
    return TriSurface::from_triangles(next_id, std::move(out));
}

RawSplit raw_split(const RawComplex& c, const Cycle& circle)
{
    std::size_t k = circle.size();
    std::vector<std::vector<std::size_t>> incident(c.vertices);
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        for (std::size_t v : c.triangles[t])
            incident[v].push_back(t);

    RawSplit out{c, circle, Cycle(k)};
    Cycle copies(k);
    for (std::size_t t = 0; t < k; ++t)
    {
        std::size_t v = circle[t];
        std::size_t prev = circle[(t + k - 1) % k];
        std::size_t next = circle[(t + 1) % k];

        std::size_t start = npos;
        for (std::size_t tri : incident[v])
            for (int e = 0; e < 3; ++e)
                if (directed(c.triangles[tri], e) == Edge{next, v})
                    start = tri;
        if (start == npos)
            domain_error("InvalidCircle", "no triangle to the right of circle edge " + std::to_string(v) + "->"
                                              + std::to_string(next));

        std::set<std::size_t> fan{start};
        std::vector<std::size_t> stack{start};
        while (!stack.empty())
        {
            std::size_t tri = stack.back();
            stack.pop_back();
            for (std::size_t y : c.triangles[tri])
            {
                if (y == v || y == prev || y == next)
                    continue;
                for (std::size_t other : incident[v])
                {
                    if (fan.count(other))
                        continue;
                    const auto& ot = c.triangles[other];
                    if (std::find(ot.begin(), ot.end(), y) != ot.end())
                    {
                        fan.insert(other);
                        stack.push_back(other);
                    }
                }
            }
        }

        std::size_t copy = out.complex.vertices++;
        copies[t] = copy;
        for (std::size_t tri : fan)
            for (auto& x : out.complex.triangles[tri])
                if (x == v)
                    x = copy;
    }
    for (std::size_t u = 0; u < k; ++u)
        out.right[u] = copies[(k - u) % k];
    return out;
}

Cycle raw_collar_paste(RawComplex& c, const Cycle& left, const Cycle& right, std::size_t offset)
{
    std::size_t k = left.size();
    if (right.size() != k || k < 3)
        domain_error("LengthMismatch", "collar needs two cycles of equal length >= 3");
    std::size_t w0 = c.vertices;
    c.vertices += k;
    auto w = [&](std::size_t t) { return w0 + t % k; };
    auto wr = [&](std::size_t u) { return w((offset % k + k - u % k) % k); };
    for (std::size_t t = 0; t < k; ++t)
    {
        c.triangles.push_back({left[(t + 1) % k], left[t], w(t)});
        c.triangles.push_back({left[(t + 1) % k], w(t), w(t + 1)});
    }
    for (std::size_t u = 0; u < k; ++u)
    {
        c.triangles.push_back({right[(u + 1) % k], right[u], wr(u)});
        c.triangles.push_back({right[(u + 1) % k], wr(u), wr(u + 1)});
    }
    Cycle middle(k);
    for (std::size_t t = 0; t < k; ++t)
        middle[t] = w(t);
    return middle;
}

Cycle raw_refine(RawComplex& c, const Cycle& cycle, std::size_t target)
{
    if (target < cycle.size())
        domain_error("ShrinkRequested", "cannot refine a cycle of length " + std::to_string(cycle.size())
                                            + " down to " + std::to_string(target));
    Cycle cur = cycle;
    std::size_t p = 0;
    while (cur.size() < target)
    {
        std::size_t a = cur[p], b = cur[(p + 1) % cur.size()];
        std::size_t t = triangle_with(c, a, b);
        if (t == npos)
            domain_error("NotBoundaryCycle", "edge " + std::to_string(a) + "->" + std::to_string(b)
                                                 + " is not on the complex");
        Triangle tri = c.triangles[t];
        while (tri[0] != a)
            tri = {tri[1], tri[2], tri[0]};
        std::size_t x = tri[2];
        std::size_t m = c.vertices++;
        c.triangles[t] = {a, m, x};
        c.triangles.push_back({m, b, x});
        cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(p + 1), m);
        p = (p + 2) % cur.size();
    }
    return cur;
}

// ---------------------------------------------------------------------------

TriSurface disjoint_union(const TriSurface& a, const TriSurface& b)
{
    RawComplex c = raw(a);
    std::size_t shift = c.vertices;
    c.vertices += b.vertex_count();
    for (const auto& t : b.triangles())
        c.triangles.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
    return canonicalize(c);
}

void require_circle(const TriSurface& s, const EmbeddedCircle& c)
{
    const Cycle& v = c.vertices;
    if (v.size() < 3)
        domain_error("InvalidCircle", "a circle needs at least 3 vertices");
    std::set<std::size_t> distinct(v.begin(), v.end());
    if (distinct.size() != v.size())
        domain_error("InvalidCircle", "circle " + cycle_string(v) + " repeats a vertex");
    for (std::size_t x : v)
        if (x >= s.vertex_count())
            domain_error("InvalidCircle", "circle vertex " + std::to_string(x) + " does not exist");

    std::set<std::size_t> on_boundary;
    for (const auto& cyc : boundary_cycles(s))
        on_boundary.insert(cyc.begin(), cyc.end());
    std::map<Edge, int> multiplicity;
    for (const auto& t : s.triangles())
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(t, e);
            ++multiplicity[undirected(a, b)];
        }
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (on_boundary.count(v[i]))
            domain_error("CircleTouchesBoundary", "circle vertex " + std::to_string(v[i]) + " lies on the boundary");
        std::size_t a = v[i], b = v[(i + 1) % v.size()];
        auto it = multiplicity.find(undirected(a, b));
        if (it == multiplicity.end())
            domain_error("InvalidCircle", "circle step " + std::to_string(a) + "-" + std::to_string(b)
                                              + " is not an edge");
    }
}

CutResult cut(const TriSurface& s, const std::vector<EmbeddedCircle>& circles)
{
    require_valid(s);
    std::set<std::size_t> used;
    for (const auto& c : circles)
    {
        require_circle(s, c);
        for (std::size_t v : c.vertices)
            if (!used.insert(v).second)
                domain_error("InvalidCircle", "circles must be pairwise disjoint; vertex " + std::to_string(v)
                                                  + " is shared");
    }

    RawComplex c = raw(s);
    std::vector<Cycle> lefts, rights;
    for (const auto& circle : circles)
    {
        RawSplit sp = raw_split(c, circle.vertices);
        c = std::move(sp.complex);
        lefts.push_back(std::move(sp.left));
        rights.push_back(std::move(sp.right));
    }

    auto comp = raw_triangle_components(c);
    std::size_t ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::pair<std::size_t, std::size_t>> sides;
    for (std::size_t i = 0; i < circles.size(); ++i)
    {
        std::size_t l = comp[triangle_with(c, lefts[i][0], lefts[i][1])];
        std::size_t r = comp[triangle_with(c, rights[i][0], rights[i][1])];
        if (l == r)
            domain_error("NonSeparating", "circle " + cycle_string(circles[i].vertices)
                                              + " does not separate; cut along double_circle instead");
        sides.emplace_back(l, r);
    }

    // Two-colour the pieces so that every circle has one copy per colour.
    std::vector<int> colour(ncomp, -1);
    for (std::size_t i = 0; i < circles.size(); ++i)
    {
        if (colour[sides[i].first] != -1)
            continue;
        colour[sides[i].first] = 0;
        bool changed = true;
        while (changed)
        {
            changed = false;
            for (const auto& [l, r] : sides)
            {
                if (colour[l] != -1 && colour[r] == -1)
                {
                    colour[r] = 1 - colour[l];
                    changed = true;
                }
                else if (colour[r] != -1 && colour[l] == -1)
                {
                    colour[l] = 1 - colour[r];
                    changed = true;
                }
            }
        }
    }
    for (std::size_t i = 0; i < circles.size(); ++i)
        if (colour[sides[i].first] == colour[sides[i].second])
            domain_error("NonSeparating", "the circles do not split the surface into two sides; cut along "
                                          "double_circle instead");
    for (auto& x : colour)
        if (x == -1)
            x = 0;

    std::vector<int> vertex_colour(c.vertices, 0);
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
        for (std::size_t v : c.triangles[t])
            vertex_colour[v] = colour[comp[t]];

    std::vector<std::size_t> relabel;
    CutResult out;
    out.surface = canonicalize(c, &relabel);
    std::vector<int> colour_by_new(out.surface.vertex_count(), 0);
    for (std::size_t v = 0; v < relabel.size(); ++v)
        if (relabel[v] != npos)
            colour_by_new[relabel[v]] = vertex_colour[v];
    for (const auto& t : out.surface.triangles())
        out.side.push_back(colour_by_new[t[0]]);
    for (std::size_t i = 0; i < circles.size(); ++i)
    {
        Cycle l = map_cycle(lefts[i], relabel), r = map_cycle(rights[i], relabel);
        if (colour[sides[i].first] == 0)
            out.circles.push_back({std::move(l), std::move(r)});
        else
            out.circles.push_back({std::move(r), std::move(l)});
    }
    return out;
}

CutResult cut(const TriSurface& s, const EmbeddedCircle& c)
{
    return cut(s, std::vector<EmbeddedCircle>{c});
}

BoundaryGluing canonical_regluing(const CutCircle& c)
{
    return BoundaryGluing{c.first, c.second, 0, true};
}

TriSurface paste(const TriSurface& s, const std::vector<BoundaryGluing>& gluings)
{
    require_valid(s);
    auto cycles = boundary_cycles(s);
    std::set<std::size_t> used;
    RawComplex c = raw(s);
    for (const auto& g : gluings)
    {
        std::size_t li = locate_boundary_cycle(cycles, g.left);
        std::size_t ri = locate_boundary_cycle(cycles, g.right);
        if (li == ri)
            domain_error("InvalidGluing", "a boundary cycle cannot be glued to itself");
        if (!used.insert(li).second || !used.insert(ri).second)
            domain_error("InvalidGluing", "a boundary cycle appears in two gluings");
        if (g.left.size() != g.right.size())
            domain_error("LengthMismatch", "cycles have " + std::to_string(g.left.size()) + " and "
                                               + std::to_string(g.right.size())
                                               + " edges; refine_boundary the shorter one first");
        if (!g.reversing)
            domain_error("OrientationClash", "the matching preserves the boundary orientation; the glued surface "
                                             "would not be oriented");
        raw_collar_paste(c, g.left, g.right, g.offset);
    }
    return canonicalize(c);
}

TriSurface paste(const TriSurface& s, const BoundaryGluing& g)
{
    return paste(s, std::vector<BoundaryGluing>{g});
}

TriSurface refine_boundary(const TriSurface& s, const Cycle& cycle, std::size_t target_length)
{
    require_valid(s);
    locate_boundary_cycle(boundary_cycles(s), cycle);
    RawComplex c = raw(s);
    raw_refine(c, cycle, target_length);
    return canonicalize(c);
}

DoubledCircle double_circle(const TriSurface& s, const EmbeddedCircle& circle)
{
    require_valid(s);
    require_circle(s, circle);
    RawSplit sp = raw_split(raw(s), circle.vertices);
    Cycle w = raw_collar_paste(sp.complex, sp.left, sp.right, 0);
    std::vector<std::size_t> relabel;
    DoubledCircle out;
    out.surface = canonicalize(sp.complex, &relabel);
    out.first.vertices = map_cycle(circle.vertices, relabel);
    Cycle reversed(w.size());
    for (std::size_t u = 0; u < w.size(); ++u)
        reversed[u] = w[(w.size() - u) % w.size()];
    out.second.vertices = map_cycle(reversed, relabel);
    return out;
}

Regluing Regluing::identity(std::size_t circles)
{
    Regluing r;
    r.permutation.resize(circles);
    std::iota(r.permutation.begin(), r.permutation.end(), std::size_t{0});
    r.offsets.assign(circles, 0);
    return r;
}

TriSurface sk_move(const TriSurface& s, const std::vector<EmbeddedCircle>& circles, const Regluing& regluing)
{
    std::size_t n = circles.size();
    std::vector<std::size_t> sorted = regluing.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i)
            domain_error("InvalidRegluing", "pairing is not a permutation");
    if (regluing.permutation.size() != n || regluing.offsets.size() != n)
        domain_error("InvalidRegluing", "regluing must pair all " + std::to_string(n) + " circles");

    CutResult cr = cut(s, circles);
    RawComplex c = raw(cr.surface);
    for (std::size_t i = 0; i < n; ++i)
    {
        Cycle left = cr.circles[i].first;
        Cycle right = cr.circles[regluing.permutation[i]].second;
        if (left.size() < right.size())
            left = raw_refine(c, left, right.size());
        else if (right.size() < left.size())
            right = raw_refine(c, right, left.size());
        raw_collar_paste(c, left, right, regluing.offsets[i]);
    }
    return canonicalize(c);
}

// ---------------------------------------------------------------------------

namespace {

// Incremental region growth used by find_separating_circles.
class RegionGrower
{
    public:
        explicit RegionGrower(const TriSurface& s) : s_(s)
        {
            const auto& tris = s.triangles();
            std::map<Edge, std::size_t> ids;
            tri_edges_.resize(tris.size());
            for (std::size_t t = 0; t < tris.size(); ++t)
                for (int e = 0; e < 3; ++e)
                {
                    auto [a, b] = directed(tris[t], e);
                    auto [it, inserted] = ids.emplace(undirected(a, b), ids.size());
                    if (inserted)
                    {
                        edges_.push_back(undirected(a, b));
                        edge_tris_.emplace_back();
                    }
                    tri_edges_[t][e] = it->second;
                    edge_tris_[it->second].push_back(t);
                }
            on_boundary_.assign(s.vertex_count(), false);
            boundary_cycle_of_edge_.assign(edges_.size(), npos);
            auto cycles = boundary_cycles(s);
            for (std::size_t i = 0; i < cycles.size(); ++i)
            {
                cycle_length_.push_back(cycles[i].size());
                for (std::size_t j = 0; j < cycles[i].size(); ++j)
                {
                    std::size_t a = cycles[i][j], b = cycles[i][(j + 1) % cycles[i].size()];
                    on_boundary_[a] = true;
                    boundary_cycle_of_edge_[ids.at(undirected(a, b))] = i;
                }
            }
        }

        // Grows from `seed` inside its component in the given triangle order
        // policy; calls found(circle, chi_R, b_R) at each simple frontier.
        template <typename Found>
        void grow(const std::vector<std::size_t>& order, Found found)
        {
            reset();
            for (std::size_t step = 0; step + 1 < order.size(); ++step)
            {
                add(order[step]);
                if (fe_ == 0 || bad_ != 0 || fe_ != fv_ || not_two_ != 0)
                    continue;
                Cycle circle;
                if (!walk(circle))
                    continue;
                long chi = static_cast<long>(vr_) - static_cast<long>(er_) + static_cast<long>(fr_);
                found(circle, chi, static_cast<long>(1 + full_));
            }
        }

        const std::vector<std::array<std::size_t, 3>>& tri_edges() const { return tri_edges_; }
        const std::vector<std::vector<std::size_t>>& edge_tris() const { return edge_tris_; }

    private:
        void reset()
        {
            in_r_.assign(s_.triangles().size(), false);
            ecount_.assign(edges_.size(), 0);
            vcount_.assign(s_.vertex_count(), 0);
            deg_.assign(s_.vertex_count(), 0);
            cycle_count_.assign(cycle_length_.size(), 0);
            frontier_.clear();
            fe_ = fv_ = bad_ = not_two_ = vr_ = er_ = fr_ = full_ = 0;
        }

        void bump(std::size_t v, int delta)
        {
            int before = deg_[v];
            int after = before + delta;
            deg_[v] = after;
            if (before == 0 && after > 0)
            {
                ++fv_;
                if (on_boundary_[v])
                    ++bad_;
            }
            if (before > 0 && after == 0)
            {
                --fv_;
                if (on_boundary_[v])
                    --bad_;
            }
            if (before > 0 && before != 2)
                --not_two_;
            if (after > 0 && after != 2)
                ++not_two_;
        }

        void add(std::size_t t)
        {
            in_r_[t] = true;
            ++fr_;
            for (std::size_t v : s_.triangles()[t])
                if (vcount_[v]++ == 0)
                    ++vr_;
            for (int e = 0; e < 3; ++e)
            {
                std::size_t id = tri_edges_[t][e];
                int before = ecount_[id]++;
                if (before == 0)
                    ++er_;
                if (edge_tris_[id].size() == 1)
                {
                    std::size_t cyc = boundary_cycle_of_edge_[id];
                    if (cyc != npos && ++cycle_count_[cyc] == cycle_length_[cyc])
                        ++full_;
                    continue;
                }
                auto [a, b] = edges_[id];
                int delta = before == 0 ? 1 : -1;
                bump(a, delta);
                bump(b, delta);
                if (before == 0)
                {
                    ++fe_;
                    frontier_.insert(id);
                }
                else
                {
                    --fe_;
                    frontier_.erase(id);
                }
            }
        }

        bool walk(Cycle& circle) const
        {
            std::map<std::size_t, std::size_t> next;
            for (std::size_t id : frontier_)
            {
                std::size_t inside = in_r_[edge_tris_[id][0]] ? edge_tris_[id][0] : edge_tris_[id][1];
                const auto& tri = s_.triangles()[inside];
                for (int e = 0; e < 3; ++e)
                    if (tri_edges_[inside][e] == id)
                    {
                        auto [a, b] = directed(tri, e);
                        next[a] = b;
                    }
            }
            std::size_t start = next.begin()->first;
            std::size_t v = start;
            do
            {
                circle.push_back(v);
                v = next.at(v);
            } while (v != start && circle.size() <= next.size());
            return v == start && circle.size() == next.size();
        }

        const TriSurface& s_;
        std::vector<Edge> edges_;
        std::vector<std::array<std::size_t, 3>> tri_edges_;
        std::vector<std::vector<std::size_t>> edge_tris_;
        std::vector<bool> on_boundary_;
        std::vector<std::size_t> boundary_cycle_of_edge_;
        std::vector<std::size_t> cycle_length_;

        std::vector<bool> in_r_;
        std::vector<int> ecount_, vcount_, deg_;
        std::vector<std::size_t> cycle_count_;
        std::set<std::size_t> frontier_;
        std::size_t fe_ = 0, fv_ = 0, bad_ = 0, not_two_ = 0, vr_ = 0, er_ = 0, fr_ = 0, full_ = 0;
};

}  // namespace

std::vector<SeparatingCircle> find_separating_circles(const TriSurface& s)
{
    require_valid(s);
    const auto& tris = s.triangles();
    auto comp = triangle_components(s);
    std::size_t ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

    // chi and boundary count per component.
    std::vector<long> comp_chi(ncomp), comp_b(ncomp);
    {
        std::vector<std::size_t> vertex_comp(s.vertex_count(), npos);
        std::set<Edge> seen;
        for (std::size_t t = 0; t < tris.size(); ++t)
        {
            comp_chi[comp[t]] += 1;
            for (int e = 0; e < 3; ++e)
            {
                if (vertex_comp[tris[t][e]] == npos)
                {
                    vertex_comp[tris[t][e]] = comp[t];
                    comp_chi[comp[t]] += 1;
                }
                auto [a, b] = directed(tris[t], e);
                if (seen.insert(undirected(a, b)).second)
                    comp_chi[comp[t]] -= 1;
            }
        }
        for (const auto& c : boundary_cycles(s))
            ++comp_b[vertex_comp[c[0]]];
    }

    RegionGrower grower(s);
    std::vector<SeparatingCircle> out;
    std::set<std::tuple<std::size_t, DiffeoClass::Component, DiffeoClass::Component>> seen;

    // Vertex adjacency for distance layers.
    std::vector<std::set<std::size_t>> adjacent(s.vertex_count());
    for (const auto& t : tris)
        for (int e = 0; e < 3; ++e)
        {
            auto [a, b] = directed(t, e);
            adjacent[a].insert(b);
        }

    for (std::size_t cid = 0; cid < ncomp; ++cid)
    {
        std::vector<std::size_t> members;
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (comp[t] == cid)
                members.push_back(t);
        std::size_t seeds = std::min<std::size_t>(24, members.size());

        auto record = [&](const Cycle& circle, long chi_r, long b_r) {
            long twice_g = 2 - chi_r - b_r;
            long chi_c = comp_chi[cid] - chi_r;
            long b_c = comp_b[cid] - (b_r - 1) + 1;
            long twice_gc = 2 - chi_c - b_c;
            if (twice_g < 0 || twice_g % 2 || twice_gc < 0 || twice_gc % 2)
                return;
            DiffeoClass::Component left{static_cast<int>(twice_g / 2), static_cast<int>(b_r)};
            DiffeoClass::Component right{static_cast<int>(twice_gc / 2), static_cast<int>(b_c)};
            auto key = std::make_tuple(cid, std::min(left, right), std::max(left, right));
            if (!seen.insert(key).second)
                return;
            Cycle c = circle;
            std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
            out.push_back({EmbeddedCircle{std::move(c)}, cid, left, right});
        };

        for (std::size_t k = 0; k < seeds; ++k)
        {
            std::size_t seed = members[k * members.size() / seeds];

            // Breadth-first over triangle adjacency.
            std::vector<std::size_t> bfs;
            {
                std::vector<bool> queued(tris.size(), false);
                std::queue<std::size_t> queue;
                queue.push(seed);
                queued[seed] = true;
                while (!queue.empty())
                {
                    std::size_t t = queue.front();
                    queue.pop();
                    bfs.push_back(t);
                    for (int e = 0; e < 3; ++e)
                        for (std::size_t u : grower.edge_tris()[grower.tri_edges()[t][e]])
                            if (!queued[u])
                            {
                                queued[u] = true;
                                queue.push(u);
                            }
                }
            }
            grower.grow(bfs, record);

            // Distance layers from the seed's first vertex.
            std::vector<std::size_t> dist(s.vertex_count(), npos);
            std::queue<std::size_t> vq;
            dist[tris[seed][0]] = 0;
            vq.push(tris[seed][0]);
            while (!vq.empty())
            {
                std::size_t v = vq.front();
                vq.pop();
                for (std::size_t w : adjacent[v])
                    if (dist[w] == npos)
                    {
                        dist[w] = dist[v] + 1;
                        vq.push(w);
                    }
            }
            std::vector<std::size_t> layered = members;
            auto reach = [&](std::size_t t) {
                return std::max({dist[tris[t][0]], dist[tris[t][1]], dist[tris[t][2]]});
            };
            std::stable_sort(layered.begin(), layered.end(),
                             [&](std::size_t x, std::size_t y) { return reach(x) < reach(y); });
            grower.grow(layered, record);
        }
    }
    return out;
}

}  // namespace scissors
