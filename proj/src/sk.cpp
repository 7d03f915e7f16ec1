#include "scissors/sk.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "scissors/error.hpp"
#include "scissors/surface_library.hpp"

namespace scissors {

namespace {

using Component = DiffeoClass::Component;

std::string label(Component c)
{
    return "(" + std::to_string(c.first) + "," + std::to_string(c.second) + ")";
}

std::vector<std::string> labels(const std::vector<Component>& gens)
{
    std::vector<std::string> out;
    for (const auto& c : gens)
        out.push_back(label(c));
    return out;
}

void check_caps(const Caps& caps)
{
    if (caps.genus < 0 || caps.boundary < 0 || caps.components < 1)
        domain_error("InvalidCaps", "caps must be nonnegative with at least one component");
}

// Nondecreasing index sequences of length 1..max_size.
void index_multisets(std::size_t types, std::size_t max_size, std::size_t start, std::vector<std::size_t>& current,
                     std::vector<std::vector<std::size_t>>& out)
{
    if (!current.empty())
        out.push_back(current);
    if (current.size() == max_size)
        return;
    for (std::size_t i = start; i < types; ++i)
    {
        current.push_back(i);
        index_multisets(types, max_size, i, current, out);
        current.pop_back();
    }
}

// Calls f on every nonnegative integer matrix with the given margins.
void contingency_tables(const std::vector<int>& rows, const std::vector<int>& cols,
                        const std::function<void(const std::vector<std::vector<int>>&)>& f)
{
    std::size_t r = rows.size(), c = cols.size();
    std::vector<std::vector<int>> t(r, std::vector<int>(c, 0));
    std::vector<int> row_left = rows, col_left = cols;
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) {
        if (i == r)
        {
            if (std::all_of(col_left.begin(), col_left.end(), [](int x) { return x == 0; }))
                f(t);
            return;
        }
        std::size_t ni = j + 1 == c ? i + 1 : i, nj = j + 1 == c ? 0 : j + 1;
        int lo = j + 1 == c ? row_left[i] : 0;
        int hi = std::min(row_left[i], col_left[j]);
        for (int v = lo; v <= hi; ++v)
        {
            t[i][j] = v;
            row_left[i] -= v;
            col_left[j] -= v;
            fill(ni, nj);
            row_left[i] += v;
            col_left[j] += v;
        }
        t[i][j] = 0;
    };
    fill(0, 0);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

std::size_t SKPresentation::index_of(Component c) const
{
    auto it = std::lower_bound(generators.begin(), generators.end(), c);
    if (it == generators.end() || *it != c)
        domain_error("CapExceeded", "component " + label(c) + " is not a generator at these caps");
    return static_cast<std::size_t>(it - generators.begin());
}

IntVector SKPresentation::vector_of(const DiffeoClass& c) const
{
    IntVector v(generators.size(), 0);
    for (const auto& part : c.components())
        v[index_of(part)] += 1;
    return v;
}

std::vector<DiffeoClass> gluing_outcomes(const DiffeoClass& m1, const DiffeoClass& m2)
{
    if (m1.boundary_count() != m2.boundary_count())
        domain_error("BoundaryMismatch", "the two sides have different numbers of boundary circles");
    std::vector<int> rows, cols;
    for (const auto& [g, b] : m1.components())
    {
        if (b == 0)
            domain_error("ClosedPiece", "every piece must have boundary");
        rows.push_back(b);
    }
    for (const auto& [g, b] : m2.components())
    {
        if (b == 0)
            domain_error("ClosedPiece", "every piece must have boundary");
        cols.push_back(b);
    }
    const auto& p1 = m1.components();
    const auto& p2 = m2.components();
    std::set<DiffeoClass> outcomes;
    // Circles of one piece are interchangeable, so only the number of
    // circles joining each pair of pieces matters.
    contingency_tables(rows, cols, [&](const std::vector<std::vector<int>>& t) {
        std::size_t r = p1.size(), n = r + p2.size();
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < p2.size(); ++j)
                if (t[i][j] > 0)
                    parent[find_root(parent, i)] = find_root(parent, r + j);
        // genus of a glued group: sum of genera + circles - pieces + 1
        std::vector<int> genus(n, 1);
        for (std::size_t v = 0; v < n; ++v)
            genus[find_root(parent, v)] += (v < r ? p1[v] : p2[v - r]).first - 1;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < p2.size(); ++j)
                genus[find_root(parent, i)] += t[i][j];
        std::vector<Component> parts;
        for (std::size_t v = 0; v < n; ++v)
            if (find_root(parent, v) == v)
                parts.push_back({genus[v], 0});
        outcomes.insert(DiffeoClass(std::move(parts)));
    });
    return {outcomes.begin(), outcomes.end()};
}

SKPresentation build_sk2(const Caps& caps)
{
    check_caps(caps);
    SKPresentation p;
    p.flavor = SKFlavor::Closed;
    p.caps = caps;
    for (int g = 0; g <= caps.genus; ++g)
        p.generators.push_back({g, 0});

    std::vector<Component> pieces;
    for (int g = 0; g <= caps.genus; ++g)
        for (int b = 1; b <= caps.boundary; ++b)
            pieces.push_back({g, b});
    std::vector<std::vector<std::size_t>> sides;
    std::vector<std::size_t> current;
    index_multisets(pieces.size(), static_cast<std::size_t>(caps.components), 0, current, sides);
    std::map<int, std::vector<DiffeoClass>> by_circles;
    for (const auto& side : sides)
    {
        std::vector<Component> parts;
        for (std::size_t k : side)
            parts.push_back(pieces[k]);
        DiffeoClass c(std::move(parts));
        by_circles[c.boundary_count()].push_back(std::move(c));
    }

    std::set<SparseVector> relations;
    for (const auto& [total, members] : by_circles)
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x; y < members.size(); ++y)
            {
                std::vector<SparseVector> outcomes;
                for (const auto& c : gluing_outcomes(members[x], members[y]))
                    if (c.max_genus() <= caps.genus)
                        outcomes.push_back(SparseVector::from_dense(p.vector_of(c)));
                for (std::size_t i = 1; i < outcomes.size(); ++i)
                {
                    SparseVector rel = outcomes[i];
                    rel.add_scaled(outcomes[0], -1);
                    relations.insert(std::move(rel));
                }
            }
    p.group = AbGroupPresentation(labels(p.generators), std::vector<SparseVector>(relations.begin(), relations.end()));
    return p;
}

SKPresentation build_sk2_boundary(const Caps& caps)
{
    check_caps(caps);
    if (caps.boundary < 2)
        domain_error("InvalidCaps", "the boundary flavor needs boundary cap >= 2");
    SKPresentation p;
    p.flavor = SKFlavor::WithBoundary;
    p.caps = caps;
    p.generators = connected_types(caps);
    std::size_t annulus = p.index_of({0, 2});
    std::vector<SparseVector> relations;
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        for (std::size_t j = i; j < p.generators.size(); ++j)
        {
            auto [g1, b1] = p.generators[i];
            auto [g2, b2] = p.generators[j];
            for (int k = 1; k <= std::min({b1, b2, caps.components}); ++k)
            {
                Component d{g1 + g2 + k - 1, b1 + b2 - 2 * k};
                if (d.first > caps.genus || d.second > caps.boundary)
                    continue;
                SparseVector r({{annulus, k}, {p.index_of(d), 1}, {i, -1}, {j, -1}});
                if (!r.empty())
                    relations.push_back(std::move(r));
            }
        }
    p.group = AbGroupPresentation(labels(p.generators), std::move(relations));
    return p;
}

AbGroupPresentation build_c1()
{
    return AbGroupPresentation({"S1"}, {});
}

SKGroup::SKGroup(SKPresentation presentation)
    : presentation_(std::move(presentation)), quotient_(std::make_shared<QuotientGroup>(presentation_.group))
{
}

SKClass SKGroup::class_of(const DiffeoClass& c) const
{
    return {quotient_, quotient_->normal_form(presentation_.vector_of(c))};
}

SKClass SKGroup::class_of(const TriSurface& s) const
{
    return class_of(classify(s));
}

SKClass SKGroup::difference(const DiffeoClass& a, const DiffeoClass& b) const
{
    IntVector v = presentation_.vector_of(a);
    IntVector w = presentation_.vector_of(b);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] -= w[i];
    return {quotient_, quotient_->normal_form(v)};
}

SKSequence build_sequence(const Caps& caps)
{
    SKGroup closed(build_sk2(caps));
    SKGroup boundary(build_sk2_boundary(caps));
    auto c1 = std::make_shared<const QuotientGroup>(build_c1());

    const auto& cg = closed.presentation().generators;
    const auto& bg = boundary.presentation().generators;
    IntMatrix a(cg.size(), bg.size());
    for (std::size_t i = 0; i < cg.size(); ++i)
        a(i, boundary.presentation().index_of(cg[i])) = 1;
    IntMatrix b(bg.size(), 1);
    for (std::size_t i = 0; i < bg.size(); ++i)
        b(i, 0) = bg[i].second;

    AbHom alpha_hom(closed.quotient(), boundary.quotient(), std::move(a), closed.presentation().group.relations());
    AbHom beta_hom(boundary.quotient(), c1, std::move(b), boundary.presentation().group.relations());
    return SKSequence{std::move(closed), std::move(boundary), std::move(c1), std::move(alpha_hom),
                      std::move(beta_hom)};
}

SKClass alpha(const SKSequence& seq, const SKClass& x)
{
    if (x.group != seq.closed.quotient())
        domain_error("CapMismatch", "class does not belong to this sequence's SK2");
    return {seq.boundary.quotient(), seq.alpha.apply(x.group->lift(x.coordinates))};
}

IntVector beta(const SKSequence& seq, const SKClass& x)
{
    if (x.group != seq.boundary.quotient())
        domain_error("CapMismatch", "class does not belong to this sequence's SK2 with boundary");
    return seq.beta.apply(x.group->lift(x.coordinates));
}

ExactnessReport verify_exact_sequence(const Caps& caps)
{
    SKSequence seq = build_sequence(caps);
    ExactnessReport r;
    r.caps = caps;
    r.sk2 = seq.closed.quotient()->invariants();
    r.sk2_boundary = seq.boundary.quotient()->invariants();
    r.c1 = seq.c1->invariants();
    r.alpha_injective = check_injective(seq.alpha);
    r.exact_at_middle = check_exact(seq.alpha, seq.beta);
    r.beta_surjective = check_surjective(seq.beta);
    IntMatrix composite = seq.alpha.matrix() * seq.beta.matrix();
    r.composite_zero = composite.is_zero();
    return r;
}

SKInvariants sk_invariants(const DiffeoClass& c)
{
    return {c.euler_characteristic(), c.boundary_count(), 0};
}

CompletenessReport invariant_completeness(const SKGroup& g)
{
    CompletenessReport r;
    const auto& gens = g.presentation().generators;
    std::vector<SKClass> classes;
    std::vector<SKInvariants> inv;
    for (const auto& c : gens)
    {
        classes.push_back(g.class_of(DiffeoClass({c})));
        inv.push_back(sk_invariants(DiffeoClass({c})));
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
        {
            ++r.pairs;
            bool same_inv = inv[i] == inv[j];
            bool same_coord = classes[i] == classes[j];
            if (same_inv != same_coord && r.holds)
            {
                r.holds = false;
                r.counterexample = label(gens[i]) + " vs " + label(gens[j]) + ": invariants "
                                   + (same_inv ? "agree" : "differ") + ", coordinates "
                                   + (same_coord ? "agree" : "differ");
            }
        }
    return r;
}

Caps caps_covering(const std::vector<DiffeoClass>& classes)
{
    Caps caps{0, 2, 2};
    for (const auto& c : classes)
    {
        caps.genus = std::max(caps.genus, c.max_genus());
        caps.boundary = std::max(caps.boundary, c.max_boundary());
    }
    return caps;
}

Decision decide_equivalent(const TriSurface& m, const TriSurface& n)
{
    DiffeoClass cm = classify(m), cn = classify(n);
    SKGroup g(build_sk2_boundary(caps_covering({cm, cn})));
    Decision d;
    d.first = sk_invariants(cm);
    d.second = sk_invariants(cn);
    d.first_coordinates = g.class_of(cm).coordinates;
    d.second_coordinates = g.class_of(cn).coordinates;
    d.equivalent = d.first_coordinates == d.second_coordinates;
    d.explanation = "chi " + std::to_string(d.first.euler_characteristic) + " vs "
                    + std::to_string(d.second.euler_characteristic) + ", boundary circles "
                    + std::to_string(d.first.boundary_circles) + " vs " + std::to_string(d.second.boundary_circles)
                    + ", signature 0 vs 0";
    return d;
}

TriSurface mirror(const TriSurface& s)
{
    RawComplex c = raw(s);
    for (auto& t : c.triangles)
        std::swap(t[1], t[2]);
    return canonicalize(c);
}

namespace {

// Complex holding a followed by b; returns the shift applied to b.
std::size_t append(RawComplex& c, const TriSurface& b)
{
    std::size_t shift = c.vertices;
    c.vertices += b.vertex_count();
    for (const auto& t : b.triangles())
        c.triangles.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
    return shift;
}

Cycle reversed_from_start(const Cycle& c)
{
    Cycle out{c[0]};
    for (std::size_t i = c.size() - 1; i > 0; --i)
        out.push_back(c[i]);
    return out;
}

}  // namespace

DoublingWitness doubling_witness(const TriSurface& m, const TriSurface& n, const SKGroup* group)
{
    require_valid(m);
    require_valid(n);
    auto m_cycles = boundary_cycles(m);
    auto n_cycles = boundary_cycles(n);
    if (m_cycles.size() != n_cycles.size())
        domain_error("BoundaryMismatch", "M has " + std::to_string(m_cycles.size()) + " boundary circles, N has "
                                             + std::to_string(n_cycles.size()));

    // DM: each cycle c of M meets its mirror copy, which bounds the mirror
    // with the opposite orientation.
    RawComplex dm = raw(m);
    RawComplex m_bar = raw(m);
    for (auto& t : m_bar.triangles)
        std::swap(t[1], t[2]);
    std::size_t shift = dm.vertices;
    dm.vertices += m_bar.vertices;
    for (const auto& t : m_bar.triangles)
        dm.triangles.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
    for (const auto& c : m_cycles)
    {
        Cycle bar;
        for (std::size_t v : c)
            bar.push_back(v + shift);
        raw_collar_paste(dm, c, reversed_from_start(bar), 0);
    }

    RawComplex l = raw(n);
    TriSurface mirrored = mirror(m);
    std::size_t lshift = append(l, mirrored);
    auto mirror_cycles = boundary_cycles(mirrored);
    for (std::size_t i = 0; i < n_cycles.size(); ++i)
    {
        Cycle a = n_cycles[i];
        Cycle b = mirror_cycles[i];
        for (auto& v : b)
            v += lshift;
        std::size_t len = std::max(a.size(), b.size());
        a = raw_refine(l, a, len);
        b = raw_refine(l, b, len);
        raw_collar_paste(l, a, b, 0);
    }

    DoublingWitness w;
    w.double_m = canonicalize(dm);
    w.l = canonicalize(l);
    require_valid(w.double_m);
    require_valid(w.l);
    w.double_class = classify(w.double_m);
    w.l_class = classify(w.l);
    DiffeoClass cm = classify(m), cn = classify(n);

    std::optional<SKGroup> own;
    if (!group)
    {
        own.emplace(build_sk2_boundary(caps_covering({cm, cn, w.double_class, w.l_class})));
        group = &*own;
    }
    w.lhs = group->difference(cm, cn).coordinates;
    w.rhs = group->difference(w.double_class, w.l_class).coordinates;
    w.holds = w.lhs == w.rhs && w.double_class.boundary_count() == 0 && w.l_class.boundary_count() == 0;
    return w;
}

namespace {

std::vector<MoveStep> candidate_moves(const TriSurface& s)
{
    auto circles = find_separating_circles(s);
    std::vector<MoveStep> out;
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j)
        {
            const Cycle& a = circles[i].circle.vertices;
            const Cycle& b = circles[j].circle.vertices;
            bool disjoint = std::none_of(a.begin(), a.end(), [&](std::size_t v) {
                return std::find(b.begin(), b.end(), v) != b.end();
            });
            if (!disjoint)
                continue;
            for (bool reverse : {false, true})
            {
                MoveStep step;
                step.circles = {circles[i].circle,
                                reverse ? EmbeddedCircle{reversed_from_start(b)} : circles[j].circle};
                step.regluing.permutation = {1, 0};
                step.regluing.offsets = {0, 0};
                out.push_back(std::move(step));
            }
        }
    return out;
}

}  // namespace

WitnessSearch find_witness(const TriSurface& m, const TriSurface& n, std::size_t budget)
{
    if (!decide_equivalent(m, n).equivalent)
        domain_error("NotEquivalent", "the surfaces have different SK classes; no witness exists");
    DiffeoClass target = classify(n);
    WitnessSearch result;
    struct State
    {
        TriSurface surface;
        std::vector<MoveStep> path;
    };
    std::vector<State> level{{m, {}}};
    std::set<DiffeoClass> seen{classify(m)};
    result.states_explored = 1;
    if (classify(m) == target)
    {
        result.witness = MoveWitness{};
        return result;
    }
    for (std::size_t depth = 1; depth <= budget && !level.empty(); ++depth)
    {
        std::vector<State> next;
        for (const auto& state : level)
            for (auto& step : candidate_moves(state.surface))
            {
                TriSurface moved;
                try
                {
                    moved = sk_move(state.surface, step.circles, step.regluing);
                }
                catch (const Error&)
                {
                    continue;
                }
                ++result.states_explored;
                DiffeoClass c = classify(moved);
                std::vector<MoveStep> path = state.path;
                path.push_back(step);
                if (c == target)
                {
                    result.witness = MoveWitness{std::move(path)};
                    return result;
                }
                if (seen.insert(c).second)
                    next.push_back({std::move(moved), std::move(path)});
            }
        level = std::move(next);
    }
    return result;
}

TriSurface replay_witness(const TriSurface& m, const MoveWitness& w)
{
    TriSurface s = m;
    long chi = euler_characteristic(m);
    std::size_t circles = boundary_cycles(m).size();
    for (std::size_t i = 0; i < w.steps.size(); ++i)
    {
        s = sk_move(s, w.steps[i].circles, w.steps[i].regluing);
        if (euler_characteristic(s) != chi || boundary_cycles(s).size() != circles)
            domain_error("WitnessReplayFailed", "step " + std::to_string(i) + " changed chi or the boundary");
    }
    return s;
}

SkkCertificate skk_collapse_check(std::size_t circles, const Regluing& phi, const Regluing& psi)
{
    if (circles == 0 || circles > 3)
        domain_error("InvalidCircleCount", "between 1 and 3 circles are supported");
    for (const Regluing* r : {&phi, &psi})
    {
        std::vector<std::size_t> p = r->permutation;
        std::sort(p.begin(), p.end());
        std::vector<std::size_t> id(circles);
        std::iota(id.begin(), id.end(), 0);
        if (p != id || r->offsets.size() != circles)
            domain_error("InvalidRegluing", "regluing must permute the circles and give one offset each");
    }

    TriSurface annulus = build_standard(0, 2);
    auto ends = boundary_cycles(annulus);
    std::size_t len = std::max(ends[0].size(), ends[1].size());

    auto glue = [&](const Regluing& r) {
        RawComplex c;
        std::vector<Cycle> top, bottom;
        for (std::size_t stack = 0; stack < 2; ++stack)
            for (std::size_t i = 0; i < circles; ++i)
            {
                std::size_t shift = append(c, annulus);
                Cycle end = ends[stack == 0 ? 1 : 0];
                for (auto& v : end)
                    v += shift;
                (stack == 0 ? top : bottom).push_back(raw_refine(c, end, len));
            }
        for (std::size_t i = 0; i < circles; ++i)
            raw_collar_paste(c, top[i], bottom[r.permutation[i]], r.offsets[i] % len);
        TriSurface s = canonicalize(c);
        require_valid(s);
        return classify(s);
    };

    SkkCertificate cert;
    cert.circles = circles;
    cert.phi_class = glue(phi);
    cert.psi_class = glue(psi);
    SKGroup g(build_sk2_boundary(caps_covering({cert.phi_class, cert.psi_class})));
    cert.difference = g.difference(cert.phi_class, cert.psi_class).coordinates;
    cert.zero = std::all_of(cert.difference.begin(), cert.difference.end(), [](const Integer& x) { return x == 0; });
    return cert;
}

}  // namespace scissors
