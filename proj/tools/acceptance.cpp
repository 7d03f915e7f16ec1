#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "scissors/abgroup.hpp"
#include "scissors/chains.hpp"
#include "scissors/error.hpp"
#include "scissors/euler.hpp"
#include "scissors/sk.hpp"
#include "scissors/smith.hpp"
#include "scissors/squares.hpp"
#include "scissors/surface.hpp"
#include "scissors/surface_library.hpp"

namespace scissors::accept {

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;
};

// Collects the first failure; later ones are only counted.
class Tally
{
    public:
        void check(bool ok, const std::string& what)
        {
            ++checks_;
            if (ok)
                return;
            if (first_.empty())
                first_ = what;
            ++failures_;
        }

        Outcome outcome(const std::string& summary) const
        {
            if (failures_ == 0)
                return {true, summary + ", " + std::to_string(checks_) + " checks"};
            return {false, std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed; first: " + first_};
        }

    private:
        std::size_t checks_ = 0;
        std::size_t failures_ = 0;
        std::string first_;
};

DiffeoClass cls(std::vector<DiffeoClass::Component> parts)
{
    return DiffeoClass(std::move(parts));
}

std::string str(const IntVector& v)
{
    return to_string(v);
}

// ---------------------------------------------------------------------------

Outcome snf_correctness(std::mt19937_64& rng)
{
    Tally t;
    std::size_t oracle_checks = 0;
    for (int trial = 0; trial < 500; ++trial)
    {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        oracle::Mat m = oracle::random_matrix(rng, rows, cols, -9, 9);
        IntMatrix a = IntMatrix::from_rows(m, cols);
        SmithForm s = smith_normal_form(a);
        std::string tag = "matrix " + std::to_string(trial);

        t.check(s.row_transform * a * s.col_transform == IntMatrix::diagonal(rows, cols, s.invariant_factors),
                tag + ": U A V is not diag(d)");
        t.check(s.row_transform * s.row_inverse == IntMatrix::identity(rows), tag + ": U not unimodular");
        t.check(s.col_transform * s.col_inverse == IntMatrix::identity(cols), tag + ": V not unimodular");
        const IntVector& d = s.invariant_factors;
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            t.check(d[i] >= 0, tag + ": negative invariant factor");
            if (i + 1 < d.size())
                t.check(d[i + 1] % (d[i] == 0 ? Integer(1) : d[i]) == 0 && (d[i] != 0 || d[i + 1] == 0),
                        tag + ": divisibility chain broken at " + std::to_string(i));
        }
        if (!d.empty())
            t.check(d[0] == oracle::content(m), tag + ": first factor is not the content");

        if (rows == cols)
        {
            Integer det = abs(oracle::cofactor_det(m));
            if (det != 0 && det <= 200)
            {
                ++oracle_checks;
                auto count = oracle::coset_count(m, cols);
                Integer product = 1;
                for (const auto& x : d)
                    product *= x;
                t.check(count && Integer(static_cast<unsigned long>(*count)) == product,
                        tag + ": coset count disagrees with the product of invariant factors");
                t.check(product == det, tag + ": product of invariant factors is not |det|");
            }
        }
    }
    t.check(oracle_checks > 0, "no matrix reached the coset oracle");
    return t.outcome("500 matrices, " + std::to_string(oracle_checks) + " coset-oracle comparisons");
}

// ---------------------------------------------------------------------------

Outcome surface_calculus(std::mt19937_64& rng)
{
    Tally t;
    for (int g = 0; g <= 3; ++g)
        for (int b = 0; b <= 3; ++b)
        {
            TriSurface s = build_standard(g, b);
            std::string tag = "build_standard(" + std::to_string(g) + "," + std::to_string(b) + ")";
            t.check(validate(s).ok, tag + " invalid");
            t.check(classify(s) == cls({{g, b}}), tag + " classifies as " + classify(s).to_string());
            t.check(euler_characteristic(s) == 2 - 2 * g - b, tag + ": wrong chi");
        }

    std::size_t separating = 0, doubled = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        int g = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 4);
        MarkedSurface marked = build_standard_marked(g, b);
        TriSurface s = marked.surface;
        if (rng() % 3 == 0)
            s = disjoint_union(s, build_standard(static_cast<int>(rng() % 2), static_cast<int>(rng() % 3)));
        DiffeoClass before = classify(s);
        long chi = euler_characteristic(s);
        std::string tag = "trial " + std::to_string(trial) + " on " + before.to_string();

        std::vector<EmbeddedCircle> circles;
        TriSurface base = s;
        bool use_meridian = g > 0 && rng() % 2 == 0;
        if (use_meridian)
        {
            // Meridians are non-separating; doubling turns one into a separating pair.
            const EmbeddedCircle& m = marked.meridians[rng() % marked.meridians.size()];
            DoubledCircle d = double_circle(s, m);
            t.check(classify(d.surface) == before, tag + ": double_circle changed the class");
            base = d.surface;
            circles = {d.first, d.second};
            ++doubled;
        }
        else
        {
            auto found = find_separating_circles(s);
            t.check(!found.empty(), tag + ": no separating circle");
            if (found.empty())
                continue;
            circles = {found[rng() % found.size()].circle};
            ++separating;
        }

        CutResult r = cut(base, circles);
        t.check(euler_characteristic(r.surface) == chi, tag + ": cut changed chi");
        t.check(classify(r.surface).boundary_count() == before.boundary_count() + 2 * static_cast<int>(circles.size()),
                tag + ": cut did not add two boundary circles per circle");
        std::vector<BoundaryGluing> back;
        for (const auto& c : r.circles)
            back.push_back(canonical_regluing(c));
        TriSurface pasted = paste(r.surface, back);
        t.check(classify(pasted) == before, tag + ": paste(cut) has class " + classify(pasted).to_string());

        Regluing reg = Regluing::identity(circles.size());
        for (std::size_t i = 0; i < circles.size(); ++i)
            reg.offsets[i] = rng() % circles[i].vertices.size();
        TriSurface moved = sk_move(base, circles, reg);
        DiffeoClass after = classify(moved);
        t.check(after == before, tag + ": move with offsets gives " + after.to_string());
        t.check(euler_characteristic(moved) == chi && after.boundary_count() == before.boundary_count(),
                tag + ": move changed chi or boundary count");
    }
    return t.outcome("16 generators, 200 round trips (" + std::to_string(separating) + " separating, "
                     + std::to_string(doubled) + " doubled meridians)");
}

// ---------------------------------------------------------------------------

Outcome genus_two_relation()
{
    Tally t;
    TriSurface m = disjoint_union(connected_sum(torus7(), torus7()), octahedron());
    TriSurface n = disjoint_union(torus7(), torus7());
    t.check(classify(m) == cls({{0, 0}, {2, 0}}), "M has class " + classify(m).to_string());
    Decision d = decide_equivalent(m, n);
    t.check(d.equivalent, "decide_equivalent says no: " + d.explanation);
    WitnessSearch ws = find_witness(m, n, 6);
    t.check(ws.witness.has_value(), "no witness within budget 6");
    std::string summary = "no witness";
    if (ws.witness)
    {
        t.check(ws.witness->steps.size() <= 6, "witness too long");
        DiffeoClass end = classify(replay_witness(m, *ws.witness));
        t.check(end == cls({{1, 0}, {1, 0}}), "replay ends in " + end.to_string());
        summary = std::to_string(ws.witness->steps.size()) + " move(s), " + std::to_string(ws.states_explored)
                  + " states, replay ends in " + end.to_string();
    }
    return t.outcome(summary);
}

// ---------------------------------------------------------------------------

Outcome k0_matches_sk()
{
    Tally t;
    std::string summary;
    for (Caps caps : {Caps{2, 2, 2}, Caps{3, 3, 3}, Caps{4, 3, 3}})
    {
        std::string tag = "caps " + std::to_string(caps.genus) + "," + std::to_string(caps.boundary) + ","
                          + std::to_string(caps.components);
        K0Result r = k0_of_mfd2(caps);
        t.check(r.invariants.free_rank == 2 && r.invariants.torsion.empty(),
                tag + ": K0 is " + r.invariants.to_string());
        // (chi, boundary count) determines the coordinates and conversely.
        std::map<std::pair<long, int>, IntVector> by_invariants;
        std::map<IntVector, std::pair<long, int>> by_coordinates;
        for (std::size_t i = 0; i < r.classes.size(); ++i)
        {
            std::pair<long, int> key{r.classes[i].euler_characteristic(), r.classes[i].boundary_count()};
            auto [a, fresh_a] = by_invariants.emplace(key, r.coordinates[i]);
            auto [b, fresh_b] = by_coordinates.emplace(r.coordinates[i], key);
            t.check(fresh_a || a->second == r.coordinates[i], tag + ": equal invariants, different coordinates at "
                                                                  + r.classes[i].to_string());
            t.check(fresh_b || b->second == key, tag + ": equal coordinates, different invariants at "
                                                     + r.classes[i].to_string());
        }
        auto coordinates_of = [&](const DiffeoClass& c) {
            auto it = std::find(r.classes.begin(), r.classes.end(), c);
            return r.coordinates[static_cast<std::size_t>(it - r.classes.begin())];
        };
        IntVector sphere = coordinates_of(cls({{0, 0}}));
        for (int g = 0; g <= caps.genus; ++g)
        {
            IntVector expected = sphere;
            for (auto& x : expected)
                x *= 1 - g;
            t.check(coordinates_of(cls({{g, 0}})) == expected, tag + ": [Sigma_" + std::to_string(g) + "] is "
                                                                   + str(coordinates_of(cls({{g, 0}}))));
        }
        if (!summary.empty())
            summary += "; ";
        summary += tag + " " + r.invariants.to_string() + " on " + std::to_string(r.classes.size()) + " objects";
    }
    return t.outcome(summary);
}

// ---------------------------------------------------------------------------

Outcome exact_sequence()
{
    Tally t;
    std::string summary;
    for (Caps caps : {Caps{2, 2, 2}, Caps{3, 3, 3}})
    {
        ExactnessReport r = verify_exact_sequence(caps);
        std::string tag = "caps " + std::to_string(caps.genus) + "," + std::to_string(caps.boundary) + ","
                          + std::to_string(caps.components);
        t.check(r.alpha_injective.holds, tag + ": alpha not injective " + r.alpha_injective.certificate);
        t.check(r.exact_at_middle.holds, tag + ": not exact at the middle " + r.exact_at_middle.certificate);
        t.check(r.beta_surjective.holds, tag + ": beta not surjective " + r.beta_surjective.certificate);
        t.check(r.composite_zero, tag + ": beta alpha is not zero");
        summary += tag + " " + r.sk2.to_string() + " -> " + r.sk2_boundary.to_string() + " -> " + r.c1.to_string()
                   + "; ";
    }
    auto types = connected_types(Caps{3, 3, 3});
    std::size_t pairs = 0;
    for (auto m : types)
        for (auto n : types)
        {
            if (m.second != n.second)
                continue;
            ++pairs;
            DoublingWitness w = doubling_witness(build_standard(m.first, m.second), build_standard(n.first, n.second));
            t.check(w.holds, "doubling fails for " + cls({m}).to_string() + ", " + cls({n}).to_string() + ": "
                                 + str(w.lhs) + " vs " + str(w.rhs));
        }
    return t.outcome(summary + std::to_string(pairs) + " doubling pairs");
}

// ---------------------------------------------------------------------------

std::vector<SquareInstance> generated_squares(std::vector<TriSurface>& pool)
{
    for (int g = 0; g <= 2; ++g)
        for (int b = 0; b <= 3; ++b)
            pool.push_back(build_standard(g, b));
    pool.push_back(octahedron());
    pool.push_back(torus7());
    pool.push_back(disjoint_union(build_standard(1, 1), build_standard(0, 2)));

    std::vector<SquareInstance> out;
    for (const auto& s : pool)
    {
        auto circles = find_separating_circles(s);
        for (std::size_t i = 0; i < circles.size() && i < 3; ++i)
            out.push_back(collar_square(s, circles[i].circle));
    }
    for (int g = 1; g <= 2; ++g)
        for (int b = 0; b <= 2; ++b)
        {
            MarkedSurface m = build_standard_marked(g, b);
            for (const auto& c : m.meridians)
                out.push_back(collar_square(m.surface, c));
        }
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j)
            out.push_back(coproduct_square(pool[i], pool[j]));
    return out;
}

Outcome chain_level(std::mt19937_64& rng, const Options& options)
{
    Tally t;
    if (options.fixture == "corrupt-boundary")
    {
        ChainComplex good = chains_of(octahedron());
        IntMatrix d2 = good.boundary(2).to_dense();
        d2(0, 0) += 1;
        try
        {
            ChainComplex(0, good.ranks(), {good.boundary(1), SparseMatrix::from_dense(d2)});
            t.check(false, "corrupted boundary matrix was accepted");
        }
        catch (const Error& e)
        {
            t.check(false, "boundary check " + e.code() + ": " + e.what());
        }
    }

    std::vector<TriSurface> pool;
    auto squares = generated_squares(pool);

    std::vector<TriSurface> surfaces;
    for (int g = 0; g <= 3; ++g)
        for (int b = 0; b <= 3; ++b)
            surfaces.push_back(build_standard(g, b));
    std::size_t generators = surfaces.size();
    // Randomized moves; each output also contributes a collar square.
    for (int trial = 0; trial < 40; ++trial)
    {
        const TriSurface& s = pool[rng() % pool.size()];
        auto circles = find_separating_circles(s);
        if (circles.empty())
            continue;
        const EmbeddedCircle& c = circles[rng() % circles.size()].circle;
        Regluing reg{{0}, {rng() % c.vertices.size()}};
        TriSurface moved = sk_move(s, {c}, reg);
        auto after = find_separating_circles(moved);
        if (!after.empty())
            squares.push_back(collar_square(moved, after[rng() % after.size()].circle));
        surfaces.push_back(std::move(moved));
    }

    std::size_t passed = 0;
    for (const auto& q : squares)
    {
        SquareReport r = functor_on_square(q);
        t.check(r.pass, "square (" + q.origin + ") fails in degree "
                            + (r.failing_degree ? std::to_string(*r.failing_degree) : "none"));
        passed += r.pass ? 1 : 0;
    }
    t.check(squares.size() >= 50, "only " + std::to_string(squares.size()) + " squares");

    Pi0Report p = pi0_commutation(surfaces, squares);
    for (const auto& f : p.failures)
        t.check(false, f);
    t.check(p.passed(), "pi0 commutation");

    // Equal SK coordinates force equal k0_class.
    SKGroup group(build_sk2_boundary(Caps{3, 3, 3}));
    std::map<IntVector, long> seen;
    for (const auto& type : connected_types(Caps{3, 3, 3}))
    {
        TriSurface s = build_standard(type.first, type.second);
        long k = k0_class(chains_of(s));
        auto [it, fresh] = seen.emplace(group.class_of(s).coordinates, k);
        t.check(fresh || it->second == k, "k0_class differs on equal SK coordinates at " + cls({type}).to_string());
    }
    return t.outcome(std::to_string(passed) + "/" + std::to_string(squares.size()) + " squares, "
                     + std::to_string(generators) + " generators, " + std::to_string(surfaces.size() - generators)
                     + " move outputs");
}

// ---------------------------------------------------------------------------

Outcome skk_collapse()
{
    Tally t;
    std::size_t certificates = 0;
    for (std::size_t n = 1; n <= 3; ++n)
    {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::vector<std::size_t>> perms;
        do
            perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
        for (const auto& phi : perms)
            for (const auto& psi : perms)
            {
                Regluing a{phi, std::vector<std::size_t>(n, 0)};
                Regluing b{psi, std::vector<std::size_t>(n, 0)};
                // A shifted variant of psi as well: offsets are part of the gluing data.
                for (std::size_t shift : {0u, 1u})
                {
                    for (auto& o : b.offsets)
                        o = shift;
                    SkkCertificate c = skk_collapse_check(n, a, b);
                    ++certificates;
                    t.check(c.zero, "nonzero difference " + str(c.difference) + " for n = " + std::to_string(n));
                }
            }
    }
    return t.outcome(std::to_string(certificates) + " certificates for n <= 3");
}

// ---------------------------------------------------------------------------

Outcome k0_engine(std::mt19937_64& rng)
{
    Tally t;
    std::size_t oracle_checks = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        SquaresPresentation p;
        std::size_t objects = 1 + rng() % 6;
        for (std::size_t i = 0; i < objects; ++i)
            p.objects.push_back("X" + std::to_string(i));
        p.basepoint = rng() % objects;
        std::size_t squares = rng() % 9;
        for (std::size_t s = 0; s < squares; ++s)
            p.squares.push_back({rng() % objects, rng() % objects, rng() % objects, rng() % objects});
        GroupInvariants base = quotient_invariants(k0_presentation(p));
        std::string tag = "presentation " + std::to_string(trial);

        SquaresPresentation iso = p;
        std::size_t a = rng() % objects, b = rng() % objects;
        iso.squares.push_back(rng() % 2 ? std::array<std::size_t, 4>{a, a, b, b} : std::array<std::size_t, 4>{a, b, a, b});
        t.check(quotient_invariants(k0_presentation(iso)) == base, tag + ": isomorphism square changed the group");

        SquaresPresentation shuffled = p;
        std::shuffle(shuffled.squares.begin(), shuffled.squares.end(), rng);
        t.check(quotient_invariants(k0_presentation(shuffled)) == base, tag + ": permuting squares changed the group");

        // Finite quotients: compare the order with coset enumeration.
        oracle::Mat rows;
        AbGroupPresentation presented = k0_presentation(p);
        for (const auto& r : presented.relations())
            rows.push_back(r.to_dense(objects));
        if (base.free_rank == 0)
        {
            Integer order = 1;
            for (const auto& x : base.torsion)
                order *= x;
            auto count = oracle::coset_count(rows, objects);
            ++oracle_checks;
            t.check(count && Integer(static_cast<unsigned long>(*count)) == order,
                    tag + ": order disagrees with coset enumeration");
        }
    }
    return t.outcome("100 presentations, " + std::to_string(oracle_checks) + " finite quotients checked by enumeration");
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& options)
{
    struct Entry
    {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    // Each criterion draws from its own generator so results do not depend on
    // which other criteria ran.
    std::vector<Entry> entries{
        {1, "snf_correctness", 10, [&] { std::mt19937_64 r(options.seed + 1); return snf_correctness(r); }},
        {2, "surface_calculus", 30, [&] { std::mt19937_64 r(options.seed + 2); return surface_calculus(r); }},
        {3, "genus_two_relation", 60, [] { return genus_two_relation(); }},
        {4, "k0_equals_sk", 60, [] { return k0_matches_sk(); }},
        {5, "exact_sequence", 60, [] { return exact_sequence(); }},
        {6, "chain_level", 60, [&] { std::mt19937_64 r(options.seed + 6); return chain_level(r, options); }},
        {7, "skk_collapse", 10, [] { return skk_collapse(); }},
        {8, "k0_engine_sanity", 10, [&] { std::mt19937_64 r(options.seed + 8); return k0_engine(r); }},
    };
    std::vector<CriterionResult> results;
    for (const auto& e : entries)
    {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        r.limit_seconds = e.limit;
        auto start = std::chrono::steady_clock::now();
        try
        {
            Outcome o = e.run();
            r.pass = o.pass;
            r.detail = o.detail;
        }
        catch (const Error& err)
        {
            r.pass = false;
            r.detail = "error " + err.code() + ": " + err.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.pass && r.seconds >= r.limit_seconds)
        {
            r.pass = false;
            r.detail += "; over the time limit";
        }
        results.push_back(std::move(r));
    }
    return results;
}

void print_report(std::ostream& out, const std::vector<CriterionResult>& results, bool timings)
{
    for (const auto& r : results)
    {
        out << "criterion " << r.id << ' ' << r.name << ' ' << (r.pass ? "PASS" : "FAIL");
        if (timings)
            out << " time " << std::fixed << std::setprecision(3) << r.seconds << "s limit " << std::setprecision(0)
                << r.limit_seconds << 's';
        out << " | " << r.detail << '\n';
    }
    out << "summary " << (all_passed(results) ? "PASS" : "FAIL") << '\n';
}

bool all_passed(const std::vector<CriterionResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace scissors::accept
