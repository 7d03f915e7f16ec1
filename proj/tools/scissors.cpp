#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "scissors/error.hpp"
#include "scissors/io.hpp"
#include "scissors/sk.hpp"
#include "scissors/surface_library.hpp"

using namespace scissors;

namespace {

enum class Format
{
    Structured,  // "key value" lines in a fixed order
    Json,
};

// Ordered key/value report.
class Report
{
    public:
        void add(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
        void add(const std::string& key, long value) { add(key, std::to_string(value)); }
        void add(const std::string& key, bool value) { add(key, std::string(value ? "yes" : "no")); }
        void add(const std::string& key, const char* value) { add(key, std::string(value)); }

        void print(std::ostream& out, Format format) const
        {
            if (format == Format::Json)
            {
                io::Json j = io::Json::object();
                for (const auto& [k, v] : fields_)
                    j[k] = v;
                out << j.dump() << '\n';
                return;
            }
            for (const auto& [k, v] : fields_)
                out << k << ' ' << v << '\n';
        }

    private:
        std::vector<std::pair<std::string, std::string>> fields_;
};

std::string pass_fail(bool ok)
{
    return ok ? "PASS" : "FAIL";
}

std::string cycle_string(const Cycle& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i)
        out += (i ? "," : "") + std::to_string(c[i]);
    return out;
}

std::string caps_string(const Caps& c)
{
    return std::to_string(c.genus) + "," + std::to_string(c.boundary) + "," + std::to_string(c.components);
}

TriSurface load_surface(const std::string& path)
{
    return io::surface_from(io::read_file(path));
}

// Writes the surface to `output` when given, otherwise embeds it in the report.
void emit_surface(Report& r, const TriSurface& s, const std::string& output)
{
    r.add("class", classify(s).to_string());
    r.add("chi", euler_characteristic(s));
    if (output.empty())
    {
        r.add("surface", io::to_json(s).dump());
        return;
    }
    std::ofstream out(output);
    if (!out)
        malformed("cannot write " + output);
    out << io::to_json(s).dump() << '\n';
    r.add("written", output);
}

Regluing regluing_from(std::size_t circles, const std::string& permutation, const std::string& offsets)
{
    Regluing r = Regluing::identity(circles);
    if (!permutation.empty())
        r.permutation = io::parse_list(permutation);
    if (!offsets.empty())
        r.offsets = io::parse_list(offsets);
    return r;
}

struct Settings
{
    Format format = Format::Structured;
    std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scissors congruence and K-theory of surfaces"};
    app.require_subcommand(1);
    Settings settings;
    std::string format = "structured";
    app.add_option("--format", format, "structured (key value lines) or json")
        ->check(CLI::IsMember({"structured", "json"}));
    app.add_option("--seed", settings.seed, "random seed for the acceptance suite");

    std::function<int(Report&)> action;
    auto bind = [&](CLI::App* sub, std::function<int(Report&)> f) { sub->callback([&action, f] { action = f; }); };

    // surface ----------------------------------------------------------------
    auto* surface = app.add_subcommand("surface", "triangulated surfaces");
    surface->require_subcommand(1);
    std::string file, file2, output, circle_left, circle_right;
    std::vector<std::string> circles;
    std::size_t offset = 0;

    auto* validate_cmd = surface->add_subcommand("validate", "check the triangulation invariants");
    validate_cmd->add_option("file", file)->required();
    bind(validate_cmd, [&](Report& r) {
        ValidationReport v = validate(load_surface(file));
        r.add("valid", v.ok);
        if (!v.ok)
        {
            r.add("invariant", v.invariant);
            r.add("detail", v.detail);
        }
        return v.ok ? 0 : 1;
    });

    auto* classify_cmd = surface->add_subcommand("classify", "diffeomorphism class");
    classify_cmd->add_option("file", file)->required();
    bind(classify_cmd, [&](Report& r) {
        r.add("class", classify(load_surface(file)).to_string());
        return 0;
    });

    auto* chi_cmd = surface->add_subcommand("chi", "Euler characteristic V - E + F");
    chi_cmd->add_option("file", file)->required();
    bind(chi_cmd, [&](Report& r) {
        TriSurface s = load_surface(file);
        require_valid(s);
        r.add("chi", euler_characteristic(s));
        return 0;
    });

    auto* cut_cmd = surface->add_subcommand("cut", "cut along disjoint circles");
    cut_cmd->add_option("file", file)->required();
    cut_cmd->add_option("--circle", circles, "vertex cycle, e.g. 1,2,3,4")->required();
    cut_cmd->add_option("-o,--output", output);
    bind(cut_cmd, [&](Report& r) {
        std::vector<EmbeddedCircle> cs;
        for (const auto& c : circles)
            cs.push_back(EmbeddedCircle{io::parse_list(c)});
        CutResult cut_result = cut(load_surface(file), cs);
        for (std::size_t i = 0; i < cut_result.circles.size(); ++i)
        {
            r.add("circle." + std::to_string(i) + ".first", cycle_string(cut_result.circles[i].first));
            r.add("circle." + std::to_string(i) + ".second", cycle_string(cut_result.circles[i].second));
        }
        emit_surface(r, cut_result.surface, output);
        return 0;
    });

    auto* paste_cmd = surface->add_subcommand("paste", "glue two boundary cycles");
    paste_cmd->add_option("file", file)->required();
    paste_cmd->add_option("--left", circle_left, "boundary cycle")->required();
    paste_cmd->add_option("--right", circle_right, "boundary cycle")->required();
    paste_cmd->add_option("--offset", offset, "left[t] meets right[(offset - t) mod k]");
    paste_cmd->add_option("-o,--output", output);
    bind(paste_cmd, [&](Report& r) {
        BoundaryGluing g{io::parse_list(circle_left), io::parse_list(circle_right), offset, true};
        emit_surface(r, paste(load_surface(file), g), output);
        return 0;
    });

    auto* union_cmd = surface->add_subcommand("union", "disjoint union");
    union_cmd->add_option("first", file)->required();
    union_cmd->add_option("second", file2)->required();
    union_cmd->add_option("-o,--output", output);
    bind(union_cmd, [&](Report& r) {
        emit_surface(r, disjoint_union(load_surface(file), load_surface(file2)), output);
        return 0;
    });

    // sk ---------------------------------------------------------------------
    auto* sk = app.add_subcommand("sk", "scissors congruence groups");
    sk->require_subcommand(1);
    std::string caps_text = "3,3,3";
    std::size_t budget = 6;

    auto* decide_cmd = sk->add_subcommand("decide", "are [M] and [N] equal in SK2 with boundary");
    decide_cmd->add_option("m", file)->required();
    decide_cmd->add_option("n", file2)->required();
    bind(decide_cmd, [&](Report& r) {
        Decision d = decide_equivalent(load_surface(file), load_surface(file2));
        r.add("equivalent", d.equivalent);
        r.add("first.coordinates", to_string(d.first_coordinates));
        r.add("second.coordinates", to_string(d.second_coordinates));
        r.add("explanation", d.explanation);
        return 0;
    });

    auto* witness_cmd = sk->add_subcommand("witness", "search for a chain of cut-paste moves");
    witness_cmd->add_option("m", file)->required();
    witness_cmd->add_option("n", file2)->required();
    witness_cmd->add_option("--budget", budget, "maximum number of moves");
    bind(witness_cmd, [&](Report& r) {
        TriSurface m = load_surface(file);
        WitnessSearch ws = find_witness(m, load_surface(file2), budget);
        r.add("found", ws.witness.has_value());
        r.add("states", static_cast<long>(ws.states_explored));
        if (!ws.witness)
            return 1;
        r.add("moves", static_cast<long>(ws.witness->steps.size()));
        for (std::size_t i = 0; i < ws.witness->steps.size(); ++i)
        {
            const MoveStep& step = ws.witness->steps[i];
            std::string key = "step." + std::to_string(i);
            for (std::size_t c = 0; c < step.circles.size(); ++c)
                r.add(key + ".circle." + std::to_string(c), cycle_string(step.circles[c].vertices));
            r.add(key + ".permutation", cycle_string(step.regluing.permutation));
            r.add(key + ".offsets", cycle_string(step.regluing.offsets));
        }
        r.add("replay_class", classify(replay_witness(m, *ws.witness)).to_string());
        return 0;
    });

    auto* exact_cmd = sk->add_subcommand("exact", "verify 0 -> SK2 -> SK2 with boundary -> C1 -> 0");
    exact_cmd->add_option("--caps", caps_text, "genus,boundary,components");
    bind(exact_cmd, [&](Report& r) {
        ExactnessReport e = verify_exact_sequence(io::parse_caps(caps_text));
        r.add("caps", caps_string(e.caps));
        r.add("SK2", e.sk2.to_string());
        r.add("SK2_boundary", e.sk2_boundary.to_string());
        r.add("C1", e.c1.to_string());
        r.add("alpha_injective", pass_fail(e.alpha_injective.holds) + " " + e.alpha_injective.certificate);
        r.add("exact_at_middle", pass_fail(e.exact_at_middle.holds) + " " + e.exact_at_middle.certificate);
        r.add("beta_surjective", pass_fail(e.beta_surjective.holds) + " " + e.beta_surjective.certificate);
        r.add("composite_zero", pass_fail(e.composite_zero));
        return e.passed() ? 0 : 1;
    });

    auto* sk_k0_cmd = sk->add_subcommand("k0", "K0 of surfaces with squares against SK2 with boundary");
    sk_k0_cmd->add_option("--caps", caps_text, "genus,boundary,components");
    bind(sk_k0_cmd, [&](Report& r) {
        Caps caps = io::parse_caps(caps_text);
        Mfd2Instance inst = mfd2_instance(caps);
        K0Result k0 = k0_of_mfd2(caps);
        SKGroup group(build_sk2_boundary(caps));
        r.add("caps", caps_string(caps));
        r.add("objects", static_cast<long>(inst.classes.size()));
        r.add("coproduct_squares", static_cast<long>(inst.coproduct_squares));
        r.add("collar_squares", static_cast<long>(inst.collar_squares));
        r.add("skipped_gluings", static_cast<long>(inst.skipped));
        r.add("K0", k0.invariants.to_string());
        r.add("SK2_boundary", group.quotient()->invariants().to_string());
        // The two coordinate systems must induce the same partition of objects.
        std::map<IntVector, IntVector> forward, backward;
        bool match = k0.invariants == group.quotient()->invariants();
        for (std::size_t i = 0; i < k0.classes.size(); ++i)
        {
            IntVector sk_coordinates = group.class_of(k0.classes[i]).coordinates;
            auto [f, fresh_f] = forward.emplace(k0.coordinates[i], sk_coordinates);
            auto [b, fresh_b] = backward.emplace(sk_coordinates, k0.coordinates[i]);
            match = match && (fresh_f || f->second == sk_coordinates) && (fresh_b || b->second == k0.coordinates[i]);
        }
        for (const auto& type : connected_types(caps))
        {
            DiffeoClass c({type});
            r.add("coordinates." + c.to_string(), to_string(k0.coordinates[inst.index_of(c)]) + " sk "
                                                      + to_string(group.class_of(c).coordinates));
        }
        r.add("isomorphic", pass_fail(match));
        return match ? 0 : 1;
    });

    std::size_t skk_circles = 1;
    std::string phi_perm, phi_offsets, psi_perm, psi_offsets;
    auto* skk_cmd = sk->add_subcommand("skk", "compare two regluings of stacked annuli");
    skk_cmd->add_option("--circles", skk_circles, "number of circles (1..3)");
    skk_cmd->add_option("--phi", phi_perm, "permutation, default identity");
    skk_cmd->add_option("--phi-offsets", phi_offsets);
    skk_cmd->add_option("--psi", psi_perm, "permutation, default identity");
    skk_cmd->add_option("--psi-offsets", psi_offsets);
    bind(skk_cmd, [&](Report& r) {
        SkkCertificate c = skk_collapse_check(skk_circles, regluing_from(skk_circles, phi_perm, phi_offsets),
                                              regluing_from(skk_circles, psi_perm, psi_offsets));
        r.add("circles", static_cast<long>(c.circles));
        r.add("phi_class", c.phi_class.to_string());
        r.add("psi_class", c.psi_class.to_string());
        r.add("difference", to_string(c.difference));
        r.add("zero", pass_fail(c.zero));
        return c.zero ? 0 : 1;
    });

    // k0 ---------------------------------------------------------------------
    auto* k0_cmd = app.add_subcommand("k0", "K0 of a presented category with squares");
    k0_cmd->add_option("file", file)->required();
    bind(k0_cmd, [&](Report& r) {
        SquaresPresentation p = io::squares_from(io::read_file(file));
        QuotientGroup q(k0_presentation(p));
        r.add("group", q.invariants().to_string());
        for (std::size_t i = 0; i < p.objects.size(); ++i)
            r.add("object." + p.objects[i], to_string(q.normal_form(SparseVector::unit(i))));
        return 0;
    });

    // chain ------------------------------------------------------------------
    auto* chain = app.add_subcommand("chain", "bounded chain complexes of free abelian groups");
    chain->require_subcommand(1);
    auto load_chain = [](const std::string& path) { return io::chain_from(io::read_file(path)); };
    auto homology_fields = [](Report& r, const std::string& prefix, const HomologyType& h) {
        for (std::size_t k = 0; k < h.groups.size(); ++k)
            r.add(prefix + "H" + std::to_string(h.lo + static_cast<int>(k)), h.groups[k].to_string());
    };

    auto* homology_cmd = chain->add_subcommand("homology", "homology groups");
    homology_cmd->add_option("file", file)->required();
    bind(homology_cmd, [&](Report& r) {
        homology_fields(r, "", homology(load_chain(file)));
        return 0;
    });

    auto* chain_chi_cmd = chain->add_subcommand("chi", "Euler characteristic and K0 class");
    chain_chi_cmd->add_option("file", file)->required();
    bind(chain_chi_cmd, [&](Report& r) {
        ChainComplex c = load_chain(file);
        r.add("chi", euler_char(c));
        r.add("k0_class", k0_class(c));
        return 0;
    });

    auto* pushout_cmd = chain->add_subcommand("pushout", "pushout of B <- A -> C");
    pushout_cmd->add_option("file", file, "{\"a\",\"b\",\"c\",\"f\",\"g\"}")->required();
    bind(pushout_cmd, [&](Report& r) {
        io::PushoutInput in = io::pushout_input_from(io::read_file(file));
        PushoutResult p = pushout(in.f, in.g);
        const char* method = p.method == PushoutMethod::Coordinate ? "coordinate"
                             : p.method == PushoutMethod::Split    ? "split"
                                                                   : "cone";
        r.add("method", method);
        homology_fields(r, "", homology(p.complex));
        r.add("k0_class", k0_class(p.complex));
        r.add("complex", io::to_json(p.complex).dump());
        return 0;
    });

    auto* qiso_cmd = chain->add_subcommand("qiso", "compare quasi-isomorphism types");
    qiso_cmd->add_option("first", file)->required();
    qiso_cmd->add_option("second", file2)->required();
    bind(qiso_cmd, [&](Report& r) {
        ChainComplex a = load_chain(file), b = load_chain(file2);
        r.add("quasi_isomorphic", quasi_iso_type_equal(a, b));
        r.add("first", homology(a).to_string());
        r.add("second", homology(b).to_string());
        return 0;
    });

    // euler ------------------------------------------------------------------
    auto* euler = app.add_subcommand("euler", "chains of surfaces and the Euler characteristic");
    euler->require_subcommand(1);

    auto* euler_chi_cmd = euler->add_subcommand("chi", "K0 class of the chains against chi");
    euler_chi_cmd->add_option("file", file)->required();
    bind(euler_chi_cmd, [&](Report& r) {
        TriSurface s = load_surface(file);
        require_valid(s);
        ChainComplex c = chains_of(s);
        long k = k0_class(c);
        r.add("ranks", cycle_string(c.ranks()));
        r.add("homology", homology(c).to_string());
        r.add("k0_class", k);
        r.add("chi", euler_characteristic(s));
        r.add("agree", pass_fail(k == euler_characteristic(s)));
        return k == euler_characteristic(s) ? 0 : 1;
    });

    auto* square_cmd = euler->add_subcommand("verify-square", "pushout of chains against chains of D");
    square_cmd->add_option("file", file)->required();
    bind(square_cmd, [&](Report& r) {
        std::string dir = std::filesystem::path(file).parent_path().string();
        SquareInstance q = io::square_from(io::read_file(file), dir.empty() ? "." : dir);
        SquareReport s = functor_on_square(q);
        r.add("pass", pass_fail(s.pass));
        r.add("method", s.method == PushoutMethod::Coordinate ? "coordinate"
                        : s.method == PushoutMethod::Split    ? "split"
                                                              : "cone");
        r.add("pushout_homology", s.pushout_homology.to_string());
        r.add("target_homology", s.target_homology.to_string());
        r.add("chi_additive", pass_fail(s.chi_additive));
        if (s.failing_degree)
            r.add("failing_degree", static_cast<long>(*s.failing_degree));
        return s.pass ? 0 : 1;
    });

    auto* commute_cmd = euler->add_subcommand("commute", "chi through chains on generators and squares");
    commute_cmd->add_option("--caps", caps_text, "genus,boundary,components");
    bind(commute_cmd, [&](Report& r) {
        Caps caps = io::parse_caps(caps_text);
        std::vector<TriSurface> surfaces;
        std::vector<SquareInstance> squares;
        for (const auto& type : connected_types(caps))
        {
            TriSurface s = build_standard(type.first, type.second);
            for (const auto& c : find_separating_circles(s))
                squares.push_back(collar_square(s, c.circle));
            surfaces.push_back(std::move(s));
        }
        Pi0Report p = pi0_commutation(surfaces, squares);
        std::size_t square_failures = 0;
        for (const auto& q : squares)
            square_failures += functor_on_square(q).pass ? 0 : 1;
        r.add("caps", caps_string(caps));
        r.add("surfaces", static_cast<long>(p.surfaces));
        r.add("squares", static_cast<long>(p.squares));
        r.add("square_failures", static_cast<long>(square_failures));
        for (std::size_t i = 0; i < p.failures.size(); ++i)
            r.add("failure." + std::to_string(i), p.failures[i]);
        bool ok = p.passed() && square_failures == 0;
        r.add("commutes", pass_fail(ok));
        return ok ? 0 : 1;
    });

    // accept -----------------------------------------------------------------
    auto* accept_cmd = app.add_subcommand("accept", "run the acceptance criteria");
    std::string fixture;
    bool timings = false;
    accept_cmd->add_option("--fixture", fixture, "corrupt-boundary")->check(CLI::IsMember({"corrupt-boundary"}));
    accept_cmd->add_flag("--timings", timings, "print runtimes (reports then differ between runs)");
    bind(accept_cmd, [&](Report&) {
        auto results = accept::run_all({settings.seed, fixture});
        accept::print_report(std::cout, results, timings);
        return accept::all_passed(results) ? 0 : 1;
    });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    settings.format = format == "json" ? Format::Json : Format::Structured;
    Report report;
    try
    {
        int code = action(report);
        report.print(std::cout, settings.format);
        return code;
    }
    catch (const Error& e)
    {
        Report err;
        err.add("error", e.code());
        err.add("message", std::string(e.what()));
        err.print(std::cerr, settings.format);
        return e.kind() == ErrorKind::Malformed ? 2 : 1;
    }
    catch (const std::exception& e)
    {
        Report err;
        err.add("error", "Unexpected");
        err.add("message", std::string(e.what()));
        err.print(std::cerr, settings.format);
        return 1;
    }
}
