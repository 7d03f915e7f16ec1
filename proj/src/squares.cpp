#include "scissors/squares.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "scissors/error.hpp"

namespace scissors {

AbGroupPresentation k0_presentation(const SquaresPresentation& p)
{
    std::size_t n = p.objects.size();
    if (p.basepoint >= n)
        malformed("basepoint index out of range");
    std::vector<SparseVector> relations;
    relations.push_back(SparseVector::unit(p.basepoint));
    for (const auto& sq : p.squares)
    {
        for (std::size_t i : sq)
            if (i >= n)
                malformed("square refers to object " + std::to_string(i) + " of " + std::to_string(n));
        SparseVector r({{sq[0], 1}, {sq[3], 1}, {sq[1], -1}, {sq[2], -1}});
        if (!r.empty())
            relations.push_back(std::move(r));
    }
    return AbGroupPresentation(p.objects, std::move(relations));
}

namespace {

using Cat = FiniteSquaresCategory;
using Square = Cat::Square;
constexpr std::size_t none = Cat::none;

using SquareKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

SquareKey key(const Square& s)
{
    return {s.top, s.left, s.right, s.bottom};
}

class Checker
{
    public:
        explicit Checker(const Cat& c) : c_(c) {}

        std::vector<HypothesisCheck> run()
        {
            std::vector<HypothesisCheck> out;
            out.push_back(tables());
            bool sane = out.back().pass;
            if (!sane)
            {
                // Nothing below is meaningful on a broken table.
                for (const char* name : {"axiom1", "axiom2", "axiom3", "axiom4", "condition1", "condition2",
                                         "condition3"})
                    out.push_back({name, false, "skipped: composition table is inconsistent"});
                return out;
            }
            index();
            out.push_back(axiom1());
            out.push_back(axiom2());
            out.push_back(axiom3());
            out.push_back(axiom4());
            out.push_back(basepoint_condition("condition1", true));
            out.push_back(basepoint_condition("condition2", false));
            out.push_back(condition3());
            return out;
        }

        std::vector<Square> all_commutative()
        {
            index();
            std::vector<Square> out;
            std::size_t m = c_.morphisms.size();
            for (std::size_t top = 0; top < m; ++top)
            {
                if (!mor(top).cofibration)
                    continue;
                std::size_t a = mor(top).source, b = mor(top).target;
                for (std::size_t left : out_of_[a])
                {
                    if (!mor(left).cofiber)
                        continue;
                    for (std::size_t right : out_of_[b])
                    {
                        if (!mor(right).cofiber)
                            continue;
                        std::size_t diag = comp(right, top);
                        for (std::size_t bottom : hom_[mor(left).target][mor(right).target])
                            if (mor(bottom).cofibration && comp(bottom, left) == diag)
                                out.push_back({top, left, right, bottom});
                    }
                }
            }
            return out;
        }

    private:
        const Cat::Morphism& mor(std::size_t f) const { return c_.morphisms[f]; }
        std::size_t comp(std::size_t g, std::size_t f) const { return c_.compose[g][f]; }

        std::string name(std::size_t f) const
        {
            return "m" + std::to_string(f) + ":" + c_.objects[mor(f).source] + "->" + c_.objects[mor(f).target];
        }

        std::string describe(const Square& s) const
        {
            return "(" + name(s.top) + ", " + name(s.left) + ", " + name(s.right) + ", " + name(s.bottom) + ")";
        }

        HypothesisCheck tables()
        {
            HypothesisCheck h{"tables", true, ""};
            auto fail = [&](const std::string& w) {
                if (h.pass)
                {
                    h.pass = false;
                    h.witness = w;
                }
            };
            std::size_t n = c_.objects.size(), m = c_.morphisms.size();
            if (c_.basepoint >= n)
                return {"tables", false, "basepoint out of range"};
            for (const auto& f : c_.morphisms)
                if (f.source >= n || f.target >= n)
                    return {"tables", false, "morphism endpoint out of range"};
            if (c_.identity.size() != n)
                return {"tables", false, "identity list has wrong length"};
            if (c_.compose.size() != m)
                return {"tables", false, "composition table has wrong row count"};
            for (const auto& row : c_.compose)
                if (row.size() != m)
                    return {"tables", false, "composition table has wrong column count"};
            for (std::size_t x = 0; x < n; ++x)
            {
                std::size_t id = c_.identity[x];
                if (id >= m || mor(id).source != x || mor(id).target != x)
                    return {"tables", false, "identity of " + c_.objects[x] + " is not an endomorphism of it"};
                if (!mor(id).cofibration || !mor(id).cofiber)
                    fail("identity of " + c_.objects[x] + " is missing from a subcategory");
            }
            for (std::size_t g = 0; g < m; ++g)
                for (std::size_t f = 0; f < m; ++f)
                {
                    bool composable = mor(f).target == mor(g).source;
                    std::size_t gf = comp(g, f);
                    if (!composable)
                    {
                        if (gf != none)
                            return {"tables", false, name(g) + " after " + name(f) + " is defined but not composable"};
                        continue;
                    }
                    if (gf >= m || mor(gf).source != mor(f).source || mor(gf).target != mor(g).target)
                        return {"tables", false, name(g) + " after " + name(f) + " has the wrong endpoints"};
                    if (mor(f).cofibration && mor(g).cofibration && !mor(gf).cofibration)
                        fail("cofibrations not closed under " + name(g) + " after " + name(f));
                    if (mor(f).cofiber && mor(g).cofiber && !mor(gf).cofiber)
                        fail("cofiber maps not closed under " + name(g) + " after " + name(f));
                }
            for (std::size_t f = 0; f < m; ++f)
                if (comp(c_.identity[mor(f).target], f) != f || comp(f, c_.identity[mor(f).source]) != f)
                    fail("identity law fails for " + name(f));
            for (std::size_t f = 0; f < m; ++f)
                for (std::size_t g = 0; g < m; ++g)
                {
                    if (mor(f).target != mor(g).source)
                        continue;
                    for (std::size_t k = 0; k < m; ++k)
                        if (mor(g).target == mor(k).source
                            && comp(k, comp(g, f)) != comp(comp(k, g), f))
                            fail("associativity fails for " + name(k) + ", " + name(g) + ", " + name(f));
                }
            for (const auto& s : c_.squares)
            {
                if (s.top >= m || s.left >= m || s.right >= m || s.bottom >= m)
                    return {"tables", false, "square refers to a missing morphism"};
                const auto &t = mor(s.top), &l = mor(s.left), &r = mor(s.right), &b = mor(s.bottom);
                if (t.source != l.source || t.target != r.source || l.target != b.source || r.target != b.target)
                    return {"tables", false, "square " + describe(s) + " does not fit together"};
                if (!t.cofibration || !b.cofibration || !l.cofiber || !r.cofiber)
                    fail("square " + describe(s) + " uses a morphism outside its subcategory");
            }
            for (const auto& cp : c_.coproducts)
                if (cp.a >= n || cp.b >= n || cp.sum >= n || cp.in_a >= m || cp.in_b >= m
                    || mor(cp.in_a).source != cp.a || mor(cp.in_a).target != cp.sum
                    || mor(cp.in_b).source != cp.b || mor(cp.in_b).target != cp.sum)
                    return {"tables", false, "coproduct injections do not match their objects"};
            return h;
        }

        void index()
        {
            if (indexed_)
                return;
            indexed_ = true;
            std::size_t n = c_.objects.size();
            hom_.assign(n, std::vector<std::vector<std::size_t>>(n));
            out_of_.assign(n, {});
            for (std::size_t f = 0; f < c_.morphisms.size(); ++f)
            {
                hom_[mor(f).source][mor(f).target].push_back(f);
                out_of_[mor(f).source].push_back(f);
            }
            for (const auto& s : c_.squares)
                distinguished_.insert(key(s));
            coproduct_of_.assign(n, std::vector<std::size_t>(n, none));
            for (std::size_t i = 0; i < c_.coproducts.size(); ++i)
                coproduct_of_[c_.coproducts[i].a][c_.coproducts[i].b] = i;
        }

        bool is_distinguished(const Square& s) const { return distinguished_.count(key(s)) > 0; }

        bool is_iso(std::size_t f) const
        {
            for (std::size_t g : hom_[mor(f).target][mor(f).source])
                if (comp(g, f) == c_.identity[mor(f).source] && comp(f, g) == c_.identity[mor(f).target])
                    return true;
            return false;
        }

        // f ⊔ f' between the chosen coproducts, or none.
        std::size_t coproduct_map(std::size_t f, std::size_t f2) const
        {
            std::size_t src = coproduct_of_[mor(f).source][mor(f2).source];
            std::size_t tgt = coproduct_of_[mor(f).target][mor(f2).target];
            if (src == none || tgt == none)
                return none;
            const auto& s = c_.coproducts[src];
            const auto& t = c_.coproducts[tgt];
            for (std::size_t h : hom_[s.sum][t.sum])
                if (comp(h, s.in_a) == comp(t.in_a, f) && comp(h, s.in_b) == comp(t.in_b, f2))
                    return h;
            return none;
        }

        HypothesisCheck axiom1()
        {
            std::size_t n = c_.objects.size();
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                {
                    std::size_t i = coproduct_of_[a][b];
                    if (i == none)
                        return {"axiom1", false, "no coproduct for (" + c_.objects[a] + ", " + c_.objects[b] + ")"};
                    const auto& cp = c_.coproducts[i];
                    for (std::size_t x = 0; x < n; ++x)
                        for (std::size_t f : hom_[a][x])
                            for (std::size_t g : hom_[b][x])
                            {
                                std::size_t count = 0;
                                for (std::size_t h : hom_[cp.sum][x])
                                    if (comp(h, cp.in_a) == f && comp(h, cp.in_b) == g)
                                        ++count;
                                if (count != 1)
                                    return {"axiom1", false,
                                            c_.objects[cp.sum] + " is not a coproduct of (" + c_.objects[a] + ", "
                                                + c_.objects[b] + "): " + std::to_string(count)
                                                + " maps out of it restrict to (" + name(f) + ", " + name(g) + ")"};
                            }
                }
            for (const auto& s : c_.squares)
                for (const auto& s2 : c_.squares)
                {
                    Square sum{coproduct_map(s.top, s2.top), coproduct_map(s.left, s2.left),
                               coproduct_map(s.right, s2.right), coproduct_map(s.bottom, s2.bottom)};
                    if (sum.top == none || sum.left == none || sum.right == none || sum.bottom == none
                        || !is_distinguished(sum))
                        return {"axiom1", false, "coproduct of " + describe(s) + " and " + describe(s2)
                                                     + " is not distinguished"};
                }
            return {"axiom1", true, ""};
        }

        HypothesisCheck axiom2()
        {
            for (const auto& s : c_.squares)
                if (comp(s.right, s.top) != comp(s.bottom, s.left))
                    return {"axiom2", false, "square " + describe(s) + " does not commute"};
            for (const auto& s : c_.squares)
                for (const auto& s2 : c_.squares)
                {
                    if (s2.left == s.right)
                    {
                        Square h{comp(s2.top, s.top), s.left, s2.right, comp(s2.bottom, s.bottom)};
                        if (!is_distinguished(h))
                            return {"axiom2", false, "horizontal composite of " + describe(s) + " and "
                                                         + describe(s2) + " is not distinguished"};
                    }
                    if (s2.top == s.bottom)
                    {
                        Square v{s.top, comp(s2.left, s.left), comp(s2.right, s.right), s2.bottom};
                        if (!is_distinguished(v))
                            return {"axiom2", false, "vertical composite of " + describe(s) + " and "
                                                         + describe(s2) + " is not distinguished"};
                    }
                }
            return {"axiom2", true, ""};
        }

        HypothesisCheck axiom3()
        {
            for (std::size_t f = 0; f < c_.morphisms.size(); ++f)
                if (is_iso(f) && (!mor(f).cofibration || !mor(f).cofiber))
                    return {"axiom3", false, "isomorphism " + name(f) + " is missing from a subcategory"};
            return {"axiom3", true, ""};
        }

        HypothesisCheck axiom4()
        {
            for (const auto& s : all_commutative())
            {
                bool horizontal = is_iso(s.top) && is_iso(s.bottom);
                bool vertical = is_iso(s.left) && is_iso(s.right);
                if ((horizontal || vertical) && !is_distinguished(s))
                    return {"axiom4", false, "commutative square " + describe(s) + " with "
                                                 + (horizontal ? "horizontal" : "vertical")
                                                 + " isomorphisms is not distinguished"};
            }
            return {"axiom4", true, ""};
        }

        HypothesisCheck basepoint_condition(const std::string& label, bool cofibrations)
        {
            std::size_t n = c_.objects.size(), o = c_.basepoint;
            auto in_sub = [&](std::size_t f) { return cofibrations ? mor(f).cofibration : mor(f).cofiber; };
            auto count = [&](std::size_t from, std::size_t to) {
                return std::count_if(hom_[from][to].begin(), hom_[from][to].end(), in_sub);
            };
            std::string initial_fail, terminal_fail;
            for (std::size_t x = 0; x < n && initial_fail.empty(); ++x)
                if (count(o, x) != 1)
                    initial_fail = c_.objects[x];
            for (std::size_t x = 0; x < n && terminal_fail.empty(); ++x)
                if (count(x, o) != 1)
                    terminal_fail = c_.objects[x];
            if (initial_fail.empty() || terminal_fail.empty())
                return {label, true, ""};
            return {label, false, "basepoint is neither initial (fails at " + initial_fail
                                      + ") nor terminal (fails at " + terminal_fail + ")"};
        }

        HypothesisCheck condition3()
        {
            std::size_t n = c_.objects.size(), o = c_.basepoint;
            // witnesses[a][b]: objects X with a distinguished square (O, a, b, X)
            std::vector<std::vector<std::set<std::size_t>>> witnesses(n, std::vector<std::set<std::size_t>>(n));
            for (const auto& s : c_.squares)
                if (mor(s.top).source == o)
                    witnesses[mor(s.top).target][mor(s.left).target].insert(mor(s.right).target);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                {
                    bool found = false;
                    for (std::size_t x : witnesses[a][b])
                        if (witnesses[b][a].count(x))
                            found = true;
                    if (!found)
                        return {"condition3", false,
                                "no X with distinguished squares (O, " + c_.objects[a] + ", " + c_.objects[b]
                                    + ", X) and (O, " + c_.objects[b] + ", " + c_.objects[a] + ", X)"};
                }
            return {"condition3", true, ""};
        }

        const Cat& c_;
        bool indexed_ = false;
        std::vector<std::vector<std::vector<std::size_t>>> hom_;
        std::vector<std::vector<std::size_t>> out_of_;
        std::set<SquareKey> distinguished_;
        std::vector<std::vector<std::size_t>> coproduct_of_;
};

}  // namespace

std::vector<HypothesisCheck> check_lemma_hypotheses(const FiniteSquaresCategory& c)
{
    return Checker(c).run();
}

std::vector<FiniteSquaresCategory::Square> commutative_squares(const FiniteSquaresCategory& c)
{
    return Checker(c).all_commutative();
}

FiniteSquaresCategory diamond_category()
{
    FiniteSquaresCategory c;
    c.objects = {"O", "A", "B", "S"};
    c.basepoint = 0;
    auto leq = [](std::size_t i, std::size_t j) { return i == j || i == 0 || j == 3; };
    std::vector<std::vector<std::size_t>> arrow(4, std::vector<std::size_t>(4, Cat::none));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (leq(i, j))
            {
                arrow[i][j] = c.morphisms.size();
                c.morphisms.push_back({i, j, true, true});
            }
    for (std::size_t i = 0; i < 4; ++i)
        c.identity.push_back(arrow[i][i]);
    std::size_t m = c.morphisms.size();
    c.compose.assign(m, std::vector<std::size_t>(m, Cat::none));
    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g = 0; g < m; ++g)
            if (c.morphisms[f].target == c.morphisms[g].source)
                c.compose[g][f] = arrow[c.morphisms[f].source][c.morphisms[g].target];
    auto join = [](std::size_t i, std::size_t j) -> std::size_t {
        if (i == j || j == 0)
            return i;
        if (i == 0)
            return j;
        return 3;
    };
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
        {
            std::size_t s = join(a, b);
            c.coproducts.push_back({a, b, s, arrow[a][s], arrow[b][s]});
        }
    c.squares = commutative_squares(c);
    return c;
}

// ---------------------------------------------------------------------------

std::vector<DiffeoClass::Component> connected_types(const Caps& caps)
{
    std::vector<DiffeoClass::Component> out;
    for (int g = 0; g <= caps.genus; ++g)
        for (int b = 0; b <= caps.boundary; ++b)
            out.push_back({g, b});
    return out;
}

namespace {

bool object_less(const DiffeoClass& a, const DiffeoClass& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

void multisets(const std::vector<DiffeoClass::Component>& types, std::size_t start, std::size_t remaining,
               std::vector<DiffeoClass::Component>& current, std::vector<DiffeoClass>& out)
{
    if (!current.empty())
        out.push_back(DiffeoClass(current));
    if (remaining == 0)
        return;
    for (std::size_t i = start; i < types.size(); ++i)
    {
        current.push_back(types[i]);
        multisets(types, i, remaining - 1, current, out);
        current.pop_back();
    }
}

// Every sub-multiset of `parts` (sorted), with the complement.
void splits(const std::vector<DiffeoClass::Component>& parts, std::size_t i,
            std::vector<DiffeoClass::Component>& left, std::vector<DiffeoClass::Component>& right,
            std::vector<std::pair<DiffeoClass, DiffeoClass>>& out)
{
    if (i == parts.size())
    {
        out.push_back({DiffeoClass(left), DiffeoClass(right)});
        return;
    }
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i])
        ++j;
    std::size_t run = j - i;
    for (std::size_t take = 0; take <= run; ++take)
    {
        for (std::size_t t = 0; t < take; ++t)
            left.push_back(parts[i]);
        for (std::size_t t = take; t < run; ++t)
            right.push_back(parts[i]);
        splits(parts, j, left, right, out);
        left.resize(left.size() - take);
        right.resize(right.size() - (run - take));
    }
}

}  // namespace

std::vector<DiffeoClass> objects_within(const Caps& caps)
{
    if (caps.genus < 0 || caps.boundary < 0 || caps.components < 0)
        domain_error("InvalidCaps", "caps must be nonnegative");
    std::vector<DiffeoClass> out{DiffeoClass()};
    std::vector<DiffeoClass::Component> current;
    multisets(connected_types(caps), 0, static_cast<std::size_t>(caps.components), current, out);
    std::sort(out.begin(), out.end(), object_less);
    return out;
}

std::size_t Mfd2Instance::index_of(const DiffeoClass& c) const
{
    auto it = std::lower_bound(classes.begin(), classes.end(), c, object_less);
    if (it == classes.end() || *it != c)
        domain_error("CapExceeded", "class " + c.to_string() + " lies outside the caps");
    return static_cast<std::size_t>(it - classes.begin());
}

Mfd2Instance mfd2_instance(const Caps& caps)
{
    if (caps.boundary < 2 || caps.components < 1)
        domain_error("InvalidCaps", "the collar squares need boundary cap >= 2 and component cap >= 1");
    Mfd2Instance inst;
    inst.caps = caps;
    inst.classes = objects_within(caps);
    inst.presentation.basepoint = 0;
    for (const auto& c : inst.classes)
        inst.presentation.objects.push_back(c.to_string());

    auto& squares = inst.presentation.squares;
    for (std::size_t z = 0; z < inst.classes.size(); ++z)
    {
        const auto& parts = inst.classes[z].components();
        if (parts.size() < 2)
            continue;
        std::vector<std::pair<DiffeoClass, DiffeoClass>> all;
        std::vector<DiffeoClass::Component> left, right;
        splits(parts, 0, left, right, all);
        for (const auto& [x, y] : all)
        {
            if (x.empty() || y.empty())
                continue;
            std::size_t xi = inst.index_of(x), yi = inst.index_of(y);
            if (xi > yi)
                continue;
            squares.push_back({0, xi, yi, z});
            ++inst.coproduct_squares;
        }
    }

    auto types = connected_types(caps);
    std::vector<std::size_t> collar_index{0};
    std::vector<DiffeoClass::Component> collars;
    for (int k = 1; k <= caps.components; ++k)
    {
        collars.push_back({0, 2});
        collar_index.push_back(inst.index_of(DiffeoClass(collars)));
    }
    for (std::size_t i = 0; i < types.size(); ++i)
        for (std::size_t j = i; j < types.size(); ++j)
        {
            auto [g1, b1] = types[i];
            auto [g2, b2] = types[j];
            for (int k = 1; k <= std::min({b1, b2, caps.components}); ++k)
            {
                DiffeoClass::Component d{g1 + g2 + k - 1, b1 + b2 - 2 * k};
                if (d.first > caps.genus || d.second > caps.boundary)
                {
                    ++inst.skipped;
                    continue;
                }
                squares.push_back({collar_index[static_cast<std::size_t>(k)], inst.index_of(DiffeoClass({types[i]})),
                                   inst.index_of(DiffeoClass({types[j]})), inst.index_of(DiffeoClass({d}))});
                ++inst.collar_squares;
            }
        }
    return inst;
}

K0Result k0_of_mfd2(const Caps& caps)
{
    Mfd2Instance inst = mfd2_instance(caps);
    QuotientGroup q(k0_presentation(inst.presentation));
    K0Result r;
    r.invariants = q.invariants();
    r.classes = inst.classes;
    for (std::size_t i = 0; i < inst.classes.size(); ++i)
        r.coordinates.push_back(q.normal_form(SparseVector::unit(i)));
    return r;
}

}  // namespace scissors
