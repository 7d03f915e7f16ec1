#include "scissors/io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors::io {

namespace {

const Json& field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        malformed(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

std::size_t index_from(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        malformed(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

long long signed_from(const Json& j, const char* what)
{
    if (!j.is_number_integer())
        malformed(std::string(what) + " must be an integer");
    return j.get<long long>();
}

const Json& array_field(const Json& j, const char* name)
{
    const Json& a = field(j, name);
    if (!a.is_array())
        malformed(std::string("field \"") + name + "\" must be an array");
    return a;
}

std::vector<std::size_t> index_list(const Json& j, const char* what)
{
    if (!j.is_array())
        malformed(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const auto& x : j)
        out.push_back(index_from(x, what));
    return out;
}

}  // namespace

Json parse(const std::string& text)
{
    try
    {
        return Json::parse(text);
    }
    catch (const Json::parse_error& e)
    {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

Json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        malformed("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

Json to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Integer integer_from(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long>());
    if (j.is_string())
    {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0)
            malformed("not a decimal integer: " + j.get<std::string>());
        return x;
    }
    malformed("expected an integer");
}

Json to_json(const IntMatrix& m)
{
    Json entries = Json::array();
    for (const auto& x : m.entries())
        entries.push_back(to_json(x));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

IntMatrix matrix_from(const Json& j)
{
    std::size_t rows = index_from(field(j, "rows"), "rows");
    std::size_t cols = index_from(field(j, "cols"), "cols");
    const Json& e = array_field(j, "entries");
    if (e.size() != rows * cols)
        malformed("matrix needs rows * cols = " + std::to_string(rows * cols) + " entries, got "
                  + std::to_string(e.size()));
    std::vector<Integer> entries;
    for (const auto& x : e)
        entries.push_back(integer_from(x));
    return IntMatrix(rows, cols, std::move(entries));
}

Json to_json(const AbGroupPresentation& p)
{
    Json relations = Json::array();
    for (const auto& r : p.relations())
    {
        Json row = Json::array();
        for (const auto& x : r.to_dense(p.generator_count()))
            row.push_back(to_json(x));
        relations.push_back(row);
    }
    return Json{{"generators", p.generators()}, {"relations", relations}};
}

AbGroupPresentation presentation_from(const Json& j)
{
    std::vector<std::string> generators;
    for (const auto& g : array_field(j, "generators"))
    {
        if (!g.is_string())
            malformed("generator labels must be strings");
        generators.push_back(g.get<std::string>());
    }
    std::vector<IntVector> relations;
    for (const auto& r : array_field(j, "relations"))
    {
        if (!r.is_array() || r.size() != generators.size())
            malformed("each relation needs one entry per generator");
        IntVector v;
        for (const auto& x : r)
            v.push_back(integer_from(x));
        relations.push_back(std::move(v));
    }
    return AbGroupPresentation::from_dense(std::move(generators), relations);
}

Json to_json(const TriSurface& s)
{
    Json triangles = Json::array();
    for (const auto& t : s.triangles())
        triangles.push_back({t[0], t[1], t[2]});
    Json gluing = Json::array();
    for (const auto& [a, b] : s.gluing())
        gluing.push_back({{a.triangle, a.edge}, {b.triangle, b.edge}});
    return Json{{"vertices", s.vertex_count()}, {"triangles", triangles}, {"gluing", gluing}};
}

TriSurface surface_from(const Json& j)
{
    std::size_t n = index_from(field(j, "vertices"), "vertices");
    std::vector<Triangle> triangles;
    for (const auto& t : array_field(j, "triangles"))
    {
        auto v = index_list(t, "triangle");
        if (v.size() != 3)
            malformed("a triangle has three vertices");
        triangles.push_back({v[0], v[1], v[2]});
    }
    if (!j.contains("gluing"))
        return TriSurface::from_triangles(n, std::move(triangles));
    std::vector<GluedPair> gluing;
    for (const auto& pair : array_field(j, "gluing"))
    {
        if (!pair.is_array() || pair.size() != 2)
            malformed("a gluing entry is a pair of [triangle, edge]");
        EdgeRef ends[2];
        for (int k = 0; k < 2; ++k)
        {
            auto ref = index_list(pair[k], "edge reference");
            if (ref.size() != 2 || ref[1] > 2)
                malformed("an edge reference is [triangle, edge] with edge in 0..2");
            ends[k] = EdgeRef{ref[0], static_cast<int>(ref[1])};
        }
        gluing.push_back({ends[0], ends[1]});
    }
    return TriSurface(n, std::move(triangles), std::move(gluing));
}

Json to_json(const ChainComplex& c)
{
    Json boundaries = Json::array();
    for (int n = c.lo() + 1; n <= c.hi(); ++n)
        boundaries.push_back(to_json(c.boundary(n).to_dense()));
    return Json{{"lo", c.lo()}, {"hi", c.hi()}, {"ranks", c.ranks()}, {"boundaries", boundaries}};
}

ChainComplex chain_from(const Json& j)
{
    long long lo = signed_from(field(j, "lo"), "lo");
    long long hi = signed_from(field(j, "hi"), "hi");
    auto ranks = index_list(field(j, "ranks"), "rank");
    if (hi - lo + 1 != static_cast<long long>(ranks.size()))
        malformed("ranks must cover degrees lo..hi");
    const Json& list = array_field(j, "boundaries");
    if (ranks.empty() ? !list.empty() : list.size() + 1 != ranks.size())
        malformed("boundaries must cover degrees lo+1..hi");
    std::vector<SparseMatrix> boundaries;
    for (std::size_t k = 0; k < list.size(); ++k)
    {
        IntMatrix m = matrix_from(list[k]);
        if (m.rows() != ranks[k] || m.cols() != ranks[k + 1])
            malformed("boundary out of degree " + std::to_string(lo + static_cast<long long>(k) + 1) + " is "
                      + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", ranks say "
                      + std::to_string(ranks[k]) + "x" + std::to_string(ranks[k + 1]));
        boundaries.push_back(SparseMatrix::from_dense(m));
    }
    return ChainComplex(static_cast<int>(lo), std::move(ranks), std::move(boundaries));
}

PushoutInput pushout_input_from(const Json& j)
{
    ChainComplex a = chain_from(field(j, "a"));
    ChainComplex b = chain_from(field(j, "b"));
    ChainComplex c = chain_from(field(j, "c"));
    auto maps = [](const Json& list) {
        std::vector<SparseMatrix> out;
        for (const auto& m : list)
            out.push_back(SparseMatrix::from_dense(matrix_from(m)));
        return out;
    };
    return PushoutInput{ChainMap(a, b, maps(array_field(j, "f"))), ChainMap(a, c, maps(array_field(j, "g")))};
}

Json to_json(const SquaresPresentation& p)
{
    Json squares = Json::array();
    for (const auto& s : p.squares)
        squares.push_back({s[0], s[1], s[2], s[3]});
    return Json{{"objects", p.objects}, {"basepoint", p.basepoint}, {"squares", squares}};
}

SquaresPresentation squares_from(const Json& j)
{
    SquaresPresentation p;
    for (const auto& o : array_field(j, "objects"))
    {
        if (!o.is_string())
            malformed("object labels must be strings");
        p.objects.push_back(o.get<std::string>());
    }
    p.basepoint = index_from(field(j, "basepoint"), "basepoint");
    for (const auto& s : array_field(j, "squares"))
    {
        auto v = index_list(s, "square");
        if (v.size() != 4)
            malformed("a square lists four objects");
        p.squares.push_back({v[0], v[1], v[2], v[3]});
    }
    return p;
}

Json to_json(const SquareInstance& q)
{
    return Json{{"a", to_json(q.a)},           {"b", to_json(q.b)},           {"c", to_json(q.c)},
                {"d", to_json(q.d)},           {"a_to_b", q.a_to_b},          {"a_to_c", q.a_to_c},
                {"b_to_d", q.b_to_d},          {"c_to_d", q.c_to_d},          {"origin", q.origin}};
}

SquareInstance square_from(const Json& j, const std::string& base_dir)
{
    auto surface = [&](const char* name) {
        const Json& s = field(j, name);
        if (s.is_string())
            return surface_from(read_file((std::filesystem::path(base_dir) / s.get<std::string>()).string()));
        return surface_from(s);
    };
    SquareInstance q;
    q.a = surface("a");
    q.b = surface("b");
    q.c = surface("c");
    q.d = surface("d");
    q.a_to_b = index_list(field(j, "a_to_b"), "vertex");
    q.a_to_c = index_list(field(j, "a_to_c"), "vertex");
    q.b_to_d = index_list(field(j, "b_to_d"), "vertex");
    q.c_to_d = index_list(field(j, "c_to_d"), "vertex");
    q.origin = j.contains("origin") && j["origin"].is_string() ? j["origin"].get<std::string>() : "file";
    return q;
}

std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        std::size_t used = 0;
        unsigned long long v = 0;
        try
        {
            v = std::stoull(item, &used);
        }
        catch (const std::exception&)
        {
            malformed("not a list of nonnegative integers: " + text);
        }
        if (used != item.size() || item.empty() || item[0] == '-')
            malformed("not a list of nonnegative integers: " + text);
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

Caps parse_caps(const std::string& text)
{
    auto v = parse_list(text);
    if (v.size() != 3)
        malformed("caps are genus,boundary,components");
    auto narrow = [](std::size_t x) {
        if (x > static_cast<std::size_t>(std::numeric_limits<int>::max()))
            domain_error("InvalidCaps", "cap too large");
        return static_cast<int>(x);
    };
    Caps caps{narrow(v[0]), narrow(v[1]), narrow(v[2])};
    if (caps.components == 0)
        domain_error("InvalidCaps", "component cap must be positive");
    return caps;
}

}  // namespace scissors::io
