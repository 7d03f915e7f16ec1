#include <filesystem>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/io.hpp"
#include "scissors/surface_library.hpp"

using namespace scissors;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("integers and matrices round trip, big entries as strings")
{
    Integer big("123456789012345678901234567890");
    CHECK(io::to_json(big).is_string());
    CHECK(io::integer_from(io::to_json(big)) == big);
    CHECK(io::integer_from(io::Json(-7)) == -7);
    IntMatrix m(2, 2, {1, -2, big, 0});
    CHECK(io::matrix_from(io::to_json(m)) == m);
    CHECK(kind_of([] { io::matrix_from(io::parse(R"({"rows":2,"cols":2,"entries":[1,2,3]})")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { io::integer_from(io::Json("12x")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { io::parse("{"); }) == ErrorKind::Malformed);
}

TEST_CASE("presentations, surfaces, chains and square presentations round trip")
{
    auto p = AbGroupPresentation::from_dense({"a", "b"}, {{2, 0}, {0, 3}});
    auto q = io::presentation_from(io::to_json(p));
    CHECK(q.generators() == p.generators());
    CHECK(quotient_invariants(q) == quotient_invariants(p));

    for (const auto& s : {octahedron(), torus7(), disk(), TriSurface()})
        CHECK(io::surface_from(io::to_json(s)) == s);
    // Without a gluing list the gluing is derived from the labels.
    CHECK(io::surface_from(io::parse(R"({"vertices":3,"triangles":[[0,1,2]]})")) == disk());
    CHECK(kind_of([] { io::surface_from(io::parse(R"({"vertices":3,"triangles":[[0,1]]})")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { io::surface_from(io::parse(R"({"vertices":-1,"triangles":[]})")); }) == ErrorKind::Malformed);

    ChainComplex c = chains_of(octahedron());
    ChainComplex back = io::chain_from(io::to_json(c));
    CHECK(back.ranks() == c.ranks());
    CHECK(homology(back) == homology(c));
    CHECK(io::chain_from(io::to_json(ChainComplex())).empty());
    CHECK(kind_of([] {
              io::chain_from(io::parse(R"({"lo":0,"hi":1,"ranks":[1,2],"boundaries":[{"rows":1,"cols":1,"entries":[1]}]})"));
          }) == ErrorKind::Malformed);
    // Well-formed but not a complex: a domain error.
    CHECK(kind_of([] {
              io::chain_from(io::parse(R"({"lo":0,"hi":2,"ranks":[1,1,1],"boundaries":[
                  {"rows":1,"cols":1,"entries":[1]},{"rows":1,"cols":1,"entries":[1]}]})"));
          }) == ErrorKind::Domain);

    SquaresPresentation sp{{"O", "A", "B"}, 0, {{0, 1, 2, 1}}};
    SquaresPresentation sp2 = io::squares_from(io::to_json(sp));
    CHECK(sp2.objects == sp.objects);
    CHECK(sp2.squares == sp.squares);
}

TEST_CASE("square files with inline surfaces and with paths")
{
    SquareInstance q = collar_square(octahedron(), octahedron_equator());
    SquareInstance inline_copy = io::square_from(io::to_json(q));
    CHECK(inline_copy.d == q.d);
    CHECK(inline_copy.b_to_d == q.b_to_d);
    CHECK(functor_on_square(inline_copy).pass);

    auto dir = std::filesystem::temp_directory_path() / "scissors_io_test";
    std::filesystem::create_directories(dir);
    io::Json j = io::to_json(q);
    for (const char* name : {"a", "b", "c", "d"})
    {
        std::ofstream(dir / (std::string(name) + ".surf")) << j[name].dump();
        j[name] = std::string(name) + ".surf";
    }
    SquareInstance from_paths = io::square_from(j, dir.string());
    CHECK(from_paths.a == q.a);
    CHECK(from_paths.c == q.c);
    CHECK(functor_on_square(from_paths).pass);
    j["a"] = "missing.surf";
    CHECK(kind_of([&] { io::square_from(j, dir.string()); }) == ErrorKind::Malformed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("caps and lists")
{
    CHECK(io::parse_caps("3,3,2") == Caps{3, 3, 2});
    CHECK(io::parse_list("1,2,3") == std::vector<std::size_t>{1, 2, 3});
    CHECK(kind_of([] { io::parse_caps("3,3"); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { io::parse_caps("3,-1,2"); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { io::parse_caps("3,3,0"); }) == ErrorKind::Domain);
    CHECK(kind_of([] { io::parse_list("1,,2"); }) == ErrorKind::Malformed);
}
