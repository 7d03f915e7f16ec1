#pragma once

#include <string>

#include "json.hpp"
#include "scissors/abgroup.hpp"
#include "scissors/chains.hpp"
#include "scissors/euler.hpp"
#include "scissors/squares.hpp"
#include "scissors/surface.hpp"

namespace scissors::io {

using Json = nlohmann::ordered_json;

/// Parses a file; unreadable or invalid JSON is Malformed.
Json read_file(const std::string& path);
Json parse(const std::string& text);

// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both are accepted on input.
Json to_json(const Integer& x);
Integer integer_from(const Json& j);

/// {"rows":r,"cols":c,"entries":[row-major]}
Json to_json(const IntMatrix& m);
IntMatrix matrix_from(const Json& j);

/// {"generators":[labels],"relations":[[dense ints]]}
Json to_json(const AbGroupPresentation& p);
AbGroupPresentation presentation_from(const Json& j);

/// {"vertices":n,"triangles":[[a,b,c]],"gluing":[[[t,e],[t,e]]]}.
/// A missing gluing is derived from the vertex labels.
Json to_json(const TriSurface& s);
TriSurface surface_from(const Json& j);

/// {"lo":l,"hi":h,"ranks":[...],"boundaries":[matrix]}
Json to_json(const ChainComplex& c);
ChainComplex chain_from(const Json& j);

/// {"a":chain,"b":chain,"c":chain,"f":[matrix],"g":[matrix]}; the maps act
/// in degrees a.lo, a.lo + 1, ...
struct PushoutInput
{
    ChainMap f;
    ChainMap g;
};
PushoutInput pushout_input_from(const Json& j);

/// {"objects":[labels],"basepoint":i,"squares":[[a,b,c,d]]}
Json to_json(const SquaresPresentation& p);
SquaresPresentation squares_from(const Json& j);

/// {"a","b","c","d": surface or path, "a_to_b","a_to_c","b_to_d","c_to_d":
/// vertex maps}. Paths are resolved against `base_dir`.
Json to_json(const SquareInstance& q);
SquareInstance square_from(const Json& j, const std::string& base_dir = ".");

/// "3,3,2" -> Caps{3,3,2}; InvalidCaps unless three positive integers.
Caps parse_caps(const std::string& text);

/// "1,2,3,4" -> {1,2,3,4}
std::vector<std::size_t> parse_list(const std::string& text);

}  // namespace scissors::io
