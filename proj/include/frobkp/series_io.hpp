#pragma once

#include <map>
#include <memory>
#include <string>

#include "frobkp/random_points.hpp"
#include "frobkp/submanifold.hpp"
#include "json.hpp"

namespace frobkp {

using Json = nlohmann::json;

// "num/den" (or "num"); integers given as JSON numbers are accepted on input.
std::string rational_text(const Rational& q);
Rational parse_rational(const Json& j);

// Rational scalars as strings, radical ones as
// {"rho_pow_coeffs":[...],"rho_degree":d,"rho_radicand":"p/q"}.
Json scalar_to_json(const ExactScalar& x);
ExactScalar scalar_from_json(const Json& j);

// {"parity":"even|odd|mixed","side":"inf|zero|finite","coeffs":{"e":"p/q",...},"trusted":[lo,hi]};
// unbounded ends of the trusted window are written as null.
Json series_to_json(const ExactSeries& s);
ExactSeries series_from_json(const Json& j);

// {"m","n","mode":"poly|trunc","w":<series>,"l":<series>} or
// {"m","n","chart":{"t":{"1":"2",...},"h":[...],"hhat":[...]},"depth":K}.
ExactPoint point_from_json(const Json& j, int depth = kDefaultDepth);
Json point_to_json(const ExactPoint& pt);

// {"m","n","l":<series>,"rho":"p/q"?}; a full point file is accepted too (its l is used).
LPoint lpoint_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace frobkp
