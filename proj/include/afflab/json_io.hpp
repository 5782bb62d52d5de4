#pragma once

#include <json.hpp>

#include "afflab/config.hpp"
#include "afflab/point_set.hpp"

namespace afflab {

using Json = nlohmann::ordered_json;

/// {"q","n","points":[...]}, or {"q","n","bits_hex"} when compact.
Json to_json(const PointSet& s, bool compact = false);
/// Accepts either form. Throws DomainError on malformed input.
PointSet point_set_from_json(const Json& j);
std::string bits_hex(const PointSet& s);

/// {"q","m","points":[[digit,...],...]}
Json to_json(const AffineConfiguration& b);
AffineConfiguration config_from_json(const Json& j);

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
Json big_to_json(const BigInt& v);
BigInt big_from_json(const Json& j);

}  // namespace afflab
