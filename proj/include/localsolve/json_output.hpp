#pragma once

#include <string>

#include "json.hpp"

namespace localsolve {

/// Serializes with every floating-point number printed as %.17g, so equal
/// doubles always give equal bytes. Non-finite numbers become null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace localsolve
