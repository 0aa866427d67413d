#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fuskit/group.hpp"

namespace fuskit {

/// Small named groups used by the corpus and the CLI (`"group": "S4"`).
/// Throws ValidationError for unknown names.
GroupPtr catalog_group(std::string_view name);
std::vector<std::string> catalog_names();

/// SL_2(p) acting on the nonzero row vectors of F_p^2, point index x + p*y - 1.
GroupPtr sl2_on_nonzero_vectors(std::size_t p);

}  // namespace fuskit
