#pragma once

#include <json.hpp>

#include "critgroup/abelian_group.hpp"
#include "critgroup/pipeline.hpp"

namespace critgroup {

/// A JSON number when the value fits in 64 bits, a decimal string otherwise.
nlohmann::json integer_to_json(const Integer& v);
nlohmann::json integers_to_json(const std::vector<Integer>& values);

/// {"free_rank": r, "invariant_factors": [...]}
nlohmann::json group_to_json(const AbelianGroup& g);

/// Stage name, the four matrices in the plain-text matrix format, the three
/// checks and the invariant factors before and after.
nlohmann::json stage_to_json(const StageReport& s);

}  // namespace critgroup
