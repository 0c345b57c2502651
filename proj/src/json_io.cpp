#include "critgroup/json_io.hpp"

namespace critgroup {

nlohmann::json integer_to_json(const Integer& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

nlohmann::json integers_to_json(const std::vector<Integer>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(integer_to_json(v));
  return out;
}

nlohmann::json group_to_json(const AbelianGroup& g) {
  return {{"free_rank", g.free_rank()}, {"invariant_factors", integers_to_json(g.torsion())}};
}

nlohmann::json stage_to_json(const StageReport& s) {
  return {{"stage", s.stage_name},
          {"input", to_text(s.input)},
          {"transform_left", to_text(s.transform_left)},
          {"transform_right", to_text(s.transform_right)},
          {"result", to_text(s.result)},
          {"replay_ok", s.replay_ok},
          {"unimodular_ok", s.unimodular_ok},
          {"cokernel_ok", s.cokernel_ok},
          {"factors_before", integers_to_json(s.factors_before)},
          {"factors_after", integers_to_json(s.factors_after)}};
}

}  // namespace critgroup
