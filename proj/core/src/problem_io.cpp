#include "desinc/problem_io.hpp"

#include <complex>

#include "json.hpp"

#include "desinc/errors.hpp"
#include "desinc/expr.hpp"

namespace desinc {

ProblemSpec problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("problem file: ") + e.what());
  }

  if (!j.is_object() || !j.contains("integrand") ||
      !j["integrand"].is_string())
    throw ConfigError("problem file: missing string key 'integrand'");
  if (!j.contains("domain") || !j["domain"].is_object() ||
      !j["domain"].contains("kind") || !j["domain"]["kind"].is_string())
    throw ConfigError("problem file: missing 'domain' object with 'kind'");

  ProblemSpec p;
  const Expression ast = parse(j["integrand"].get<std::string>());
  p.integrand = [ast](double t) { return eval(ast, t); };

  const std::string kind = j["domain"]["kind"].get<std::string>();
  if (kind == "finite") {
    p.domain.kind = OuterMapKind::FiniteTanh;
    if (!j["domain"].contains("a") || !j["domain"].contains("b"))
      throw ConfigError("problem file: finite domain needs 'a' and 'b'");
    p.domain.a = j["domain"]["a"].get<double>();
    p.domain.b = j["domain"]["b"].get<double>();
    if (!(p.domain.a < p.domain.b))
      throw ConfigError("problem file: finite domain needs a < b");
  } else if (kind == "infinite") {
    p.domain.kind = OuterMapKind::InfiniteSinh;
  } else if (kind == "semi_log") {
    p.domain.kind = OuterMapKind::SemiInfLog;
  } else if (kind == "semi_exp") {
    p.domain.kind = OuterMapKind::SemiInfExp;
  } else {
    throw ConfigError("problem file: unknown domain kind '" + kind + "'");
  }

  if (j.contains("singularities")) {
    if (!j["singularities"].is_array())
      throw ConfigError("problem file: 'singularities' must be an array");
    for (const auto& s : j["singularities"]) {
      if (!s.is_object() || !s.contains("re") || !s.contains("im"))
        throw ConfigError("problem file: each singularity needs 're', 'im'");
      p.singularities.emplace_back(s["re"].get<double>(),
                                   s["im"].get<double>());
    }
  }
  if (j.contains("reference")) {
    if (!j["reference"].is_number())
      throw ConfigError("problem file: 'reference' must be a number");
    p.reference = j["reference"].get<double>();
  }
  if (j.contains("fused_weight")) {
    if (!j["fused_weight"].is_boolean())
      throw ConfigError("problem file: 'fused_weight' must be a boolean");
    p.fused_weight = j["fused_weight"].get<bool>();
  }
  return p;
}

}  // namespace desinc
