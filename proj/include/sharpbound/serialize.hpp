// JSON (de)serialization for matrices, mean specs, map specs, and instances.
// Round trips are bit-exact for finite doubles.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sharpbound/errors.hpp"
#include "sharpbound/instance.hpp"
#include "sharpbound/means.hpp"
#include "sharpbound/positive_map.hpp"
#include "sharpbound/search.hpp"
#include "sharpbound/verify.hpp"

namespace sharpbound {

using json = nlohmann::json;

namespace detail {

inline const json& require_field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

inline double number_field(const json& j, const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_number()) throw ParseError(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

// Matrix schema: {"re": [[...]], "im": [[...]]}; "im" omitted when zero.
inline json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  bool has_im = false;
  for (int i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
      if (m(i, j).imag() != 0.0) has_im = true;
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  json out{{"re", std::move(re)}};
  if (has_im) out["im"] = std::move(im);
  return out;
}

inline CMatrix matrix_from_json(const json& j) {
  const json& re = detail::require_field(j, "re");
  if (!re.is_array() || re.empty()) throw ParseError("field 're' must be a nonempty array of rows");
  const int rows = int(re.size());
  if (!re[0].is_array()) throw ParseError("field 're' rows must be arrays");
  const int cols = int(re[0].size());
  CMatrix m(rows, cols);
  const json* im = j.contains("im") ? &j["im"] : nullptr;
  if (im && (!im->is_array() || int(im->size()) != rows)) throw ParseError("field 'im' shape mismatch");
  for (int i = 0; i < rows; ++i) {
    if (!re[i].is_array() || int(re[i].size()) != cols) throw ParseError("ragged 're' rows");
    if (im && int((*im)[i].size()) != cols) throw ParseError("ragged 'im' rows");
    for (int jj = 0; jj < cols; ++jj) {
      const double r = re[i][jj].get<double>();
      const double ii = im ? (*im)[i][jj].get<double>() : 0.0;
      m(i, jj) = cdouble(r, ii);
    }
  }
  return m;
}

inline json mean_to_json(const MeanSpec& spec) {
  switch (spec.kind()) {
    case MeanSpec::Kind::geometric:
      return json{{"kind", "geometric"}};
    case MeanSpec::Kind::weighted_geometric:
      return json{{"kind", "weighted"}, {"mu", spec.mu()}};
    case MeanSpec::Kind::generic:
      return json{{"kind", "named"}, {"name", spec.name()}};
  }
  throw ParseError("unknown mean kind");
}

inline MeanSpec mean_from_json(const json& j) {
  const std::string kind = detail::require_field(j, "kind").get<std::string>();
  if (kind == "geometric") return MeanSpec::geometric();
  if (kind == "weighted") return MeanSpec::weighted_geometric(detail::number_field(j, "mu"));
  if (kind == "named") {
    const std::string name = detail::require_field(j, "name").get<std::string>();
    const double mu = j.contains("mu") ? j["mu"].get<double>() : 0.5;
    return named_mean(name, mu);
  }
  throw ParseError("unknown mean kind '" + kind + "'");
}

inline json map_to_json(const PositiveMapSpec& spec) {
  switch (spec.kind()) {
    case PositiveMapSpec::Kind::identity:
      return json{{"kind", "identity"}};
    case PositiveMapSpec::Kind::normalized_trace:
      return json{{"kind", "trace"}};
    case PositiveMapSpec::Kind::compression:
      return json{{"kind", "compression"}, {"V", matrix_to_json(spec.isometry())}};
    case PositiveMapSpec::Kind::pinching:
      return json{{"kind", "pinching"}, {"blocks", spec.blocks()}};
    case PositiveMapSpec::Kind::unitary_mixture: {
      json units = json::array();
      for (const CMatrix& u : spec.unitaries()) units.push_back(matrix_to_json(u));
      return json{{"kind", "mixture"}, {"weights", spec.weights()}, {"unitaries", std::move(units)}};
    }
  }
  throw ParseError("unknown map kind");
}

/// Maps whose parameters do not pin the dimension (identity, trace) take it
/// from the enclosing context.
inline PositiveMapSpec map_from_json(const json& j, int domain_dim) {
  const std::string kind = detail::require_field(j, "kind").get<std::string>();
  if (kind == "identity") return PositiveMapSpec::identity(domain_dim);
  if (kind == "trace") return PositiveMapSpec::normalized_trace(domain_dim);
  if (kind == "compression")
    return PositiveMapSpec::compression(matrix_from_json(detail::require_field(j, "V")));
  if (kind == "pinching") {
    const json& jb = detail::require_field(j, "blocks");
    if (!jb.is_array()) throw ParseError("field 'blocks' must be an array");
    std::vector<std::vector<int>> blocks;
    for (const json& row : jb) blocks.push_back(row.get<std::vector<int>>());
    return PositiveMapSpec::pinching(domain_dim, std::move(blocks));
  }
  if (kind == "mixture") {
    auto weights = detail::require_field(j, "weights").get<std::vector<double>>();
    const json& ju = detail::require_field(j, "unitaries");
    if (!ju.is_array()) throw ParseError("field 'unitaries' must be an array");
    std::vector<CMatrix> unitaries;
    for (const json& u : ju) unitaries.push_back(matrix_from_json(u));
    return PositiveMapSpec::unitary_mixture(std::move(weights), std::move(unitaries));
  }
  throw ParseError("unknown map kind '" + kind + "'");
}

inline json instance_to_json(const Instance& inst) {
  return json{{"n", inst.A.dim()},
              {"bounds",
               {{"m1", inst.bounds.m1}, {"M1", inst.bounds.M1}, {"m2", inst.bounds.m2}, {"M2", inst.bounds.M2}}},
              {"A", matrix_to_json(inst.A.cm())},
              {"B", matrix_to_json(inst.B.cm())},
              {"map", map_to_json(inst.map)},
              {"seed", {{"base", inst.seed_trace.seed}, {"stream", inst.seed_trace.stream}}}};
}

/// Parses and re-validates every invariant; throws ParseError on malformed
/// input and InvariantViolation (with the failing bound and margin) on a
/// structurally valid but out-of-enclosure instance.
inline Instance instance_from_json(const json& j) {
  const json& jn = detail::require_field(j, "n");
  if (!jn.is_number_integer()) throw ParseError("field 'n' must be an integer");
  const int n = jn.get<int>();
  const json& jb = detail::require_field(j, "bounds");
  SpectralBounds bounds;
  try {
    bounds = SpectralBounds(detail::number_field(jb, "m1"), detail::number_field(jb, "M1"),
                            detail::number_field(jb, "m2"), detail::number_field(jb, "M2"));
  } catch (const DomainViolation& e) {
    throw ParseError(std::string("invalid bounds: ") + e.what());
  }
  HermitianMatrix a(matrix_from_json(detail::require_field(j, "A")));
  HermitianMatrix b(matrix_from_json(detail::require_field(j, "B")));
  if (a.dim() != n || b.dim() != n) throw ParseError("matrix dimensions disagree with field 'n'");
  PositiveMapSpec map = map_from_json(detail::require_field(j, "map"), n);
  SeedTrace trace;
  if (j.contains("seed")) {
    trace.seed = detail::require_field(j["seed"], "base").get<std::uint64_t>();
    trace.stream = detail::require_field(j["seed"], "stream").get<std::uint64_t>();
  }
  Instance inst{std::move(a), std::move(b), bounds, std::move(map), trace};
  require_instance_invariants(inst);
  return inst;
}

inline std::string save_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

inline Instance load_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline json report_to_json(const InequalityReport& rep) {
  return json{{"check_name", rep.check_name},
              {"holds", rep.holds},
              {"margin", rep.margin},
              {"theorem_constant", rep.theorem_constant},
              {"optimal_constant", rep.optimal_constant},
              {"slack", rep.slack},
              {"instance_id", {{"base", rep.instance_id.seed}, {"stream", rep.instance_id.stream}}}};
}

inline json summary_to_json(const CheckSummary& s) {
  return json{{"check_name", s.check_name},
              {"count", s.count},
              {"failures", s.failures},
              {"min_margin", s.min_margin},
              {"max_optimal_constant", s.max_optimal_constant},
              {"mean_slack", s.mean_slack}};
}

inline json search_report_to_json(const SearchReport& rep) {
  return json{{"target", target_name(rep.target)},
              {"budget_used", rep.budget_used},
              {"best_ratio", rep.best_ratio},
              {"conjectured_constant", rep.conjectured},
              {"proven_constant", rep.proven},
              {"violated", rep.violated},
              {"backstop_violations", rep.backstop_violations},
              {"best_eval_index", rep.best_eval_index},
              {"best_instance", instance_to_json(rep.best_instance)}};
}

}  // namespace sharpbound
