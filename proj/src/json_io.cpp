#include "fairdiv/json_io.hpp"

namespace fairdiv {

namespace {

ValidationError parse_error(const std::string& message) { return ValidationError(ErrorCode::ParseError, message); }

const Json& require(const Json& object, const char* key) {
  if (!object.is_object()) throw parse_error("expected a JSON object");
  auto it = object.find(key);
  if (it == object.end()) throw parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<std::string> ids_from_json(const Json& value, const char* field) {
  if (!value.is_array()) throw parse_error(std::string("\"") + field + "\" must be an array of strings");
  std::vector<std::string> ids;
  for (const auto& entry : value) {
    if (!entry.is_string()) throw parse_error(std::string("\"") + field + "\" must be an array of strings");
    ids.push_back(entry.get<std::string>());
  }
  return ids;
}

std::string id_or_index(const std::vector<std::string>& ids, std::size_t index) {
  return index < ids.size() ? ids[index] : std::to_string(index);
}

Json rows_to_json(const std::vector<std::vector<Rational>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) out.push_back(to_json(row));
  return out;
}

Json price_to_json(const PriceVector& price) {
  return Json{{"p", to_json(price.p)},
              {"normalization", price.normalization == PriceNormalization::sum_n ? "sum_n" : "raw"}};
}

Json witness_to_json(const Problem& problem, const Witness& witness) {
  Json out = Json::object();
  if (witness.problem) out["problem"] = problem_to_json(*witness.problem);
  if (witness.allocation) out["allocation"] = to_json(witness.allocation->z());
  if (witness.profile) out["profile"] = to_json(*witness.profile);
  if (!witness.pairs.empty()) {
    const auto& agents = witness.problem ? witness.problem->agents() : problem.agents();
    Json pairs = Json::array();
    for (auto [i, j] : witness.pairs) pairs.push_back(Json::array({id_or_index(agents, i), id_or_index(agents, j)}));
    out["pairs"] = std::move(pairs);
  }
  if (!witness.values.empty()) out["values"] = to_json(witness.values);
  if (!witness.note.empty()) out["note"] = witness.note;
  return out;
}

}  // namespace

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json to_json(const RationalMatrix& matrix) { return rows_to_json(matrix.to_rows()); }

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(value.get<std::uint64_t>()) : Rational(value.get<std::int64_t>());
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw parse_error("rational must be an integer or an \"a/b\" string, got " + value.dump());
}

std::vector<Rational> vector_from_json(const Json& value) {
  if (!value.is_array()) throw parse_error("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(value.size());
  for (const auto& entry : value) out.push_back(rational_from_json(entry));
  return out;
}

RationalMatrix matrix_from_json(const Json& value) {
  if (!value.is_array()) throw parse_error("expected a matrix (array of rows)");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : value) rows.push_back(vector_from_json(row));
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ValidationError(ErrorCode::DimensionMismatch, "ragged matrix");
  }
  if (rows.empty() || rows.front().empty()) throw ValidationError(ErrorCode::TooSmall, "empty matrix");
  return RationalMatrix::from_rows(rows);
}

Json problem_to_json(const Problem& problem) {
  return Json{{"kind", std::string(kind_name(problem.kind()))},
              {"agents", problem.agents()},
              {"items", problem.items()},
              {"u", to_json(problem.u())}};
}

Problem problem_from_json(const Json& value) {
  const Json& kind_field = require(value, "kind");
  if (!kind_field.is_string()) throw parse_error("\"kind\" must be \"goods\" or \"bads\"");
  const ItemKind kind = parse_kind(kind_field.get<std::string>());
  RationalMatrix u = matrix_from_json(require(value, "u"));
  auto agents = value.contains("agents") ? ids_from_json(value["agents"], "agents") : default_agent_ids(u.rows());
  auto items = value.contains("items") ? ids_from_json(value["items"], "items") : default_item_ids(u.cols());
  if (agents.size() != u.rows()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "\"agents\" length differs from the number of rows of \"u\"");
  }
  if (items.size() != u.cols()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "\"items\" length differs from the number of columns of \"u\"");
  }
  return Problem(std::move(agents), std::move(items), kind, std::move(u));
}

Allocation allocation_from_json(const Problem& problem, const Json& value) {
  RationalMatrix z = matrix_from_json(value);
  if (z.rows() != problem.agent_count() || z.cols() != problem.item_count()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "allocation shape differs from the problem");
  }
  return Allocation(std::move(z));
}

UtilityProfile profile_from_json(const Problem& problem, const Json& value) {
  auto profile = vector_from_json(value);
  if (profile.size() != problem.agent_count()) {
    throw ValidationError(ErrorCode::DimensionMismatch, "profile length differs from the number of agents");
  }
  for (const auto& v : profile) {
    if (v < 0) throw ValidationError(ErrorCode::NegativeEntry, "negative profile entry");
  }
  return profile;
}

Json certificate_to_json(const Problem& problem, const KktCertificate& certificate) {
  Json entries = Json::array();
  for (const auto& e : certificate.entries) {
    entries.push_back(Json{{"agent", id_or_index(problem.agents(), e.agent)},
                           {"item", id_or_index(problem.items(), e.item)},
                           {"consumed", e.consumed},
                           {"ratio", to_json(e.ratio)},
                           {"price", to_json(e.price)},
                           {"slack", to_json(e.slack)}});
  }
  return Json{{"kind", std::string(kind_name(certificate.kind))},
              {"profile", to_json(certificate.profile)},
              {"price", price_to_json(certificate.price)},
              {"entries", std::move(entries)}};
}

Json rejection_to_json(const Problem& problem, const Rejection& rejection) {
  Json out{{"reason", std::string(rejection_name(rejection.reason))}, {"message", rejection.message}};
  if (rejection.agent) out["agent"] = id_or_index(problem.agents(), *rejection.agent);
  if (rejection.item) out["item"] = id_or_index(problem.items(), *rejection.item);
  if (rejection.other_agent) out["other_agent"] = id_or_index(problem.agents(), *rejection.other_agent);
  return out;
}

Json descriptor_to_json(const Problem& problem, const CutSplitDescriptor& descriptor) {
  Json out{{"kind", descriptor.kind == CutSplitKind::cut ? "cut" : "split"},
           {"position", descriptor.position},
           {"chain_key", descriptor.chain_key()}};
  if (descriptor.agent) out["agent"] = id_or_index(problem.agents(), *descriptor.agent);
  if (descriptor.item) out["item"] = id_or_index(problem.items(), *descriptor.item);
  out["x"] = to_json(descriptor.x);
  out["y"] = to_json(descriptor.y);
  return out;
}

Json division_to_json(const Problem& problem, const CompetitiveDivision& division) {
  Json out{{"allocation", to_json(division.allocation.z())},
           {"profile", to_json(division.profile)},
           {"price", price_to_json(division.price)},
           {"nash_product", to_json(nash_product(division.profile))}};
  if (division.descriptor) out["descriptor"] = descriptor_to_json(problem, *division.descriptor);
  out["certificate"] = certificate_to_json(problem, division.certificate);
  return out;
}

Json egalitarian_to_json(const Problem&, const EgalitarianResult& result) {
  Json out{{"allocation", to_json(result.allocation.z())}, {"profile", to_json(result.profile)}};
  out["unique_allocation"] = result.unique_allocation ? Json(*result.unique_allocation) : Json(nullptr);
  return out;
}

Json report_to_json(const Problem& problem, const AxiomReport& report) {
  Json out{{"axiom", report.axiom},
           {"verdict", std::string(verdict_name(report.verdict))},
           {"margins", to_json(report.margins)}};
  if (report.witness) out["witness"] = witness_to_json(problem, *report.witness);
  if (!report.details.empty()) {
    Json details = Json::array();
    for (const auto& d : report.details) details.push_back(report_to_json(problem, d));
    out["details"] = std::move(details);
  }
  return out;
}

Json components_to_json(const Problem& problem, const ComponentStructure& structure) {
  Json order = Json::array();
  for (auto i : structure.order) order.push_back(id_or_index(problem.agents(), i));
  Json components = Json::array();
  for (const auto& c : structure.components) {
    components.push_back(Json{{"tag", c.tag},
                              {"cuts", c.cuts},
                              {"rectangles", c.rectangles},
                              {"inequalities", c.inequalities},
                              {"sample", to_json(c.sample.z())}});
  }
  Json out{{"count", structure.count()}, {"order", std::move(order)}, {"ratios", to_json(structure.ratios)}};
  out["formula_count"] = structure.formula_count ? Json(*structure.formula_count) : Json(nullptr);
  out["aggregated"] = structure.aggregated;
  out["components"] = std::move(components);
  return out;
}

Json fixture_to_json(const Fixture& fixture) {
  Json expectations = Json::array();
  for (const auto& e : fixture.expectations) {
    Json item{{"kind", std::string(expectation_name(e.kind))},
              {"provenance", std::string(provenance_name(e.provenance))}};
    if (!e.rows.empty()) item["rows"] = rows_to_json(e.rows);
    if (!e.allocations.empty()) {
      Json allocations = Json::array();
      for (const auto& z : e.allocations) allocations.push_back(to_json(z));
      item["allocations"] = std::move(allocations);
    }
    if (e.kind == ExpectationKind::competitive_count || e.kind == ExpectationKind::competitive_count_at_least ||
        e.kind == ExpectationKind::ef_components) {
      item["count"] = e.count;
    }
    if (!e.note.empty()) item["note"] = e.note;
    expectations.push_back(std::move(item));
  }
  Json params = Json::object();
  for (const auto& [k, v] : fixture.params) params[k] = v;
  return Json{{"name", fixture.name},
              {"description", fixture.description},
              {"params", std::move(params)},
              {"problem", problem_to_json(fixture.problem)},
              {"expectations", std::move(expectations)}};
}

Json error_to_json(const Error& error, const std::vector<std::string>& agents, const std::vector<std::string>& items) {
  Json body{{"code", std::string(error_code_name(error.code()))}, {"message", error.what()}};
  if (error.agent()) body["agent"] = id_or_index(agents, *error.agent());
  if (error.item()) body["item"] = id_or_index(items, *error.item());
  return Json{{"error", std::move(body)}};
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace fairdiv
