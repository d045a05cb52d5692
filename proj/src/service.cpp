#include "fairdiv/service.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "fairdiv/axioms.hpp"
#include "fairdiv/ef_geometry.hpp"
#include "fairdiv/egalitarian.hpp"
#include "fairdiv/instance_corpus.hpp"

namespace fairdiv {

namespace {

/// Error carrying the id lists of the problem it arose from.
class LocatedError : public Error {
 public:
  LocatedError(const Error& error, std::vector<std::string> agent_ids, std::vector<std::string> item_ids)
      : Error(error.code(), error.what(), error.agent(), error.item()),
        agents(std::move(agent_ids)),
        items(std::move(item_ids)) {}

  std::vector<std::string> agents;
  std::vector<std::string> items;
};

template <class F>
Json located(const Problem& problem, F&& body) {
  try {
    return body();
  } catch (const LocatedError&) {
    throw;
  } catch (const Error& error) {
    throw LocatedError(error, problem.agents(), problem.items());
  }
}

/// Problem validation errors name the ids of the document, defaulted like the parser does.
Problem parse_problem(const Json& document) {
  try {
    return problem_from_json(document);
  } catch (const Error& error) {
    std::vector<std::string> agents, items;
    const Json* u = document.is_object() && document.contains("u") ? &document["u"] : nullptr;
    const bool matrix = u && u->is_array() && !u->empty() && u->front().is_array();
    auto ids = [&](const char* key, std::size_t count, auto fallback) {
      if (document.is_object() && document.contains(key) && document[key].is_array()) {
        std::vector<std::string> out;
        for (const auto& id : document[key]) out.push_back(id.is_string() ? id.get<std::string>() : id.dump());
        return out;
      }
      return fallback(count);
    };
    if (matrix) {
      agents = ids("agents", u->size(), default_agent_ids);
      items = ids("items", u->front().size(), default_item_ids);
    }
    throw LocatedError(error, std::move(agents), std::move(items));
  }
}

ValidationError invalid(const std::string& message) { return ValidationError(ErrorCode::InvalidArgument, message); }

const Json& field(const Json& request, const char* key) {
  if (!request.is_object()) throw ValidationError(ErrorCode::ParseError, "request body must be a JSON object");
  auto it = request.find(key);
  if (it == request.end()) throw ValidationError(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return *it;
}

bool flag(const Json& request, const char* key) {
  auto it = request.find(key);
  if (it == request.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw ValidationError(ErrorCode::ParseError, std::string("\"") + key + "\" must be a boolean");
  return it->get<bool>();
}

std::optional<std::string> text(const Json& request, const char* key) {
  auto it = request.find(key);
  if (it == request.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(ErrorCode::ParseError, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::size_t index_of(const std::vector<std::string>& ids, const Json& value, const char* what) {
  if (!value.is_string()) throw ValidationError(ErrorCode::ParseError, std::string(what) + " ids must be strings");
  auto it = std::find(ids.begin(), ids.end(), value.get<std::string>());
  if (it == ids.end()) throw invalid(std::string("unknown ") + what + " \"" + value.get<std::string>() + "\"");
  return static_cast<std::size_t>(it - ids.begin());
}

std::size_t size_param(const FixtureParams& params, const std::string& key, std::size_t fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return value;
  } catch (const std::logic_error&) {
    throw invalid("parameter \"" + key + "\" must be a non-negative integer");
  }
}

Rational rational_param(const FixtureParams& params, const std::string& key, const Rational& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_rational(it->second);
}

Selection parse_selection(const std::string& name) {
  if (name == "all") return Selection::all;
  if (name == "median") return Selection::median;
  if (name == "max-nash" || name == "max_nash") return Selection::max_nash;
  throw invalid("unknown selection \"" + name + "\"");
}

std::string_view selection_name(Selection selection) {
  switch (selection) {
    case Selection::all: return "all";
    case Selection::median: return "median";
    case Selection::max_nash: return "max-nash";
  }
  return "all";
}

/// "competitive" resolves against the problem's kind; explicit names must match it.
RuleHandle resolve_rule(const std::string& name, const Problem& problem) {
  if (name == "competitive") return RuleHandle::competitive_for(problem.kind());
  RuleHandle rule = RuleHandle::parse(name);
  if (rule.kind == RuleKind::competitive_goods && problem.is_bads()) {
    throw Error(ErrorCode::KindMismatch, "competitive-goods rule applied to bads");
  }
  if (rule.kind == RuleKind::competitive_bads && !problem.is_bads()) {
    throw Error(ErrorCode::KindMismatch, "competitive-bads rule applied to goods");
  }
  return rule;
}

Json ids_json(const std::vector<std::string>& ids, const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(ids.at(i));
  return out;
}

Json rm_case_json(const Problem& problem, const RmCase& c) {
  return Json{{"group", ids_json(problem.agents(), c.group)},
              {"shrunk_item", problem.items().at(c.shrunk_item)},
              {"shrunk", problem_to_json(c.shrunk)},
              {"premise_bound", to_json(c.premise_bound)},
              {"conclusion_bound", to_json(c.conclusion_bound)},
              {"contradiction", c.contradiction},
              {"steps", c.steps}};
}

std::string correlation_id() {
  thread_local std::mt19937_64 engine{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << engine();
  return out.str();
}

std::string env(const char* name) {
  const char* value = std::getenv(name);
  return value ? value : "";
}

std::string plain(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out = "(";
    for (std::size_t k = 0; k < value.size(); ++k) out += (k ? ", " : "") + plain(value[k]);
    return out + ")";
  }
  return value.dump();
}

class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      width.resize(std::max(width.size(), r.size()), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream out;
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        out << (c ? "  " : "") << r[c];
        if (c + 1 < r.size()) out << std::string(width[c] - r[c].size(), ' ');
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

ServiceConfig ServiceConfig::with_env_overrides() const {
  ServiceConfig out = *this;
  auto number = [](const std::string& name, const std::string& value) {
    try {
      std::size_t used = 0;
      const long parsed = std::stol(value, &used);
      if (used != value.size() || parsed < 0) throw std::invalid_argument(name);
      return parsed;
    } catch (const std::logic_error&) {
      throw invalid(name + " must be a non-negative integer");
    }
  };
  if (auto v = env("FAIRDIV_HOST"); !v.empty()) out.host = v;
  if (auto v = env("FAIRDIV_PORT"); !v.empty()) out.port = static_cast<int>(number("FAIRDIV_PORT", v));
  if (auto v = env("FAIRDIV_MAX_VERTICES"); !v.empty()) {
    out.max_vertices = static_cast<std::size_t>(number("FAIRDIV_MAX_VERTICES", v));
  }
  if (auto v = env("FAIRDIV_ALLOW_NUMERIC"); !v.empty()) {
    if (v == "1" || v == "true" || v == "on") {
      out.allow_numeric = true;
    } else if (v == "0" || v == "false" || v == "off") {
      out.allow_numeric = false;
    } else {
      throw invalid("FAIRDIV_ALLOW_NUMERIC must be true or false");
    }
  }
  if (auto v = env("FAIRDIV_DEADLINE_MS"); !v.empty()) {
    out.deadline = std::chrono::milliseconds(number("FAIRDIV_DEADLINE_MS", v));
  }
  return out;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

EnumerationOptions Service::options() const {
  EnumerationOptions options;
  options.max_vertices = config_.max_vertices;
  options.allow_numeric = config_.allow_numeric;
  options.deadline = std::chrono::steady_clock::now() + config_.deadline;
  return options;
}

Json Service::solve(const Json& request) const {
  const Problem problem = parse_problem(field(request, "problem"));
  return located(problem, [&] {
    const std::string rule_name = text(request, "rule").value_or("competitive");
    const bool enumerate = flag(request, "enumerate");
    Json out{{"problem", problem_to_json(problem)}};

    if (rule_name == "egalitarian") {
      const EgalitarianResult result = egalitarian(problem);
      out["rule"] = "egalitarian";
      out["method"] = "leximin";
      out["complete"] = true;
      out["count"] = 1;
      out["divisions"] = Json::array({egalitarian_to_json(problem, result)});
    } else {
      RuleHandle rule = resolve_rule(rule_name, problem);
      EnumerationResult result = enumerate_competitive(problem, options());
      Selection selection = Selection::all;
      if (rule.kind == RuleKind::competitive_bads && !enumerate) {
        selection = rule.selection != Selection::all ? rule.selection : Selection::median;
        if (auto s = text(request, "selection")) selection = parse_selection(*s);
      }
      rule.selection = rule.kind == RuleKind::competitive_bads ? selection : Selection::all;
      out["rule"] = rule.name();
      out["selection"] = std::string(selection_name(selection));
      out["method"] = result.method;
      out["complete"] = result.complete;
      out["boundary_case"] = result.boundary_case;
      out["count"] = result.divisions.size();
      Json divisions = Json::array();
      if (selection == Selection::all || result.divisions.empty()) {
        for (const auto& d : result.divisions) divisions.push_back(division_to_json(problem, d));
      } else {
        const std::size_t pick = select_division(result.divisions, selection);
        out["selected_index"] = pick;
        divisions.push_back(division_to_json(problem, result.divisions[pick]));
      }
      out["divisions"] = std::move(divisions);
    }
    if (flag(request, "verify")) out["verified"] = verify(out)["verified"];
    return out;
  });
}

Json Service::verify(const Json& report) const {
  const Problem problem = parse_problem(field(report, "problem"));
  return located(problem, [&] {
    const Json& divisions = field(report, "divisions");
    if (!divisions.is_array()) throw ValidationError(ErrorCode::ParseError, "\"divisions\" must be an array");
    std::size_t checked = 0;
    for (std::size_t k = 0; k < divisions.size(); ++k) {
      const Json& d = divisions[k];
      const std::string where = "division " + std::to_string(k);
      const Allocation allocation = allocation_from_json(problem, field(d, "allocation"));
      const UtilityProfile claimed = profile_from_json(problem, field(d, "profile"));
      if (utility_profile(problem, allocation) != claimed) {
        throw Error(ErrorCode::VerificationFailed, where + ": profile does not match the allocation");
      }
      if (!d.contains("certificate")) {
        if (egalitarian(problem).profile != claimed) {
          throw Error(ErrorCode::VerificationFailed, where + ": profile is not the egalitarian profile");
        }
        ++checked;
        continue;
      }
      const Json& price_json = field(d, "price");
      PriceVector price{vector_from_json(field(price_json, "p")), PriceNormalization::sum_n};
      if (price_json.value("normalization", "sum_n") == "raw") price.normalization = PriceNormalization::raw;
      const Verification verification = verify_competitive(problem, allocation, price);
      if (!verification.ok()) {
        const Rejection& r = *verification.rejection;
        throw Error(ErrorCode::VerificationFailed,
                    where + ": certificate rejected (" + std::string(rejection_name(r.reason)) + "): " + r.message,
                    r.agent, r.item);
      }
      if (certificate_to_json(problem, *verification.certificate) != d["certificate"]) {
        throw Error(ErrorCode::VerificationFailed, where + ": embedded certificate differs from the replayed one");
      }
      ++checked;
    }
    return Json{{"verified", true}, {"checked", checked}};
  });
}

Json Service::axioms(const Json& request) const {
  const Problem problem = parse_problem(field(request, "problem"));
  return located(problem, [&] {
    std::vector<std::string> checks{"FSG", "NE"};
    if (request.contains("checks")) {
      const Json& list = request["checks"];
      if (!list.is_array()) throw ValidationError(ErrorCode::ParseError, "\"checks\" must be an array of strings");
      checks.clear();
      for (const auto& c : list) {
        if (!c.is_string()) throw ValidationError(ErrorCode::ParseError, "\"checks\" must be an array of strings");
        checks.push_back(c.get<std::string>());
      }
    }
    for (const auto& c : checks) {
      static const std::vector<std::string> known{"FSG", "SFSG", "NE", "ETE", "RM", "ILB"};
      if (std::find(known.begin(), known.end(), c) == known.end()) throw invalid("unknown check \"" + c + "\"");
    }
    auto wants = [&](const char* c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };

    const RuleHandle rule = resolve_rule(text(request, "rule").value_or("competitive"), problem);
    const EnumerationOptions opts = options();

    struct Subject {
      std::string label;
      UtilityProfile profile;
      std::optional<Allocation> allocation;
    };
    std::vector<Subject> subjects;
    if (request.contains("allocation")) {
      Allocation allocation = allocation_from_json(problem, request["allocation"]);
      subjects.push_back({"input", utility_profile(problem, allocation), std::move(allocation)});
    } else if (request.contains("profile")) {
      subjects.push_back({"input", profile_from_json(problem, request["profile"]), std::nullopt});
    } else {
      std::size_t k = 0;
      for (auto& outcome : apply_rule(rule, problem, opts)) {
        subjects.push_back({rule.name() + "[" + std::to_string(k++) + "]", std::move(outcome.profile),
                            std::move(outcome.allocation)});
      }
    }

    Json evaluations = Json::array();
    for (const auto& s : subjects) {
      Json reports = Json::array();
      if (wants("FSG")) reports.push_back(report_to_json(problem, fair_share_report(problem, s.profile)));
      if (wants("SFSG")) reports.push_back(report_to_json(problem, fair_share_report(problem, s.profile).details.at(0)));
      if (wants("NE")) {
        if (!s.allocation) throw invalid("the NE check needs an allocation");
        reports.push_back(report_to_json(problem, envy_report(problem, *s.allocation)));
      }
      if (wants("ETE")) reports.push_back(report_to_json(problem, ete_check(problem, s.profile)));
      Json entry{{"label", s.label}, {"profile", to_json(s.profile)}};
      if (s.allocation) entry["allocation"] = to_json(s.allocation->z());
      entry["reports"] = std::move(reports);
      evaluations.push_back(std::move(entry));
    }

    Json rule_reports = Json::array();
    if (wants("RM")) {
      std::vector<std::vector<std::size_t>> removals;
      if (request.contains("remove")) {
        std::vector<std::size_t> removed;
        for (const auto& id : request["remove"]) removed.push_back(index_of(problem.items(), id, "item"));
        removals.push_back(std::move(removed));
      } else {
        for (std::size_t a = 0; problem.item_count() > 1 && a < problem.item_count(); ++a) removals.push_back({a});
      }
      for (const auto& removed : removals) {
        rule_reports.push_back(Json{{"check", "RM"},
                                    {"removed", ids_json(problem.items(), removed)},
                                    {"report", report_to_json(problem, rm_probe(problem, removed, rule, opts))}});
      }
    }
    if (wants("ILB")) {
      const Json& probe = field(request, "ilb");
      const std::size_t agent = index_of(problem.agents(), field(probe, "agent"), "agent");
      const std::size_t item = index_of(problem.items(), field(probe, "item"), "item");
      const Rational bid = rational_from_json(field(probe, "bid"));
      std::optional<Allocation> tracked;
      if (subjects.size() == 1 && subjects.front().label == "input") tracked = subjects.front().allocation;
      rule_reports.push_back(Json{{"check", "ILB"},
                                  {"agent", problem.agents()[agent]},
                                  {"item", problem.items()[item]},
                                  {"bid", to_json(bid)},
                                  {"report", report_to_json(problem, ilb_probe(problem, rule, agent, item, bid,
                                                                               tracked, opts))}});
    }
    Json checks_json = Json::array();
    for (const auto& c : checks) checks_json.push_back(c);
    return Json{{"problem", problem_to_json(problem)},
                {"rule", rule.name()},
                {"checks", std::move(checks_json)},
                {"evaluations", std::move(evaluations)},
                {"rule_reports", std::move(rule_reports)}};
  });
}

Json Service::components(const Json& request) const {
  const Problem problem = parse_problem(field(request, "problem"));
  return located(problem, [&] {
    Json out{{"problem", problem_to_json(problem)}};
    const Json structure = components_to_json(problem, count_ef_components(problem));
    for (const auto& [key, value] : structure.items()) out[key] = value;
    return out;
  });
}

Json Service::corpus_list() const {
  Json fixtures = Json::array();
  for (const auto& info : corpus_catalog()) {
    Json defaults = Json::object();
    for (const auto& [k, v] : info.defaults) defaults[k] = v;
    fixtures.push_back(Json{{"name", info.name}, {"description", info.description}, {"defaults", defaults}});
  }
  return Json{{"count", fixtures.size()}, {"fixtures", std::move(fixtures)}};
}

Json Service::corpus_get(const std::string& name, const FixtureParams& params) const {
  return fixture_to_json(build_fixture(name, params));
}

Json Service::demo(const std::string& which, const FixtureParams& params) const {
  if (which == "discontinuity") {
    auto it = params.find("selection");
    const RuleHandle selection = RuleHandle::parse(it == params.end() ? "competitive-bads-median" : it->second);
    const DiscontinuityReport r =
        discontinuity_demo(selection, size_param(params, "agents", 4), size_param(params, "steps", 10000));
    Json out{{"demo", "discontinuity"},
             {"selection", r.selection},
             {"q1", problem_to_json(r.q1)},
             {"q2", problem_to_json(r.q2)},
             {"steps", r.steps},
             {"per_step_bound", to_json(r.per_step_bound)},
             {"max_jump", to_json(r.max_jump)},
             {"jump_step", r.jump_step},
             {"before_jump", to_json(r.before_jump)},
             {"after_jump", to_json(r.after_jump)},
             {"components_start", r.components_start},
             {"components_end", r.components_end},
             {"envy_failures", r.envy_failures}};
    out["first_envy_step"] = r.first_envy_step ? Json(*r.first_envy_step) : Json(nullptr);
    out["jump_detected"] = r.jump_detected;
    return out;
  }
  if (which == "misreport") {
    auto it = params.find("instance");
    const Fixture fixture = build_fixture(it == params.end() ? "ex_a_bads" : it->second);
    const Problem& problem = fixture.problem;
    return located(problem, [&] {
      std::size_t agent = 0;
      if (auto a = params.find("agent"); a != params.end()) agent = index_of(problem.agents(), Json(a->second), "agent");
      const MisreportResult r = misreport_demo(problem, agent);
      return Json{{"demo", "misreport"},
                  {"instance", fixture.name},
                  {"problem", problem_to_json(problem)},
                  {"agent", problem.agents()[agent]},
                  {"item", problem.items()[r.item]},
                  {"misreport", to_json(r.misreport)},
                  {"halvings", r.halvings},
                  {"truthful", to_json(r.truthful.z())},
                  {"manipulated", to_json(r.manipulated.z())},
                  {"gain", to_json(r.gain)}};
    });
  }
  if (which == "rm") {
    const RmWitness w = rm_impossibility_witness(size_param(params, "agents", 2), size_param(params, "bads", 2));
    Json cases = Json::array();
    for (const auto& c : w.cases) cases.push_back(rm_case_json(w.problem, c));
    return Json{{"demo", "rm"},
                {"problem", problem_to_json(w.problem)},
                {"group1", ids_json(w.problem.agents(), w.group1)},
                {"group2", ids_json(w.problem.agents(), w.group2)},
                {"cases", std::move(cases)},
                {"argument", w.argument}};
  }
  if (which == "alpha") {
    const Rational alpha = rational_param(params, "alpha", Rational(3, 2));
    const MisreportSweep s = alpha_misreport_sweep(alpha, rational_param(params, "low", Rational(1, 2)),
                                                   rational_param(params, "high", Rational(3)),
                                                   size_param(params, "steps", 50));
    Json samples = Json::array();
    for (const auto& [bid, utility] : s.samples) samples.push_back(Json::array({to_json(bid), to_json(utility)}));
    return Json{{"demo", "alpha"},
                {"alpha", to_json(s.alpha)},
                {"best_report", to_json(s.best_report)},
                {"best_report_decimal", to_double(s.best_report)},
                {"best_utility", to_json(s.best_utility)},
                {"sqrt_alpha", s.sqrt_alpha},
                {"samples", std::move(samples)}};
  }
  throw invalid("unknown demo \"" + which + "\" (expected discontinuity, misreport, rm or alpha)");
}

Json Service::health() const {
  return Json{{"status", "ok"},
              {"max_vertices", config_.max_vertices},
              {"allow_numeric", config_.allow_numeric},
              {"deadline_ms", config_.deadline.count()}};
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::TooLargeToEnumerate: return 3;
    case ErrorCode::VerificationFailed: return 4;
    case ErrorCode::Internal: return 1;
    default: return 2;
  }
}

int http_status_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::TooLargeToEnumerate: return 413;
    case ErrorCode::UnknownInstance: return 404;
    case ErrorCode::VerificationFailed: return 409;
    case ErrorCode::Internal: return 500;
    default: return 422;
  }
}

Response run_handler(const std::function<Json()>& handler) {
  auto internal = [](const std::string& message) {
    const std::string id = correlation_id();
    std::cerr << "internal error [" << id << "]: " << message << '\n';
    return Response{Json{{"error", {{"code", "Internal"}, {"message", message}, {"correlation_id", id}}}}, 1, 500};
  };
  try {
    return Response{handler(), 0, 200};
  } catch (const LocatedError& e) {
    if (e.code() == ErrorCode::Internal) return internal(e.what());
    return Response{error_to_json(e, e.agents, e.items), exit_code_for(e), http_status_for(e)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Internal) return internal(e.what());
    return Response{error_to_json(e), exit_code_for(e), http_status_for(e)};
  } catch (const nlohmann::json::exception& e) {
    return Response{error_to_json(ValidationError(ErrorCode::ParseError, e.what())), 2, 422};
  } catch (const std::exception& e) {
    return internal(e.what());
  }
}

std::string render_table(const std::string& command, const Json& report) {
  Table table;
  if (report.contains("error")) {
    const Json& e = report["error"];
    table.row({"error", e.value("code", ""), e.value("message", "")});
    return table.str();
  }
  if (command == "solve") {
    table.row({"rule", report.value("rule", ""), "method", report.value("method", "")});
    table.row({"count", report["count"].dump(), "complete", report.value("complete", true) ? "yes" : "no"});
    std::size_t k = 0;
    for (const auto& d : report["divisions"]) {
      std::vector<std::string> cells{"#" + std::to_string(k++), "U = " + plain(d["profile"])};
      if (d.contains("price")) cells.push_back("p = " + plain(d["price"]["p"]));
      table.row(std::move(cells));
    }
  } else if (command == "axioms") {
    for (const auto& e : report["evaluations"]) {
      for (const auto& r : e["reports"]) {
        table.row({e.value("label", ""), r.value("axiom", ""), r.value("verdict", ""), plain(r["margins"])});
      }
    }
    for (const auto& r : report["rule_reports"]) {
      table.row({r.value("check", ""), r["report"].value("verdict", ""), plain(r["report"]["margins"])});
    }
  } else if (command == "components") {
    table.row({"count", report["count"].dump(), "ratios", plain(report["ratios"])});
    for (const auto& c : report["components"]) {
      std::string inequalities;
      for (const auto& s : c["inequalities"]) inequalities += (inequalities.empty() ? "" : "; ") + s.get<std::string>();
      table.row({c.value("tag", ""), inequalities});
    }
  } else if (command == "corpus" && report.contains("fixtures")) {
    for (const auto& f : report["fixtures"]) table.row({f.value("name", ""), f.value("description", "")});
  } else if (command == "corpus") {
    table.row({"fixture", report.value("name", ""), report.value("description", "")});
    for (const auto& e : report["expectations"]) {
      table.row({e.value("kind", ""), e.value("provenance", ""), e.value("note", "")});
    }
  } else {
    for (const auto& [key, value] : report.items()) {
      if (value.is_primitive() || (value.is_array() && !value.empty() && value.front().is_primitive())) {
        table.row({key, plain(value)});
      }
    }
  }
  return table.str();
}

}  // namespace fairdiv
