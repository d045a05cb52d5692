#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fairdiv/http_server.hpp"
#include "fairdiv/service.hpp"

using namespace fairdiv;

namespace {

Json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ValidationError(ErrorCode::ParseError, "cannot read " + path);
    buffer << in.rdbuf();
  }
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(ErrorCode::ParseError, path + " is not JSON: " + e.what());
  }
}

/// A bare problem document becomes {"problem": ...}.
Json as_request(Json document) {
  if (document.is_object() && document.contains("problem")) return document;
  return Json{{"problem", std::move(document)}};
}

FixtureParams parse_params(const std::vector<std::string>& pairs) {
  FixtureParams params;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw ValidationError(ErrorCode::InvalidArgument, "expected key=value, got " + p);
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return params;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

int emit(const std::string& command, const Response& response, bool quiet) {
  if (response.exit_code == 0) {
    std::cout << dump(response.body);
    if (!quiet) std::cerr << render_table(command, response.body);
  } else {
    std::cerr << dump(response.body);
  }
  return response.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact competitive and egalitarian division of goods and bads"};
  app.require_subcommand(1);
  app.fallthrough();

  ServiceConfig config;
  bool quiet = false;
  bool no_numeric = false;
  long deadline_ms = config.deadline.count();
  app.add_option("--max-vertices", config.max_vertices, "forest enumeration guard on n + p");
  app.add_flag("--no-numeric", no_numeric, "disable the floating-point path for large goods problems");
  app.add_option("--deadline-ms", deadline_ms, "per-request deadline");
  app.add_flag("-q,--quiet", quiet, "suppress the table on stderr");

  std::string in_path, rule = "competitive", selection;
  bool enumerate = false, verify = false;
  auto* solve = app.add_subcommand("solve", "competitive or egalitarian divisions");
  solve->add_option("--in", in_path, "problem or request JSON ('-' for stdin)")->required();
  solve->add_option("--rule", rule, "egalitarian | competitive | competitive-bads-median | ...");
  solve->add_flag("--enumerate", enumerate, "every competitive division (bads)");
  solve->add_option("--selection", selection, "all | median | max-nash (bads, without --enumerate)");
  solve->add_flag("--verify", verify, "replay every emitted certificate");

  std::string checks, allocation_path, ilb, remove;
  auto* axioms = app.add_subcommand("axioms", "fairness and monotonicity checks");
  axioms->add_option("--in", in_path, "problem or request JSON")->required();
  axioms->add_option("--checks", checks, "comma list of FSG,SFSG,NE,ETE,RM,ILB");
  axioms->add_option("--rule", rule, "rule that produces the checked divisions");
  axioms->add_option("--allocation", allocation_path, "JSON matrix to check instead of the rule's output");
  axioms->add_option("--ilb", ilb, "agent,item,bid for the ILB check");
  axioms->add_option("--remove", remove, "comma list of items removed for the RM check");

  auto* components = app.add_subcommand("components", "envy-free components for two bads");
  components->add_option("--in", in_path, "problem or request JSON")->required();

  std::string name, export_dir;
  std::vector<std::string> params;
  auto* corpus = app.add_subcommand("corpus", "list, show or export fixtures");
  corpus->add_option("--name", name, "fixture id");
  corpus->add_option("--param", params, "key=value fixture parameter")->allow_extra_args(false);
  corpus->add_option("--export", export_dir, "write every exported fixture into this directory");

  std::string which;
  auto* demo = app.add_subcommand("demo", "worked demonstrations");
  demo->add_option("--which", which, "discontinuity | misreport | rm | alpha")->required();
  demo->add_option("--param", params, "key=value demo parameter")->allow_extra_args(false);

  auto* verify_cmd = app.add_subcommand("verify", "replay the certificates of a solve report");
  verify_cmd->add_option("--in", in_path, "solve report JSON")->required();

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("--host", config.host, "bind address");
  serve_cmd->add_option("--port", config.port, "port");

  CLI11_PARSE(app, argc, argv);

  const Response configured = run_handler([&] {
    config.allow_numeric = !no_numeric;
    config.deadline = std::chrono::milliseconds(deadline_ms);
    config = config.with_env_overrides();
    return Json::object();
  });
  if (configured.exit_code != 0) return emit("config", configured, quiet);
  const Service service(config);

  if (*serve_cmd) {
    const Response r = run_handler([&] {
      serve(config);
      return Json::object();
    });
    return r.exit_code == 0 ? 0 : emit("serve", r, quiet);
  }

  std::string command;
  Response response = run_handler([&]() -> Json {
    if (*solve) {
      command = "solve";
      Json request = as_request(read_json(in_path));
      request["rule"] = rule;
      if (enumerate) request["enumerate"] = true;
      if (!selection.empty()) request["selection"] = selection;
      if (verify) request["verify"] = true;
      return service.solve(request);
    }
    if (*axioms) {
      command = "axioms";
      Json request = as_request(read_json(in_path));
      if (!checks.empty() || !request.contains("checks")) request["checks"] = split_list(checks.empty() ? "FSG,NE" : checks);
      if (axioms->count("--rule")) request["rule"] = rule;
      if (!allocation_path.empty()) request["allocation"] = read_json(allocation_path);
      if (!remove.empty()) request["remove"] = split_list(remove);
      if (!ilb.empty()) {
        const auto parts = split_list(ilb);
        if (parts.size() != 3) throw ValidationError(ErrorCode::InvalidArgument, "--ilb expects agent,item,bid");
        request["ilb"] = Json{{"agent", parts[0]}, {"item", parts[1]}, {"bid", parts[2]}};
      }
      return service.axioms(request);
    }
    if (*components) {
      command = "components";
      return service.components(as_request(read_json(in_path)));
    }
    if (*corpus) {
      command = "corpus";
      if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        Json written = Json::array();
        for (const auto& fixture : exported_fixtures()) {
          const auto path = std::filesystem::path(export_dir) / (fixture_stem(fixture) + ".json");
          std::ofstream(path) << dump(fixture_to_json(fixture));
          written.push_back(path.filename().string());
        }
        return Json{{"exported", written.size()}, {"files", std::move(written)}};
      }
      if (name.empty()) return service.corpus_list();
      return service.corpus_get(name, parse_params(params));
    }
    if (*demo) {
      command = "demo";
      return service.demo(which, parse_params(params));
    }
    command = "verify";
    return service.verify(read_json(in_path));
  });
  return emit(command, response, quiet);
}
