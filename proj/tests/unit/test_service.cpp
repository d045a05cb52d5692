#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "fairdiv/http_server.hpp"
#include "fairdiv/instance_corpus.hpp"
#include "fairdiv/service.hpp"
#include "helpers.hpp"

using namespace fairdiv;

namespace {

Json problem_json(const char* fixture) { return problem_to_json(build_fixture(fixture).problem); }

Json big_bads() {
  Json u = Json::array();
  for (int i = 0; i < 6; ++i) {
    Json row = Json::array();
    for (int a = 0; a < 6; ++a) row.push_back(1 + ((i * 7 + a * 3) % 11));
    u.push_back(row);
  }
  return Json{{"kind", "bads"}, {"u", u}};
}

struct Server {
  httplib::Server server;
  Service service;
  std::thread thread;
  int port = 0;

  Server() {
    register_routes(server, service);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~Server() {
    server.stop();
    thread.join();
  }
};

struct Run {
  int status = 0;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string command = std::string(FAIRDIV_CLI) + " -q " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  for (std::size_t n; (n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0;) run.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  run.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string temp_file(const std::string& name, const Json& content) {
  const std::string path = std::string(FAIRDIV_TEST_TMP) + "/" + name;
  std::ofstream(path) << content.dump();
  return path;
}

}  // namespace

TEST_SUITE("service_api") {
  TEST_CASE("solve examples") {
    const Service service;
    const Json c = service.solve(Json{{"problem", problem_json("ex_c")}, {"rule", "competitive"}, {"enumerate", true}});
    CHECK(c["count"] == 3);
    std::set<std::vector<std::string>> prices;
    for (const auto& d : c["divisions"]) prices.insert(d["price"]["p"].get<std::vector<std::string>>());
    CHECK(prices == std::set<std::vector<std::string>>{{"2/3", "4/3"}, {"1", "1"}, {"3/2", "1/2"}});
    const Json e = service.solve(Json{{"problem", problem_json("ex_a_goods")}, {"rule", "egalitarian"}});
    CHECK(e["divisions"][0]["profile"] == Json::array({"64/7", "24/7"}));
    const Json b = service.solve(Json{{"problem", problem_json("ex_b")}, {"rule", "competitive"}, {"enumerate", true}});
    CHECK(b["count"] == 1);
    CHECK(b["divisions"][0]["price"]["p"] == Json::array({"0", "2"}));
    const Json k = service.components(Json{{"problem", problem_json("comp_count")}});
    CHECK(k["count"] == 3);
  }

  TEST_CASE("single selections and verification") {
    const Service service;
    const Json median = service.solve(Json{{"problem", problem_json("ex_c")}, {"verify", true}});
    CHECK(median["selection"] == "median");
    CHECK(median["divisions"].size() == 1);
    CHECK(median["divisions"][0]["profile"] == Json::array({"1", "1"}));
    CHECK(median["verified"] == true);

    Json tampered = median;
    tampered["divisions"][0]["certificate"]["entries"][0]["slack"] = "5";
    const Response bad = run_handler([&] { return service.verify(tampered); });
    CHECK(bad.exit_code == 4);
    CHECK(bad.body["error"]["code"] == "VerificationFailed");

    Json wrong_price = median;
    wrong_price["divisions"][0]["price"]["p"] = Json::array({"3/2", "1/2"});
    CHECK(run_handler([&] { return service.verify(wrong_price); }).exit_code == 4);
  }

  TEST_CASE("error mapping") {
    const Service service;
    const Response guard = run_handler([&] { return service.solve(Json{{"problem", big_bads()}, {"enumerate", true}}); });
    CHECK(guard.exit_code == 3);
    CHECK(guard.http_status == 413);
    const Response invalid = run_handler([&] {
      return service.solve(Json{{"problem", Json{{"kind", "goods"}, {"u", Json::array({Json::array({1, -1}), Json::array({1, 1})})}}}});
    });
    CHECK(invalid.exit_code == 2);
    CHECK(invalid.http_status == 422);
    CHECK(invalid.body["error"]["code"] == "NegativeEntry");
    CHECK(invalid.body["error"]["agent"] == "1");
    CHECK(invalid.body["error"]["item"] == "b");
    const Response unknown = run_handler([&] { return service.corpus_get("nope"); });
    CHECK(unknown.http_status == 404);
    const Response internal = run_handler([]() -> Json { throw std::logic_error("boom"); });
    CHECK(internal.exit_code == 1);
    CHECK(internal.http_status == 500);
    CHECK(internal.body["error"]["correlation_id"].get<std::string>().size() == 16);
    const Response mismatch = run_handler([&] {
      return service.solve(Json{{"problem", problem_json("ex_c")}, {"rule", "competitive-goods"}});
    });
    CHECK(mismatch.body["error"]["code"] == "KindMismatch");
  }

  TEST_CASE("axioms endpoint") {
    const Service service;
    const Json report = service.axioms(Json{{"problem", problem_json("ex_c")}, {"checks", {"FSG", "NE", "ETE"}}});
    CHECK(report["evaluations"].size() == 3);
    for (const auto& e : report["evaluations"]) {
      CHECK(e["reports"][0]["verdict"] == "holds");
      CHECK(e["reports"][1]["verdict"] == "holds");
    }
    const Json rm = service.axioms(Json{{"problem", problem_json("q_a")},
                                        {"rule", "egalitarian"},
                                        {"checks", {"RM"}},
                                        {"remove", {"d"}}});
    CHECK(rm["rule_reports"][0]["report"]["verdict"] == "violated");
    const Json ilb = service.axioms(Json{{"problem", problem_json("ex_a_goods")},
                                         {"checks", {"ILB"}},
                                         {"ilb", {{"agent", "2"}, {"item", "b"}, {"bid", "1/2"}}}});
    CHECK(ilb["rule_reports"][0]["report"]["verdict"] == "holds");
    const Response missing = run_handler([&] {
      return service.axioms(Json{{"problem", problem_json("ex_c")}, {"profile", {1, 1}}, {"checks", {"NE"}}});
    });
    CHECK(missing.exit_code == 2);
  }

  TEST_CASE("corpus and demos") {
    const Service service;
    CHECK(service.corpus_list()["count"].get<std::size_t>() >= 12);
    CHECK(service.corpus_get("comp_count", {{"n", "5"}})["params"]["n"] == "5");
    const Json rm = service.demo("rm");
    CHECK(rm["cases"][0]["conclusion_bound"] == "10/9");
    const Json mis = service.demo("misreport");
    CHECK(mis["gain"] == "-108/175");
    CHECK(run_handler([&] { return service.demo("nope"); }).exit_code == 2);
  }

  TEST_CASE("environment overrides") {
    setenv("FAIRDIV_MAX_VERTICES", "12", 1);
    setenv("FAIRDIV_ALLOW_NUMERIC", "false", 1);
    setenv("FAIRDIV_PORT", "9123", 1);
    const ServiceConfig c = ServiceConfig{}.with_env_overrides();
    CHECK(c.max_vertices == 12);
    CHECK_FALSE(c.allow_numeric);
    CHECK(c.port == 9123);
    setenv("FAIRDIV_PORT", "x", 1);
    CHECK_THROWS_CODE(ServiceConfig{}.with_env_overrides(), ErrorCode::InvalidArgument);
    unsetenv("FAIRDIV_MAX_VERTICES");
    unsetenv("FAIRDIV_ALLOW_NUMERIC");
    unsetenv("FAIRDIV_PORT");
  }

  TEST_CASE("HTTP and CLI return byte-identical reports") {
    Server server;
    httplib::Client client("127.0.0.1", server.port);

    auto health = client.Get("/v1/health");
    REQUIRE(health);
    CHECK(health->status == 200);

    struct Case {
      const char* fixture;
      Json request;
      std::string cli;
    };
    const std::string ex_c = temp_file("ex_c.json", problem_json("ex_c"));
    const std::string ex_a = temp_file("ex_a_goods.json", problem_json("ex_a_goods"));
    const std::string cc = temp_file("comp_count_4.json", problem_json("comp_count"));
    const std::vector<std::tuple<std::string, Json, std::string>> cases{
        {"/v1/solve", Json{{"problem", problem_json("ex_c")}, {"rule", "competitive"}, {"enumerate", true}},
         "solve --rule competitive --enumerate --in " + ex_c},
        {"/v1/solve", Json{{"problem", problem_json("ex_a_goods")}, {"rule", "egalitarian"}},
         "solve --rule egalitarian --in " + ex_a},
        {"/v1/components", Json{{"problem", problem_json("comp_count")}}, "components --in " + cc},
        {"/v1/axioms", Json{{"problem", problem_json("ex_c")}, {"checks", {"FSG", "NE"}}},
         "axioms --checks FSG,NE --in " + ex_c},
    };
    for (const auto& [path, request, args] : cases) {
      auto res = client.Post(path, request.dump(), "application/json");
      REQUIRE(res);
      CHECK(res->status == 200);
      const Run cli = run_cli(args);
      CHECK(cli.status == 0);
      CHECK_MESSAGE(res->body == cli.out, path);
    }

    auto listing = client.Get("/v1/corpus");
    REQUIRE(listing);
    CHECK(listing->body == run_cli("corpus").out);
    auto fixture = client.Get("/v1/corpus/comp_count?n=5");
    REQUIRE(fixture);
    CHECK(fixture->body == run_cli("corpus --name comp_count --param n=5").out);
  }

  TEST_CASE("HTTP status codes") {
    Server server;
    httplib::Client client("127.0.0.1", server.port);
    auto guard = client.Post("/v1/solve", Json{{"problem", big_bads()}, {"enumerate", true}}.dump(), "application/json");
    REQUIRE(guard);
    CHECK(guard->status == 413);
    auto garbage = client.Post("/v1/solve", "{not json", "application/json");
    REQUIRE(garbage);
    CHECK(garbage->status == 422);
    CHECK(Json::parse(garbage->body)["error"]["code"] == "ParseError");
    auto missing = client.Get("/v1/corpus/nope");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    auto ex_b = client.Post("/v1/solve", Json{{"problem", problem_json("ex_b")}, {"enumerate", true}}.dump(),
                            "application/json");
    REQUIRE(ex_b);
    CHECK(Json::parse(ex_b->body)["divisions"][0]["price"]["p"] == Json::array({"0", "2"}));
  }

  TEST_CASE("CLI exit codes") {
    const std::string big = temp_file("big.json", big_bads());
    CHECK(run_cli("solve --enumerate --in " + big).status == 3);
    const std::string broken = temp_file("broken.json", Json{{"kind", "goods"}, {"u", {{1, "x"}, {1, 1}}}});
    CHECK(run_cli("solve --in " + broken).status == 2);
    CHECK(run_cli("solve --in /nonexistent.json").status == 2);
    const Run report = run_cli("solve --enumerate --in " + temp_file("ex_c2.json", problem_json("ex_c")));
    REQUIRE(report.status == 0);
    Json tampered = Json::parse(report.out);
    tampered["divisions"][1]["certificate"]["profile"][0] = "7";
    CHECK(run_cli("verify --in " + temp_file("report.json", Json::parse(report.out))).status == 0);
    CHECK(run_cli("verify --in " + temp_file("tampered.json", tampered)).status == 4);
    CHECK(run_cli("demo --which rm").status == 0);
  }
}
