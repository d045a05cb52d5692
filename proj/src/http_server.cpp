#include "fairdiv/http_server.hpp"

#include <iostream>

namespace fairdiv {

namespace {

void reply(httplib::Response& res, const Response& response) {
  res.status = response.http_status;
  res.set_content(dump(response.body), "application/json");
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(ErrorCode::ParseError, std::string("request body is not JSON: ") + e.what());
  }
}

FixtureParams query_params(const httplib::Request& req) {
  FixtureParams params;
  for (const auto& [key, value] : req.params) params[key] = value;
  return params;
}

}  // namespace

void register_routes(httplib::Server& server, const Service& service) {
  auto post = [&server, &service](const char* path, Json (Service::*handler)(const Json&) const) {
    server.Post(path, [&service, handler](const httplib::Request& req, httplib::Response& res) {
      reply(res, run_handler([&] { return (service.*handler)(parse_body(req.body)); }));
    });
  };
  post("/v1/solve", &Service::solve);
  post("/v1/axioms", &Service::axioms);
  post("/v1/components", &Service::components);
  post("/v1/verify", &Service::verify);

  server.Get("/v1/health", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, run_handler([&] { return service.health(); }));
  });
  server.Get("/v1/corpus", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, run_handler([&] { return service.corpus_list(); }));
  });
  server.Get("/v1/corpus/:name", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, run_handler([&] { return service.corpus_get(req.path_params.at("name"), query_params(req)); }));
  });
  server.Get("/v1/demo/:which", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, run_handler([&] { return service.demo(req.path_params.at("which"), query_params(req)); }));
  });

  server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      res.set_content(dump(Json{{"error", {{"code", "NotFound"}, {"message", "no route for " + req.path}}}}),
                      "application/json");
    }
  });
}

void serve(const ServiceConfig& config) {
  httplib::Server server;
  const Service service(config);
  register_routes(server, service);
  std::cerr << "listening on " << config.host << ':' << config.port << '\n';
  if (!server.listen(config.host, config.port)) {
    throw Error(ErrorCode::InvalidArgument, "cannot listen on " + config.host + ":" + std::to_string(config.port));
  }
}

}  // namespace fairdiv
