#pragma once

#include <chrono>
#include <exception>
#include <functional>
#include <string>

#include "fairdiv/json_io.hpp"

namespace fairdiv {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Forest enumeration runs only when n + p does not exceed this bound.
  std::size_t max_vertices = 11;
  bool allow_numeric = true;
  std::chrono::milliseconds deadline{30000};

  /// Applies FAIRDIV_HOST, FAIRDIV_PORT, FAIRDIV_MAX_VERTICES, FAIRDIV_ALLOW_NUMERIC, FAIRDIV_DEADLINE_MS.
  ServiceConfig with_env_overrides() const;
};

/// Outcome of a handler: the body plus the matching CLI exit code and HTTP status.
struct Response {
  Json body;
  int exit_code = 0;
  int http_status = 200;
};

/// Stateless request handlers shared by the CLI and the HTTP server.
class Service {
 public:
  explicit Service(ServiceConfig config = {});

  const ServiceConfig& config() const noexcept { return config_; }

  /// {problem, rule, enumerate?, selection?, verify?}
  Json solve(const Json& request) const;
  /// {problem, profile? | allocation?, rule?, checks, remove?, ilb?}
  Json axioms(const Json& request) const;
  /// {problem}
  Json components(const Json& request) const;
  Json corpus_list() const;
  Json corpus_get(const std::string& name, const FixtureParams& params = {}) const;
  /// Re-checks every certificate of a solve report; throws VerificationFailed on mismatch.
  Json verify(const Json& report) const;
  /// which: discontinuity | misreport | rm | alpha
  Json demo(const std::string& which, const FixtureParams& params = {}) const;
  Json health() const;

 private:
  EnumerationOptions options() const;

  ServiceConfig config_;
};

int exit_code_for(const Error& error);
int http_status_for(const Error& error);

/// Runs a handler and maps any exception to an error body.
Response run_handler(const std::function<Json()>& handler);

/// Human-readable summary of a report produced by the given command.
std::string render_table(const std::string& command, const Json& report);

}  // namespace fairdiv
