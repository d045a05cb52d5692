#pragma once

#include <httplib.h>

#include "fairdiv/service.hpp"

namespace fairdiv {

/// Installs the /v1 routes; the service must outlive the server.
void register_routes(httplib::Server& server, const Service& service);

/// Blocks until the server stops.
void serve(const ServiceConfig& config);

}  // namespace fairdiv
