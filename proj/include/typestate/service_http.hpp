#pragma once

#include "httplib.h"
#include "typestate/service.hpp"

namespace typestate::service {

// Registers every endpoint on an httplib server. All routing, including 404
// and 405, happens in handle().
inline void mount(httplib::Server& server) {
  // httplib answers bodies beyond its own cap with a bare 413; keep that cap
  // well above ours so the usual JSON error body is sent.
  server.set_payload_max_length(4 * kMaxBodyBytes);
  auto forward = [](const httplib::Request& req, httplib::Response& res) {
    auto out = handle({req.method, req.path, req.body});
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (out.status != 204) res.set_content(out.body, out.content_type);
  };
  const char* any = R"(/.*)";
  server.Get(any, forward);
  server.Post(any, forward);
  server.Put(any, forward);
  server.Patch(any, forward);
  server.Delete(any, forward);
  server.Options(any, forward);
}

}  // namespace typestate::service
