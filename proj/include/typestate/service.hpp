#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "typestate/pipeline.hpp"

namespace typestate::service {

inline constexpr std::size_t kMaxBodyBytes = 1 << 20;
inline constexpr int kDefaultPort = 8080;

struct Request {
  std::string method;
  std::string path;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ConvertRequest {
  InputKind kind;
  std::string payload;
  std::optional<std::string> name;
};

namespace detail {

inline Response with_cors(Response r) {
  r.headers["Access-Control-Allow-Origin"] = "*";
  r.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
  r.headers["Access-Control-Allow-Headers"] = "Content-Type";
  return r;
}

inline Response transport_error(int status, const std::string& message) {
  ordered_json j;
  j["error"] = message;
  return with_cors({status, "application/json", j.dump(), {}});
}

template <typename T>
Response convert_response(const Result<T>& r,
                          std::optional<std::string> result) {
  ordered_json j;
  bool ok = r.ok() && !has_errors(r.diagnostics());
  j["ok"] = ok;
  if (ok && result) j["result"] = *result;
  j["diagnostics"] = to_json(r.diagnostics());
  return with_cors({200, "application/json", j.dump(), {}});
}

// Envelope: {"kind": ..., "payload": ..., "options": {"name": ...}}.
inline std::variant<ConvertRequest, Response> read_envelope(
    const std::string& body) {
  ordered_json j;
  try {
    j = ordered_json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return transport_error(400, "request body is not valid JSON");
  }
  if (!j.is_object()) return transport_error(400, "request must be an object");
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string())
    return transport_error(400, "missing 'kind'");
  auto kind = parse_kind(kind_it->get<std::string>());
  if (!kind) return transport_error(400, "unknown kind");
  auto payload_it = j.find("payload");
  if (payload_it == j.end() || !payload_it->is_string() ||
      payload_it->get<std::string>().empty())
    return transport_error(400, "missing or empty 'payload'");

  ConvertRequest req{*kind, payload_it->get<std::string>(), std::nullopt};
  if (auto opts = j.find("options"); opts != j.end()) {
    if (!opts->is_object()) return transport_error(400, "'options' must be an object");
    if (auto n = opts->find("name"); n != opts->end()) {
      if (!n->is_string()) return transport_error(400, "'options.name' must be a string");
      req.name = n->get<std::string>();
    }
  }
  return req;
}

}  // namespace detail

inline Response api_compile(const ConvertRequest& req) {
  if (req.kind == InputKind::Doa)
    return detail::transport_error(400, "compile accepts kind typestate or ast");
  auto doa = load_doa(req.kind, req.payload);
  return detail::convert_response(
      doa, doa ? std::optional(doa_to_json(*doa)) : std::nullopt);
}

inline Response api_decompile(const ConvertRequest& req) {
  if (req.kind != InputKind::Doa)
    return detail::transport_error(400, "decompile accepts kind doa");
  auto doa = doa_from_json(req.payload, DoaCheck::Decompile);
  if (!doa) return detail::convert_response(doa, std::nullopt);
  auto text = decompile_text(req.name.value_or("Typestate"), *doa);
  auto diags = doa.diagnostics();
  if (!text) {
    for (const auto& d : text.diagnostics())
      if (d.is_error()) diags.push_back(d);
    return detail::convert_response(Result<std::string>::failure(diags),
                                    std::nullopt);
  }
  return detail::convert_response(Result<std::string>(*text, diags), *text);
}

inline Response api_ast(const ConvertRequest& req) {
  if (req.kind == InputKind::Typestate) {
    auto ast = load_protocol(req.payload);
    return detail::convert_response(
        ast, ast ? std::optional(ast_to_json(*ast)) : std::nullopt);
  }
  if (req.kind == InputKind::Ast) {
    auto ast = ast_from_json(req.payload);
    return detail::convert_response(
        ast, ast ? std::optional(render(*ast)) : std::nullopt);
  }
  return detail::transport_error(400, "ast accepts kind typestate or ast");
}

inline Response api_validate(const ConvertRequest& req) {
  auto diags = check_document(req.kind, req.payload);
  ordered_json j;
  j["ok"] = !has_errors(diags);
  j["diagnostics"] = to_json(diags);
  return detail::with_cors({200, "application/json", j.dump(), {}});
}

// Routes one request. Pure: the response depends on the request alone.
inline Response handle(const Request& req) {
  if (req.method == "OPTIONS")
    return detail::with_cors({204, "text/plain", "", {}});
  if (req.path == "/healthz") {
    if (req.method != "GET") return detail::transport_error(405, "use GET");
    return detail::with_cors({200, "text/plain", "ok", {}});
  }

  using Handler = Response (*)(const ConvertRequest&);
  static const std::map<std::string, Handler> routes = {
      {"/api/compile", &api_compile},
      {"/api/decompile", &api_decompile},
      {"/api/ast", &api_ast},
      {"/api/validate", &api_validate},
  };
  auto route = routes.find(req.path);
  if (route == routes.end()) return detail::transport_error(404, "not found");
  if (req.method != "POST") return detail::transport_error(405, "use POST");
  if (req.body.size() > kMaxBodyBytes)
    return detail::transport_error(413, "request body exceeds 1 MiB");

  auto env = detail::read_envelope(req.body);
  if (auto* r = std::get_if<Response>(&env)) return *r;
  return route->second(std::get<ConvertRequest>(env));
}

}  // namespace typestate::service
