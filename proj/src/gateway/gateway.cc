// Copyright 2026 The Duet Enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "duet/gateway/gateway.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"
#include "httplib.h"

namespace duet {
namespace {

HttpResponse JsonResponse(int status, const nlohmann::json& body) {
  return HttpResponse{status, "application/json", body.dump()};
}

HttpResponse ErrorResponse(const absl::Status& status) {
  ErrorKind kind = GetErrorKind(status);
  return JsonResponse(HttpStatusFor(kind),
                      {{"error_kind", WireName(kind)},
                       {"detail", std::string(status.message())}});
}

absl::StatusOr<nlohmann::json> ParseBody(const HttpRequest& request) {
  nlohmann::json body = nlohmann::json::parse(request.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return MakeError(ErrorKind::kBadRequest,
                     "request body must be a JSON object");
  }
  return body;
}

}  // namespace

int HttpStatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseError:
    case ErrorKind::kTypeError:
    case ErrorKind::kUnboundVariable:
    case ErrorKind::kSensitivityExceeded:
    case ErrorKind::kInfiniteCost:
    case ErrorKind::kNonConstantCost:
    case ErrorKind::kNotPrivFn:
    case ErrorKind::kSchemaMismatch:
    case ErrorKind::kSchemaError:
    case ErrorKind::kMalformedEnvelope:
    case ErrorKind::kDecryptError:
    case ErrorKind::kBadRequest:
    case ErrorKind::kDomainError:
      return 400;
    case ErrorKind::kBudgetExhausted:
      return 403;
    case ErrorKind::kEnclaveUnavailable:
      return 503;
    default:
      return 500;
  }
}

Gateway::Gateway(std::shared_ptr<EnclaveChannel> channel,
                 std::shared_ptr<RecordLog> log)
    : channel_(std::move(channel)), log_(std::move(log)) {}

const std::vector<Route>& Gateway::Routes() {
  static const std::vector<Route>* routes = new std::vector<Route>{
      {"GET", "/epsilon"},    {"GET", "/delta"},  {"GET", "/attest"},
      {"GET", "/pubkeypem"},  {"POST", "/insert"}, {"POST", "/query"},
  };
  return *routes;
}

absl::StatusOr<nlohmann::json> Gateway::Call(FrameKind kind,
                                             const nlohmann::json& payload) {
  BoundaryFrame request{next_id_.fetch_add(1), kind, payload.dump()};
  absl::StatusOr<BoundaryFrame> response = channel_->Relay(request);
  if (!response.ok()) return response.status();
  if (response->request_id != request.request_id ||
      response->kind != request.kind) {
    return MakeError(ErrorKind::kProtocolError,
                     "enclave response does not match request");
  }
  return ParseResponsePayload(response->payload);
}

HttpResponse Gateway::Budget(absl::string_view component) {
  absl::StatusOr<nlohmann::json> body =
      Call(FrameKind::kBudget, {{"component", component}});
  if (!body.ok()) return ErrorResponse(body.status());
  return JsonResponse(200, *body);
}

HttpResponse Gateway::Attest(const HttpRequest& request) {
  auto it = request.params.find("nonce");
  if (it == request.params.end()) {
    return ErrorResponse(
        MakeError(ErrorKind::kBadRequest, "missing nonce parameter"));
  }
  absl::StatusOr<nlohmann::json> body =
      Call(FrameKind::kAttest, {{"nonce", it->second}});
  if (!body.ok()) return ErrorResponse(body.status());
  return JsonResponse(200, *body);
}

HttpResponse Gateway::PubKey() {
  absl::StatusOr<nlohmann::json> body =
      Call(FrameKind::kPubKey, nlohmann::json::object());
  if (!body.ok()) return ErrorResponse(body.status());
  if (!body->contains("pem") || !(*body)["pem"].is_string()) {
    return ErrorResponse(
        MakeError(ErrorKind::kProtocolError, "enclave sent no key"));
  }
  return HttpResponse{200, "text/plain", (*body)["pem"].get<std::string>()};
}

HttpResponse Gateway::Insert(const HttpRequest& request) {
  absl::StatusOr<nlohmann::json> body = ParseBody(request);
  if (!body.ok()) return ErrorResponse(body.status());
  auto it = body->find("envelope");
  if (it == body->end()) {
    return ErrorResponse(
        MakeError(ErrorKind::kMalformedEnvelope, "missing envelope"));
  }
  absl::StatusOr<Envelope> envelope = EnvelopeFromJson(*it);
  if (!envelope.ok()) return ErrorResponse(envelope.status());
  absl::StatusOr<nlohmann::json> reply =
      Call(FrameKind::kInsert, {{"envelope", EnvelopeToJson(*envelope)}});
  if (!reply.ok()) return ErrorResponse(reply.status());
  if (log_ != nullptr) {
    absl::StatusOr<size_t> index = log_->Append(*envelope);
    if (!index.ok()) return ErrorResponse(index.status());
  }
  return JsonResponse(200,
                      {{"status", "ok"}, {"count", reply->value("count", 0)}});
}

HttpResponse Gateway::Query(const HttpRequest& request) {
  absl::StatusOr<nlohmann::json> body = ParseBody(request);
  if (!body.ok()) return ErrorResponse(body.status());
  auto it = body->find("program");
  if (it == body->end() || !it->is_string()) {
    return ErrorResponse(
        MakeError(ErrorKind::kBadRequest, "missing string field 'program'"));
  }
  absl::StatusOr<nlohmann::json> reply =
      Call(FrameKind::kQuery, {{"program", *it}});
  if (!reply.ok()) return ErrorResponse(reply.status());
  return JsonResponse(200, *reply);
}

HttpResponse Gateway::Handle(const HttpRequest& request) {
  bool path_known = false;
  for (const Route& route : Routes()) {
    if (route.path != request.path) continue;
    path_known = true;
    if (route.method != request.method) continue;
    if (request.path == "/epsilon") return Budget("epsilon");
    if (request.path == "/delta") return Budget("delta");
    if (request.path == "/attest") return Attest(request);
    if (request.path == "/pubkeypem") return PubKey();
    if (request.path == "/insert") return Insert(request);
    if (request.path == "/query") return Query(request);
  }
  nlohmann::json error = {{"error_kind", "BadRequest"}};
  if (path_known) {
    error["detail"] = absl::StrCat(request.method, " not allowed on ",
                                   request.path);
    return JsonResponse(405, error);
  }
  error["detail"] = absl::StrCat("no such endpoint: ", request.path);
  return JsonResponse(404, error);
}

void Gateway::Install(httplib::Server& server) {
  auto adapt = [this](const httplib::Request& in, httplib::Response& out) {
    HttpRequest request{in.method, in.path, {}, in.body};
    for (const auto& [key, value] : in.params) request.params[key] = value;
    HttpResponse response = Handle(request);
    out.status = response.status;
    out.set_content(response.body, response.content_type);
  };
  // Every method is routed for known paths so that Handle can answer 405.
  std::set<std::string> paths;
  for (const Route& route : Routes()) paths.emplace(route.path);
  for (const std::string& path : paths) {
    server.Get(path, adapt);
    server.Post(path, adapt);
    server.Put(path, adapt);
    server.Delete(path, adapt);
    server.Patch(path, adapt);
  }
}

GatewayHttpServer::GatewayHttpServer(std::shared_ptr<Gateway> gateway)
    : gateway_(std::move(gateway)),
      server_(std::make_unique<httplib::Server>()) {
  gateway_->Install(*server_);
}

GatewayHttpServer::~GatewayHttpServer() { Stop(); }

absl::StatusOr<int> GatewayHttpServer::Start(const std::string& host,
                                             int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("cannot bind ", host, ":", port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void GatewayHttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace duet
