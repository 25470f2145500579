#include "awegec/http_api.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace awegec::service {

using nlohmann::json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::NotYetAvailable:
    case ErrorCode::NotProcessed:
    case ErrorCode::AlreadyReleased:
    case ErrorCode::InvalidTransition:
    case ErrorCode::ReviewDisabled:
      return 409;
    case ErrorCode::EmptyText:
    case ErrorCode::UnknownPrompt:
    case ErrorCode::InvalidArgument:
      return 400;
    default:
      return 500;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status_for(e.code()), {{"code", to_string(e.code())}, {"message", e.what()}});
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const json::exception& e) {
      send_json(res, 400, {{"code", "InvalidArgument"}, {"message", e.what()}});
    }
  };
}

json parse_body(const httplib::Request& req) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
  return body;
}

json brief(const Submission& s) {
  json j = s;
  j.erase("text");
  return j;
}

}  // namespace

HttpApi::HttpApi(Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

HttpApi::~HttpApi() { stop(); }

void HttpApi::install_routes() {
  auto& svc = service_;
  server_->Post("/api/submissions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    auto body = parse_body(req);
    auto s = svc.submit(body.value("learner_id", std::string{}), body.at("prompt_id").get<int>(),
                        body.at("text").get<std::string>());
    send_json(res, 201, brief(s));
  }));
  server_->Get(R"(/api/submissions/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, brief(svc.status(req.matches[1])));
  }));
  server_->Post(R"(/api/submissions/([^/]+)/resubmit)",
                guarded([&svc](const httplib::Request& req, httplib::Response& res) {
                  auto body = parse_body(req);
                  send_json(res, 200, brief(svc.resubmit(req.matches[1], body.at("text").get<std::string>())));
                }));
  server_->Get(R"(/api/submissions/([^/]+)/feedback)",
               guarded([&svc](const httplib::Request& req, httplib::Response& res) {
                 const auto role = role_from_string(req.get_param_value("role"));
                 send_json(res, 200, json(svc.feedback(req.matches[1], role)));
               }));
  server_->Get("/api/review/queue", guarded([&svc](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& s : svc.review_queue()) out.push_back(brief(s));
    send_json(res, 200, out);
  }));
  server_->Post(R"(/api/review/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    ReviewRecord record = parse_body(req).get<ReviewRecord>();
    send_json(res, 200, json(svc.review(req.matches[1], std::move(record))));
  }));
}

bool HttpApi::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpApi::bind_any(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpApi::listen_after_bind() { return server_->listen_after_bind(); }

void HttpApi::stop() {
  if (server_) server_->stop();
}

void HttpApi::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace awegec::service
