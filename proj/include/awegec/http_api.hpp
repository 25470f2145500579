#pragma once

#include <memory>
#include <string>

#include "awegec/error.hpp"
#include "awegec/service.hpp"

namespace httplib {
class Server;
}

namespace awegec::service {

// JSON over HTTP:
//   POST /api/submissions                 {learner_id, prompt_id, text} -> {id, status}
//   GET  /api/submissions/{id}            -> submission status
//   POST /api/submissions/{id}/resubmit   {text} -> {id, status}
//   GET  /api/submissions/{id}/feedback   ?role=learner|teacher -> FeedbackDocument
//   GET  /api/review/queue                -> [submission]
//   POST /api/review/{id}                 ReviewRecord -> FeedbackDocument
// Errors are {code, message} with a 4xx status.
class HttpApi {
 public:
  explicit HttpApi(Service& service);
  ~HttpApi();

  // Binds and serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  // Binds to an ephemeral port; returns it, or -1.
  int bind_any(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  void install_routes();

  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

int http_status_for(ErrorCode code);

}  // namespace awegec::service
