#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "awegec/error.hpp"
#include "awegec/service.hpp"
#include "awegec/text.hpp"

namespace awegec::service {

Service::Service(ServiceConfig config, std::shared_ptr<const Pipeline> pipeline)
    : config_(std::move(config)), pipeline_(std::move(pipeline)), store_(config_.store_dir) {
  auto loaded = store_.load_all();
  std::sort(loaded.begin(), loaded.end(), [](const StoredRecord& a, const StoredRecord& b) {
    return std::tie(a.submission.created_at, a.submission.id) < std::tie(b.submission.created_at, b.submission.id);
  });
  for (auto& r : loaded) {
    if (r.submission.status == Status::Received && !r.submission.error) queue_.push_back(r.submission.id);
    records_.emplace(r.submission.id, std::move(r));
  }
  worker_ = std::thread([this] { worker_loop(); });
}

Service::~Service() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  work_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::string Service::new_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  for (;;) {
    std::ostringstream os;
    os << "sub-" << std::hex << std::setw(12) << std::setfill('0') << (rng() & 0xFFFFFFFFFFFFull) << "-" << std::dec
       << ++counter_;
    if (!records_.count(os.str())) return os.str();
  }
}

void Service::persist(const StoredRecord& record) { store_.put(record); }

Submission Service::submit(const std::string& learner_id, int prompt_id, const std::string& text) {
  if (text::trim(text).empty()) throw Error(ErrorCode::EmptyText, "submission text is empty");
  if (!config_.prompts.count(prompt_id))
    throw Error(ErrorCode::UnknownPrompt, "prompt " + std::to_string(prompt_id) + " is not configured");
  Submission s;
  {
    std::lock_guard lock(mu_);
    s.id = new_id();
    s.learner_id = learner_id;
    s.prompt_id = prompt_id;
    s.text = text;
    s.created_at = utc_timestamp();
    s.status = Status::Received;
    StoredRecord record{s, std::nullopt};
    persist(record);
    records_.emplace(s.id, std::move(record));
    queue_.push_back(s.id);
  }
  work_cv_.notify_one();
  return s;
}

Submission Service::resubmit(const std::string& id, const std::string& text) {
  if (text::trim(text).empty()) throw Error(ErrorCode::EmptyText, "submission text is empty");
  Submission s;
  {
    std::lock_guard lock(mu_);
    auto it = records_.find(id);
    if (it == records_.end()) throw Error(ErrorCode::NotFound, "no submission " + id);
    if (!transition_allowed(it->second.submission.status, Status::Received))
      throw Error(ErrorCode::InvalidTransition,
                  "cannot resubmit a submission in status " + to_string(it->second.submission.status));
    StoredRecord updated = it->second;
    updated.submission.text = text;
    updated.submission.status = Status::Received;
    updated.submission.error.reset();
    updated.feedback.reset();
    persist(updated);
    it->second = std::move(updated);
    s = it->second.submission;
    queue_.push_back(id);
  }
  work_cv_.notify_one();
  return s;
}

Submission Service::status(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::NotFound, "no submission " + id);
  return it->second.submission;
}

FeedbackDocument Service::feedback(const std::string& id, Role role) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::NotFound, "no submission " + id);
  const auto status = it->second.submission.status;
  bool visible = status == Status::Released;
  if (status == Status::Processed) visible = role == Role::Teacher || !config_.review_mode;
  if (!visible || !it->second.feedback)
    throw Error(ErrorCode::NotYetAvailable, "submission " + id + " is " + to_string(status));
  return *it->second.feedback;
}

std::vector<Submission> Service::review_queue() const {
  std::lock_guard lock(mu_);
  std::vector<Submission> out;
  for (const auto& [id, r] : records_)
    if (r.submission.status == Status::Processed) out.push_back(r.submission);
  std::sort(out.begin(), out.end(), [](const Submission& a, const Submission& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  return out;
}

FeedbackDocument Service::review(const std::string& id, ReviewRecord record) {
  std::lock_guard lock(mu_);
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::NotFound, "no submission " + id);
  if (!config_.review_mode) throw Error(ErrorCode::ReviewDisabled, "review mode is disabled");
  const auto status = it->second.submission.status;
  if (status == Status::Released) throw Error(ErrorCode::AlreadyReleased, "submission " + id + " was released");
  if (status != Status::Processed || !it->second.feedback)
    throw Error(ErrorCode::NotProcessed, "submission " + id + " is " + to_string(status));

  const Status next = record.action == ReviewAction::Release ? Status::Released : Status::Returned;
  StoredRecord updated = it->second;
  updated.feedback = apply_review(*it->second.feedback, std::move(record));
  updated.submission.status = next;
  persist(updated);
  it->second = std::move(updated);
  return *it->second.feedback;
}

void Service::wait_idle() {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [this] { return queue_.empty() && !busy_; });
}

void Service::worker_loop() {
  std::unique_lock lock(mu_);
  for (;;) {
    work_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
    if (stopping_) return;
    const std::string id = queue_.front();
    queue_.pop_front();
    auto it = records_.find(id);
    if (it == records_.end() || it->second.submission.status != Status::Received) {
      if (queue_.empty()) idle_cv_.notify_all();
      continue;
    }
    const std::string text = it->second.submission.text;
    busy_ = true;
    lock.unlock();

    std::optional<FeedbackDocument> doc;
    std::string failure;
    try {
      doc = pipeline_->run(id, text);
    } catch (const std::exception& e) {
      failure = e.what();
    }

    lock.lock();
    busy_ = false;
    it = records_.find(id);
    if (it != records_.end() && it->second.submission.status == Status::Received && it->second.submission.text == text) {
      StoredRecord updated = it->second;
      if (doc) {
        updated.submission.status = Status::Processed;
        updated.submission.error.reset();
        updated.feedback = std::move(doc);
      } else {
        updated.submission.error = failure;
      }
      try {
        persist(updated);
        it->second = std::move(updated);
      } catch (const Error& e) {
        it->second.submission.error = e.what();
      }
    }
    if (queue_.empty()) idle_cv_.notify_all();
  }
}

}  // namespace awegec::service
