#pragma once

#include <atomic>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "awegec/corpus/noise.hpp"
#include "awegec/corpus/tokenize.hpp"
#include "awegec/corrector.hpp"
#include "awegec/features.hpp"
#include "awegec/scorer.hpp"
#include "awegec/types.hpp"

namespace awegec::service {

enum class Status { Received, Processed, Released, Returned };
std::string to_string(Status s);
Status status_from_string(std::string_view s);
// received->processed, processed->released, processed->returned,
// returned->received.
bool transition_allowed(Status from, Status to);

enum class Role { Learner, Teacher };
Role role_from_string(std::string_view s);

struct Submission {
  std::string id;
  std::string learner_id;
  int prompt_id = 0;
  std::string text;
  std::string created_at;
  Status status = Status::Received;
  std::optional<std::string> error;

  friend bool operator==(const Submission&, const Submission&) = default;
};

enum class SegmentKind { Plain, Deleted, Inserted };

struct Segment {
  SegmentKind kind = SegmentKind::Plain;
  std::string text;  // one token
  std::size_t sentence = 0;
  int edit = -1;  // index into the sentence's edits, -1 for plain

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SentenceFeedback {
  std::vector<std::string> source;
  std::vector<Edit> edits;
  std::vector<std::string> corrected;

  friend bool operator==(const SentenceFeedback&, const SentenceFeedback&) = default;
};

struct EditDecision {
  std::size_t sentence = 0;
  std::size_t edit = 0;
  bool accept = true;

  friend bool operator==(const EditDecision&, const EditDecision&) = default;
};

enum class ReviewAction { Release, Return };

struct ReviewRecord {
  std::string reviewer_id;
  std::vector<EditDecision> decisions;
  std::map<std::string, double> overrides;
  std::string note;
  std::string decided_at;
  ReviewAction action = ReviewAction::Release;

  friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

struct FeedbackDocument {
  std::string submission_id;
  std::vector<SentenceFeedback> sentences;
  scorer::RubricScoreSet scores;
  std::vector<Segment> segments;
  std::optional<ReviewRecord> review;

  friend bool operator==(const FeedbackDocument&, const FeedbackDocument&) = default;
};

// Token segments in reading order: plain tokens, and for each edit its
// deleted source tokens followed by its inserted replacement tokens.
std::vector<Segment> build_segments(const std::vector<SentenceFeedback>& sentences);

// plain+deleted reproduce the source tokens and plain+inserted the corrected
// tokens.
bool reconstruction_laws_hold(const FeedbackDocument& doc);

// Removes rejected edits, recomputes corrected tokens and segments, applies
// score overrides. Errors: InvalidArgument for unknown edits, rubrics or
// overrides outside [0, 100].
FeedbackDocument apply_review(FeedbackDocument doc, ReviewRecord record);

void to_json(nlohmann::json& j, const Submission& s);
void from_json(const nlohmann::json& j, Submission& s);
void to_json(nlohmann::json& j, const FeedbackDocument& d);
void from_json(const nlohmann::json& j, FeedbackDocument& d);
void to_json(nlohmann::json& j, const ReviewRecord& r);
void from_json(const nlohmann::json& j, ReviewRecord& r);

// GEC + AWE over one essay. Immutable after construction.
class Pipeline {
 public:
  Pipeline(corrector::Corrector corrector, features::NgramModel lm, scorer::ScoreModel model,
           corpus::NamePool pool = corpus::NamePool::defaults());

  FeedbackDocument run(const std::string& submission_id, const std::string& text) const;

 private:
  corrector::Corrector corrector_;
  features::NgramModel lm_;
  scorer::ScoreModel model_;
  corpus::NamePool pool_;
};

struct StoredRecord {
  Submission submission;
  std::optional<FeedbackDocument> feedback;
};

// One JSON document per submission under `dir`, replaced atomically with a
// write-to-temp then rename.
class DocumentStore {
 public:
  explicit DocumentStore(std::filesystem::path dir);

  void put(const StoredRecord& record) const;
  std::vector<StoredRecord> load_all() const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct ServiceConfig {
  std::filesystem::path store_dir = "awegec-store";
  bool review_mode = false;
  std::set<int> prompts = {1, 2, 3, 4, 5, 6, 7, 8};
};

// Submission lifecycle. Writes go through one mutex; a single background
// worker processes received submissions in arrival order.
class Service {
 public:
  Service(ServiceConfig config, std::shared_ptr<const Pipeline> pipeline);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Errors: EmptyText, UnknownPrompt.
  Submission submit(const std::string& learner_id, int prompt_id, const std::string& text);
  // returned -> received with new text. Errors: NotFound, InvalidTransition, EmptyText.
  Submission resubmit(const std::string& id, const std::string& text);
  Submission status(const std::string& id) const;
  // Errors: NotFound, NotYetAvailable.
  FeedbackDocument feedback(const std::string& id, Role role) const;
  std::vector<Submission> review_queue() const;
  // Errors: NotFound, ReviewDisabled, NotProcessed, AlreadyReleased.
  FeedbackDocument review(const std::string& id, ReviewRecord record);

  // Blocks until the work queue is empty and the worker is idle.
  void wait_idle();
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  void worker_loop();
  void persist(const StoredRecord& record);
  std::string new_id();

  ServiceConfig config_;
  std::shared_ptr<const Pipeline> pipeline_;
  DocumentStore store_;

  mutable std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable idle_cv_;
  std::map<std::string, StoredRecord> records_;
  std::deque<std::string> queue_;
  bool busy_ = false;
  bool stopping_ = false;
  std::uint64_t counter_ = 0;
  std::thread worker_;
};

std::string utc_timestamp();

}  // namespace awegec::service
