#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "awegec/align.hpp"
#include "awegec/corpus/essays.hpp"
#include "awegec/error.hpp"
#include "awegec/service.hpp"

namespace awegec::service {

std::string to_string(Status s) {
  switch (s) {
    case Status::Received: return "received";
    case Status::Processed: return "processed";
    case Status::Released: return "released";
    case Status::Returned: return "returned";
  }
  return "received";
}

Status status_from_string(std::string_view s) {
  if (s == "received") return Status::Received;
  if (s == "processed") return Status::Processed;
  if (s == "released") return Status::Released;
  if (s == "returned") return Status::Returned;
  throw Error(ErrorCode::InvalidArgument, "unknown status '" + std::string(s) + "'");
}

bool transition_allowed(Status from, Status to) {
  switch (from) {
    case Status::Received: return to == Status::Processed;
    case Status::Processed: return to == Status::Released || to == Status::Returned;
    case Status::Returned: return to == Status::Received;
    case Status::Released: return false;
  }
  return false;
}

Role role_from_string(std::string_view s) {
  if (s == "learner" || s.empty()) return Role::Learner;
  if (s == "teacher") return Role::Teacher;
  throw Error(ErrorCode::InvalidArgument, "unknown role '" + std::string(s) + "'");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  char buf[40];
  const auto n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof buf - n, ".%03dZ", static_cast<int>(ms));
  return buf;
}

std::vector<Segment> build_segments(const std::vector<SentenceFeedback>& sentences) {
  std::vector<Segment> out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto& sf = sentences[s];
    std::size_t pos = 0;
    for (std::size_t e = 0; e < sf.edits.size(); ++e) {
      const auto& edit = sf.edits[e];
      for (; pos < edit.span.start; ++pos) out.push_back({SegmentKind::Plain, sf.source[pos], s, -1});
      for (; pos < edit.span.end; ++pos)
        out.push_back({SegmentKind::Deleted, sf.source[pos], s, static_cast<int>(e)});
      for (const auto& r : edit.replacement) out.push_back({SegmentKind::Inserted, r, s, static_cast<int>(e)});
    }
    for (; pos < sf.source.size(); ++pos) out.push_back({SegmentKind::Plain, sf.source[pos], s, -1});
  }
  return out;
}

bool reconstruction_laws_hold(const FeedbackDocument& doc) {
  std::vector<std::string> source, corrected, from_source, from_corrected;
  for (const auto& s : doc.sentences) {
    source.insert(source.end(), s.source.begin(), s.source.end());
    corrected.insert(corrected.end(), s.corrected.begin(), s.corrected.end());
  }
  for (const auto& seg : doc.segments) {
    if (seg.kind != SegmentKind::Inserted) from_source.push_back(seg.text);
    if (seg.kind != SegmentKind::Deleted) from_corrected.push_back(seg.text);
  }
  return source == from_source && corrected == from_corrected;
}

FeedbackDocument apply_review(FeedbackDocument doc, ReviewRecord record) {
  std::vector<std::vector<bool>> rejected(doc.sentences.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) rejected[s].assign(doc.sentences[s].edits.size(), false);
  for (const auto& d : record.decisions) {
    if (d.sentence >= doc.sentences.size() || d.edit >= doc.sentences[d.sentence].edits.size())
      throw Error(ErrorCode::InvalidArgument, "review refers to unknown edit (" + std::to_string(d.sentence) + ", " +
                                                  std::to_string(d.edit) + ")");
    rejected[d.sentence][d.edit] = !d.accept;
  }
  const auto& names = corpus::rubric_names();
  for (const auto& [rubric, value] : record.overrides) {
    if (std::find(names.begin(), names.end(), rubric) == names.end())
      throw Error(ErrorCode::InvalidArgument, "unknown rubric '" + rubric + "'");
    if (!(value >= 0.0 && value <= 100.0))
      throw Error(ErrorCode::InvalidArgument, "override for " + rubric + " outside [0, 100]");
  }

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    auto& sf = doc.sentences[s];
    std::vector<Edit> kept;
    for (std::size_t e = 0; e < sf.edits.size(); ++e)
      if (!rejected[s][e]) kept.push_back(sf.edits[e]);
    sf.edits = std::move(kept);
    sf.corrected = align::apply_edits(sf.source, sf.edits);
  }
  doc.segments = build_segments(doc.sentences);
  for (const auto& [rubric, value] : record.overrides) {
    if (rubric == "overall") doc.scores.overall = value;
    else doc.scores.rubrics[rubric] = value;
  }
  if (record.decided_at.empty()) record.decided_at = utc_timestamp();
  doc.review = std::move(record);
  return doc;
}

namespace {

std::string kind_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::Plain: return "plain";
    case SegmentKind::Deleted: return "deleted";
    case SegmentKind::Inserted: return "inserted";
  }
  return "plain";
}

SegmentKind kind_from(const std::string& s) {
  if (s == "plain") return SegmentKind::Plain;
  if (s == "deleted") return SegmentKind::Deleted;
  if (s == "inserted") return SegmentKind::Inserted;
  throw Error(ErrorCode::InvalidArgument, "unknown segment kind '" + s + "'");
}

nlohmann::json edit_json(const Edit& e) {
  return {{"start", e.span.start}, {"end", e.span.end}, {"replacement", e.replacement}, {"type", e.etype}};
}

Edit edit_from(const nlohmann::json& j) {
  Edit e;
  e.span = {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()};
  e.replacement = j.at("replacement").get<std::vector<std::string>>();
  e.etype = j.value("type", std::string{});
  return e;
}

}  // namespace

void to_json(nlohmann::json& j, const Submission& s) {
  j = {{"id", s.id},
       {"learner_id", s.learner_id},
       {"prompt_id", s.prompt_id},
       {"text", s.text},
       {"created_at", s.created_at},
       {"status", to_string(s.status)}};
  j["error"] = s.error ? nlohmann::json(*s.error) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, Submission& s) {
  s.id = j.at("id").get<std::string>();
  s.learner_id = j.at("learner_id").get<std::string>();
  s.prompt_id = j.at("prompt_id").get<int>();
  s.text = j.at("text").get<std::string>();
  s.created_at = j.at("created_at").get<std::string>();
  s.status = status_from_string(j.at("status").get<std::string>());
  if (j.contains("error") && !j.at("error").is_null()) s.error = j.at("error").get<std::string>();
  else s.error.reset();
}

void to_json(nlohmann::json& j, const ReviewRecord& r) {
  nlohmann::json decisions = nlohmann::json::array();
  for (const auto& d : r.decisions) decisions.push_back({{"sentence", d.sentence}, {"edit", d.edit}, {"accept", d.accept}});
  j = {{"reviewer_id", r.reviewer_id},
       {"edits", decisions},
       {"overrides", r.overrides},
       {"note", r.note},
       {"decided_at", r.decided_at},
       {"action", r.action == ReviewAction::Release ? "release" : "return"}};
}

void from_json(const nlohmann::json& j, ReviewRecord& r) {
  r.reviewer_id = j.value("reviewer_id", std::string{});
  r.decisions.clear();
  if (j.contains("edits"))
    for (const auto& d : j.at("edits"))
      r.decisions.push_back({d.at("sentence").get<std::size_t>(), d.at("edit").get<std::size_t>(),
                             d.value("accept", true)});
  r.overrides = j.value("overrides", std::map<std::string, double>{});
  r.note = j.value("note", std::string{});
  r.decided_at = j.value("decided_at", std::string{});
  const auto action = j.value("action", std::string("release"));
  if (action == "release") r.action = ReviewAction::Release;
  else if (action == "return") r.action = ReviewAction::Return;
  else throw Error(ErrorCode::InvalidArgument, "unknown review action '" + action + "'");
}

void to_json(nlohmann::json& j, const FeedbackDocument& d) {
  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : d.sentences) {
    nlohmann::json edits = nlohmann::json::array();
    for (const auto& e : s.edits) edits.push_back(edit_json(e));
    sentences.push_back({{"source", s.source}, {"corrected", s.corrected}, {"edits", edits}});
  }
  nlohmann::json scores = {{"overall", d.scores.overall}};
  for (const auto& [k, v] : d.scores.rubrics) scores[k] = v;
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& seg : d.segments)
    segments.push_back({{"kind", kind_name(seg.kind)}, {"text", seg.text}, {"sentence", seg.sentence}, {"edit", seg.edit}});
  j = {{"submission_id", d.submission_id}, {"sentences", sentences}, {"scores", scores}, {"segments", segments}};
  j["review"] = d.review ? nlohmann::json(*d.review) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, FeedbackDocument& d) {
  d.submission_id = j.at("submission_id").get<std::string>();
  d.sentences.clear();
  for (const auto& s : j.at("sentences")) {
    SentenceFeedback sf;
    sf.source = s.at("source").get<std::vector<std::string>>();
    sf.corrected = s.at("corrected").get<std::vector<std::string>>();
    for (const auto& e : s.at("edits")) sf.edits.push_back(edit_from(e));
    d.sentences.push_back(std::move(sf));
  }
  d.scores = {};
  for (const auto& [k, v] : j.at("scores").items()) {
    if (k == "overall") d.scores.overall = v.get<double>();
    else d.scores.rubrics[k] = v.get<double>();
  }
  d.segments.clear();
  for (const auto& seg : j.at("segments"))
    d.segments.push_back({kind_from(seg.at("kind").get<std::string>()), seg.at("text").get<std::string>(),
                          seg.at("sentence").get<std::size_t>(), seg.at("edit").get<int>()});
  if (j.contains("review") && !j.at("review").is_null()) d.review = j.at("review").get<ReviewRecord>();
  else d.review.reset();
}

}  // namespace awegec::service
