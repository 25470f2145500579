#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "awegec/error.hpp"
#include "awegec/service.hpp"

namespace awegec::service {

namespace fs = std::filesystem;

DocumentStore::DocumentStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create store directory " + dir_.string() + ": " + ec.message());
}

void DocumentStore::put(const StoredRecord& record) const {
  nlohmann::json j = {{"submission", record.submission}};
  j["feedback"] = record.feedback ? nlohmann::json(*record.feedback) : nlohmann::json(nullptr);
  const std::string body = j.dump(2) + "\n";

  const fs::path final_path = dir_ / (record.submission.id + ".json");
  const fs::path tmp_path = dir_ / (record.submission.id + ".json.tmp");
  std::FILE* f = std::fopen(tmp_path.c_str(), "wb");
  if (!f) throw Error(ErrorCode::Io, "cannot write " + tmp_path.string());
  const bool ok = std::fwrite(body.data(), 1, body.size(), f) == body.size() && std::fflush(f) == 0 &&
                  ::fsync(::fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error(ErrorCode::Io, "short write to " + tmp_path.string());
  std::error_code ec;
  fs::rename(tmp_path, final_path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename into " + final_path.string() + ": " + ec.message());
}

std::vector<StoredRecord> DocumentStore::load_all() const {
  std::vector<StoredRecord> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      const auto j = nlohmann::json::parse(ss.str());
      StoredRecord r;
      r.submission = j.at("submission").get<Submission>();
      if (!j.at("feedback").is_null()) r.feedback = j.at("feedback").get<FeedbackDocument>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Io, "corrupt store document " + entry.path().string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace awegec::service
