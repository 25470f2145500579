#include <future>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "awegec/align.hpp"
#include "awegec/corpus/tokenize.hpp"
#include "awegec/corrector.hpp"
#include "awegec/error.hpp"

namespace awegec::corrector {
namespace {

std::vector<std::string> post_batch(const std::vector<std::string>& texts, const ExternalConfig& config) {
  httplib::Client client(config.base_url);
  const auto sec = config.timeout_ms / 1000;
  const auto usec = (config.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  httplib::Headers headers;
  if (!config.auth_header.empty()) headers.emplace(config.auth_header, config.auth_token);
  const nlohmann::json request = {{"sentences", texts}};
  auto res = client.Post(config.path, headers, request.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    const std::string what = httplib::to_string(err);
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read || err == httplib::Error::Write)
      throw Error(ErrorCode::Timeout, "external backend did not answer within " +
                                          std::to_string(config.timeout_ms) + " ms (" + what + ")");
    throw Error(ErrorCode::BackendUnavailable, "external backend unreachable: " + what);
  }
  if (res->status != 200) throw Error(ErrorCode::BadResponse, "HTTP status " + std::to_string(res->status));

  std::vector<std::string> out;
  try {
    const auto body = nlohmann::json::parse(res->body);
    const auto& corrections = body.at("corrections");
    if (!corrections.is_array()) throw Error(ErrorCode::BadResponse, "'corrections' is not an array");
    for (const auto& c : corrections) out.push_back(c.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadResponse, e.what());
  }
  if (out.size() != texts.size())
    throw Error(ErrorCode::LengthMismatch, "sent " + std::to_string(texts.size()) + " sentences, received " +
                                               std::to_string(out.size()));
  return out;
}

}  // namespace

std::vector<CorrectionResult> correct_external(const std::vector<TokenizedSentence>& sentences,
                                               const ExternalConfig& config, const Dictionary& dictionary) {
  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
  const std::size_t in_flight = std::max<std::size_t>(1, config.max_in_flight);

  std::vector<std::vector<std::string>> batches;
  for (std::size_t i = 0; i < sentences.size(); i += batch) {
    std::vector<std::string> texts;
    for (std::size_t k = i; k < std::min(sentences.size(), i + batch); ++k) texts.push_back(sentences[k].text);
    batches.push_back(std::move(texts));
  }

  std::vector<std::string> returned;
  for (std::size_t wave = 0; wave < batches.size(); wave += in_flight) {
    std::vector<std::future<std::vector<std::string>>> pending;
    for (std::size_t b = wave; b < std::min(batches.size(), wave + in_flight); ++b)
      pending.push_back(std::async(std::launch::async, post_batch, std::cref(batches[b]), std::cref(config)));
    std::vector<std::vector<std::string>> done;
    for (auto& f : pending) done.push_back(f.get());
    for (auto& d : done) returned.insert(returned.end(), d.begin(), d.end());
  }

  std::vector<CorrectionResult> results;
  results.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    CorrectionResult r;
    r.source = sentences[i];
    r.corrected = corpus::tokenize(returned[i]);
    r.edits = align::diff(r.source, r.corrected, dictionary);
    r.backend = "external";
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace awegec::corrector
