#include "contam/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "contam/error.hpp"
#include "contam/hash.hpp"

namespace contam {

using nlohmann::json;

ShingleSet shingle(std::span<const std::string> words, uint32_t k, uint64_t seed) {
  if (k == 0) throw InputError("shingle width k must be >= 1");
  ShingleSet set;
  set.k = k;
  set.seed = seed;
  if (words.size() < k) return set;
  set.hashes.reserve(words.size() - k + 1);
  for (size_t i = 0; i + k <= words.size(); i++) {
    ByteHasher h(seed);
    for (size_t j = 0; j < k; j++) {
      if (j > 0) h.update_byte(' ');
      h.update(words[i + j]);
    }
    set.hashes.push_back(h.digest());
  }
  std::sort(set.hashes.begin(), set.hashes.end());
  set.hashes.erase(std::unique(set.hashes.begin(), set.hashes.end()),
                   set.hashes.end());
  return set;
}

namespace {

json parse_line(const std::string& line, const std::string& path, long lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError("malformed JSON record", path, lineno);
  }
  return j;
}

std::string require_string(const json& j, const char* field,
                           const std::string& path, long lineno) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw InputError(std::string("missing or non-string field '") + field + "'",
                     path, lineno);
  }
  return it->get<std::string>();
}

std::string optional_string(const json& j, const char* field) {
  auto it = j.find(field);
  if (it != j.end() && it->is_string()) return it->get<std::string>();
  return "";
}

}  // namespace

void load_documents(const std::string& path,
                    const std::function<void(Document&&)>& sink) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file: " + path, path);
  std::unordered_set<std::string> seen_ids;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    Document doc;
    doc.doc_id = require_string(j, "id", path, lineno);
    doc.text = require_string(j, "text", path, lineno);
    doc.source = optional_string(j, "source");
    if (!seen_ids.insert(doc.doc_id).second) {
      throw InputError("duplicate document id '" + doc.doc_id + "'", path,
                       lineno);
    }
    sink(std::move(doc));
  }
}

std::vector<Document> load_documents(const std::string& path) {
  std::vector<Document> docs;
  load_documents(path, [&](Document&& d) { docs.push_back(std::move(d)); });
  return docs;
}

std::vector<EvalUtterance> load_eval_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open eval-set file: " + path, path);
  std::vector<EvalUtterance> utts;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    EvalUtterance u;
    u.utt_id = require_string(j, "utt_id", path, lineno);
    u.transcript = require_string(j, "transcript", path, lineno);
    u.work_id = optional_string(j, "work_id");
    u.split = optional_string(j, "split");
    if (u.transcript.empty()) {
      throw InputError("empty transcript for utterance '" + u.utt_id + "'",
                       path, lineno);
    }
    if (!seen_ids.insert(u.utt_id).second) {
      throw InputError("duplicate utterance id '" + u.utt_id + "'", path,
                       lineno);
    }
    utts.push_back(std::move(u));
  }
  return utts;
}

}  // namespace contam
