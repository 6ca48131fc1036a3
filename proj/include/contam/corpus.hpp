#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "contam/text.hpp"

namespace contam {

// One corpus record, as streamed from a JSONL file.
struct Document {
  std::string doc_id;
  std::string source;
  std::string text;
};

// One evaluation-set sentence. work_id links to the source work when the
// eval set carries that metadata.
struct EvalUtterance {
  std::string utt_id;
  std::string transcript;
  std::string work_id;
  std::string split;
};

// Set of 64-bit fingerprints of k-word windows over normalized text.
// hashes is sorted and deduplicated; a text with fewer than k words yields
// an empty (degenerate) set.
struct ShingleSet {
  uint32_t k = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> hashes;

  bool degenerate() const { return hashes.empty(); }
};

// Fingerprint of a window = hash_bytes over the k words joined by single
// spaces, with the given seed. k = 0 is a usage error.
ShingleSet shingle(std::span<const std::string> words, uint32_t k, uint64_t seed);

inline ShingleSet shingle_text(std::string_view normalized_text, uint32_t k,
                               uint64_t seed) {
  std::vector<std::string> words = tokenize_words(normalized_text);
  return shingle(words, k, seed);
}

// Streams documents from a line-delimited JSON file, one callback per
// record, holding one record in memory at a time. Malformed lines and
// duplicate ids raise InputError naming the file and line.
void load_documents(const std::string& path,
                    const std::function<void(Document&&)>& sink);

std::vector<Document> load_documents(const std::string& path);

std::vector<EvalUtterance> load_eval_set(const std::string& path);

}  // namespace contam
