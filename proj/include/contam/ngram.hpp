#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace contam {

// Closed vocabulary with reserved symbols. <s> is context-only and never a
// predicted outcome; </s> and <unk> are ordinary outcomes.
class Vocab {
 public:
  static constexpr uint32_t kBos = 0;
  static constexpr uint32_t kEos = 1;
  static constexpr uint32_t kUnk = 2;

  Vocab();
  uint32_t add(const std::string& word);          // id of word, inserting
  uint32_t lookup(const std::string& word) const; // kUnk when absent
  const std::string& word(uint32_t id) const { return id_to_word_[id]; }
  uint32_t size() const { return static_cast<uint32_t>(id_to_word_.size()); }
  // Outcome space: every symbol except <s>.
  uint32_t outcome_count() const { return size() - 1; }

 private:
  std::vector<std::string> id_to_word_;
  std::unordered_map<std::string, uint32_t> word_to_id_;
};

// Interpolated Kneser-Ney n-gram model.
//
// Counting: each training sentence is padded with order-1 <s> symbols and
// one </s>. Raw counts at every level cover all windows that end in a
// non-<s> token. Adjusted counts are the raw counts at the highest level;
// at lower levels they are continuation counts (the number of distinct
// left-extension words among the raw counts one level up), except that
// grams starting with <s> keep their raw counts since they cannot be
// left-extended.
//
// Discounts: per level, D = n1 / (n1 + 2*n2) over that level's adjusted
// counts, falling back to 0.5 when there are no singletons.
//
// Probability, with c/C/T the adjusted count, context total, and distinct
// word types of the level-m context table:
//
//   p_m(w|h) = max(c - D_m, 0)/C + (D_m * T / C) * p_{m-1}(w|h')
//   p_m(w|h) = p_{m-1}(w|h')            for a context with no counts
//   p_0(w)   = 1 / outcome_count
//
// Every context therefore sums to one exactly and every probability is
// strictly positive.
class NgramModel {
 public:
  struct ContextTable {
    uint64_t total = 0;
    std::vector<std::pair<uint32_t, uint64_t>> counts;  // sorted by word id
    uint64_t count_of(uint32_t word) const;
  };

  // Natural-log probability of word following the given context (most
  // recent word last; longer contexts are truncated to order-1).
  double log_prob(std::span<const uint32_t> context, uint32_t word) const;
  double prob(std::span<const uint32_t> context, uint32_t word) const;

  // Per-token natural-log probabilities for the scored positions of the
  // sentence. skip_first drops the first token from the output; boundary
  // symbols are context only and are never scored.
  std::vector<double> score_sentence(std::span<const uint32_t> tokens,
                                     bool skip_first) const;

  std::vector<uint32_t> ids_of_words(std::span<const std::string> words) const;

  uint32_t order() const { return order_; }
  const Vocab& vocab() const { return vocab_; }
  double discount(uint32_t level) const { return discounts_[level]; }

  // Raw training-data statistics, for audits and tests. Boundary symbols
  // are excluded from the real-token total.
  uint64_t unigram_count(const std::string& word) const;
  uint64_t real_token_total() const { return real_tokens_; }

  // Context tables of one level, keys packed as little-endian id sequences.
  const std::unordered_map<std::string, ContextTable>& level(uint32_t m) const {
    return levels_[m];
  }

  void save(const std::string& path) const;
  static NgramModel load(const std::string& path);

  friend struct NgramModelBuilder;

 private:
  double prob_level(uint32_t m, std::span<const uint32_t> context,
                    uint32_t word) const;

  uint32_t order_ = 0;
  Vocab vocab_;
  std::vector<double> discounts_;  // [1..order]
  std::vector<std::unordered_map<std::string, ContextTable>> levels_;
  std::unordered_map<uint32_t, uint64_t> raw_unigrams_;
  uint64_t real_tokens_ = 0;
};

// Trains on word sentences; the vocabulary is built from the training data
// in first-appearance order. Empty input is an error.
NgramModel train_ngram(uint32_t order,
                       const std::vector<std::vector<std::string>>& sentences);

// Trains on externally tokenized sentences: ids index into vocab_words,
// which comes from a sidecar vocabulary file (one token per line).
NgramModel train_ngram_ids(uint32_t order,
                           const std::vector<std::vector<uint32_t>>& sentences,
                           const std::vector<std::string>& vocab_words);

std::string pack_ids(std::span<const uint32_t> ids);
std::vector<uint32_t> unpack_ids(std::string_view key);

}  // namespace contam
