#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace contam {

// Per-sentence scoring summary; the unit of bootstrap resampling.
// total_logprob is a natural-log sum over the scored tokens.
struct ScoreRecord {
  std::string utt_id;
  double total_logprob = 0.0;
  uint64_t n_tokens_scored = 0;
  uint64_t n_words = 0;
  std::string model_id;
};

// Word-normalized negative log-likelihood: -(sum logprob) / (sum words).
double corpus_nll(std::span<const ScoreRecord> records);

inline double perplexity(double nll) { return std::exp(nll); }

struct BootstrapResult {
  double point = 0.0;  // statistic on the original records
  double lo = 0.0;     // 2.5th percentile over replicates
  double hi = 0.0;     // 97.5th percentile over replicates
  uint32_t replicates = 0;
  uint64_t seed = 0;
};

// Percentile bootstrap over sentences: replicate j seeds
// SplitMix64(derive_stream(seed, j)), draws |records| indices with
// next_below, and recomputes word-normalized perplexity as a ratio of
// sums. Percentiles interpolate linearly between order statistics at rank
// q*(R-1), returning the order statistic itself when the two bracketing
// values are equal. bootstrap_ci evaluates replicates under OpenMP;
// bootstrap_ci_serial is the bit-identical reference.
BootstrapResult bootstrap_ci(std::span<const ScoreRecord> records,
                             uint32_t replicates, uint64_t seed);
BootstrapResult bootstrap_ci_serial(std::span<const ScoreRecord> records,
                                    uint32_t replicates, uint64_t seed);

// One (model, partition) cell of the comparison.
struct ComparisonCell {
  std::string model_id;
  std::string partition;
  size_t n_sentences = 0;
  double ppl = 0.0;
  BootstrapResult ci;
};

struct DeltaCell {
  std::string partition;
  double delta = 0.0;  // PPL(model_b) - PPL(model_a)
  BootstrapResult ci;
  bool paired = true;
};

struct PartitionComparison {
  std::vector<ComparisonCell> cells;    // model-major, partition-minor
  std::vector<DeltaCell> deltas;        // one per partition
  uint32_t replicates = 0;
  uint64_t seed = 0;
};

// Compares two models over the leaked / non_leaked partitions. Sentences
// are paired by utt_id; with paired resampling the same indices drive both
// models in every replicate. Partition p uses substream
// derive_stream(seed, p) (leaked = 0, non_leaked = 1); unpaired mode gives
// model b the substream derive_stream(partition_seed, 1 + model index).
PartitionComparison compare_partitions(
    std::span<const ScoreRecord> model_a, std::span<const ScoreRecord> model_b,
    const std::map<std::string, std::string>& partition_of_utt,
    uint32_t replicates, uint64_t seed, bool paired = true);

// Score-file I/O. First line is a header object carrying log_base ("e",
// "2", "10", or a number) and an optional default model_id; records follow,
// one JSON object per line. Log probabilities convert to natural log on
// ingest.
std::vector<ScoreRecord> load_score_file(const std::string& path);
void save_score_file(const std::string& path,
                     std::span<const ScoreRecord> records);

}  // namespace contam
