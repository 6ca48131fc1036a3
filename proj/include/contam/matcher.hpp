#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contam/corpus.hpp"
#include "contam/minhash.hpp"

namespace contam {

// One detected contamination link.
//   book_near_dup:  work -> corpus document, verified_jaccard > threshold
//   verbatim:       utterance -> document, span into the normalized text
//   sentence_fuzzy: optional fuzzy mode, reported separately from verbatim
struct MatchRecord {
  std::string match_id;
  std::string kind;
  std::string utt_id;   // empty for work-level matches
  std::string work_id;  // empty for verbatim matches
  std::string doc_id;
  double verified_jaccard = -1.0;  // < 0 when not applicable
  int64_t span_begin = -1;         // byte offsets into normalized doc text
  int64_t span_end = -1;
};

struct PartitionLabel {
  std::string utt_id;
  std::string label;  // "leaked" or "non_leaked"
  std::vector<std::string> evidence;  // match ids; nonempty iff leaked
};

// Events that would otherwise be silent drops.
struct AuditEntry {
  std::string kind;  // degenerate_doc, degenerate_work, empty_sentence, ...
  std::string id;
  std::string detail;
};

struct ScanConfig {
  NormalizationPolicy policy;
  uint32_t shingle_k = 5;
  uint32_t n_hashes = 256;
  LshBandingParams banding{32, 8};
  uint64_t seed = 42;
  double threshold = 0.7;
  size_t chunk_docs = 512;  // documents processed per parallel chunk
};

// Aho-Corasick automaton over the byte alphabet observed in the patterns.
// Matching one document costs O(bytes + hits); the automaton is immutable
// after construction and safe to share across threads.
class MultiPatternScanner {
 public:
  explicit MultiPatternScanner(std::span<const std::string> patterns);

  // Calls emit(pattern_index, end_offset) for every occurrence, in order of
  // end offset. Duplicate patterns report every index they were added under.
  void scan(std::string_view text,
            const std::function<void(uint32_t, size_t)>& emit) const;

  size_t node_count() const { return nodes_; }

 private:
  size_t nodes_ = 0;
  uint32_t alphabet_ = 0;
  std::array<int32_t, 256> byte_class_;  // -1 for bytes absent from patterns
  std::vector<int32_t> next_;            // nodes_ x alphabet_ transition table
  std::vector<int32_t> output_link_;
  std::vector<std::vector<uint32_t>> outputs_;
};

// Work-level near-duplicate matching (signatures + LSH candidates + exact
// Jaccard verification). Emits one record per (work, doc) pair above the
// threshold. Matched documents' normalized texts are retained for
// utterance attribution.
struct WorkMatchResult {
  std::vector<MatchRecord> records;                    // kind=book_near_dup
  std::map<std::string, std::string> matched_doc_text; // doc_id -> normalized
  std::vector<AuditEntry> audit;
};

WorkMatchResult match_works(const std::vector<Document>& works,
                            const std::string& corpus_path,
                            const ScanConfig& config);

// Labels each utterance leaked iff its work matched some document AND the
// normalized transcript occurs word-aligned inside that document's
// normalized text. Utterances whose work_id is unknown are non_leaked and
// counted in the returned warning tally.
struct AttributionResult {
  std::vector<PartitionLabel> labels;
  int unknown_work_warnings = 0;
};

AttributionResult attribute_utterances(const std::vector<EvalUtterance>& eval_set,
                                       const std::vector<Document>& works,
                                       const WorkMatchResult& work_matches,
                                       const NormalizationPolicy& policy);

// Verbatim sentence search: one streaming pass, all sentences at once.
// Matches align to word boundaries of the normalized document text.
struct VerbatimResult {
  std::vector<MatchRecord> records;  // kind=verbatim
  std::vector<AuditEntry> audit;
};

VerbatimResult find_verbatim(const std::vector<EvalUtterance>& sentences,
                             const std::string& corpus_path,
                             const ScanConfig& config);

// Optional fuzzy sentence matching: candidate windows share at least one
// k-word shingle with a sentence and verify at exact Jaccard > threshold.
VerbatimResult find_fuzzy_sentences(const std::vector<EvalUtterance>& sentences,
                                    const std::string& corpus_path,
                                    const ScanConfig& config);

struct PartitionSummary {
  size_t total = 0;
  size_t leaked = 0;
  size_t non_leaked = 0;
  double leaked_fraction = 0.0;
};

// Disjoint, exhaustive split of the eval set. Throws InternalError on an
// unlabeled utterance.
PartitionSummary partition(const std::vector<EvalUtterance>& eval_set,
                           const std::vector<PartitionLabel>& labels,
                           std::vector<EvalUtterance>* leaked_out = nullptr,
                           std::vector<EvalUtterance>* non_leaked_out = nullptr);

// Deterministic ordering and ids for a freshly produced record batch:
// sorts by (doc_id, work_id, utt_id, span) and assigns m-prefixed ids.
void finalize_records(std::vector<MatchRecord>& records);

// Line-delimited JSON emission for records, labels and audit entries, plus
// the label reader used by downstream analysis.
void write_match_records(const std::string& path,
                         std::span<const MatchRecord> records);
void write_labels(const std::string& path,
                  std::span<const PartitionLabel> labels);
std::vector<PartitionLabel> load_labels(const std::string& path);
void write_audit(const std::string& path, std::span<const AuditEntry> audit);

}  // namespace contam
