#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contam {

// Deterministic text normalization. Steps run in a fixed order:
// unicode_fold, lowercase, strip_punctuation, collapse_whitespace.
// The whole pipeline is idempotent for any combination of flags.
struct NormalizationPolicy {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool collapse_whitespace = true;
  bool unicode_fold = true;  // typographic quotes/dashes -> ASCII

  // Stable digest recorded in reports and signature sidecars.
  uint64_t digest() const;
  std::string to_string() const;
  static NormalizationPolicy parse(std::string_view spec);
};

// lowercase is ASCII-only; strip_punctuation maps ASCII punctuation to a
// space; collapse_whitespace maps maximal whitespace runs to one space and
// trims the ends. Bytes outside ASCII pass through untouched except for
// the fold table (curly quotes, dashes, ellipsis, NBSP).
std::string normalize_text(std::string_view raw, const NormalizationPolicy& policy);

// Splits on whitespace, dropping empty segments. Inputs are expected to be
// normalized already; punctuation never forms a word.
std::vector<std::string> tokenize_words(std::string_view text);

// Word views plus the byte offset of each word in the input.
struct WordSpan {
  std::string_view word;
  size_t begin = 0;
};
std::vector<WordSpan> tokenize_word_spans(std::string_view text);

struct RestoreResult {
  bool ok = false;
  std::string restored;   // raw-text span, whitespace-token aligned
  size_t begin = 0;       // byte offsets into source_text
  size_t end = 0;
  int multiplicity = 0;   // number of qualifying locations in the source
};

// Finds the earliest minimal span of source_text whose normalization equals
// the normalized transcript. Spans are aligned to whitespace-delimited raw
// tokens, so trailing punctuation and original casing come along with the
// sentence. Returns ok=false when the transcript does not occur.
RestoreResult restore_case_punct(std::string_view transcript,
                                 std::string_view source_text,
                                 const NormalizationPolicy& policy);

}  // namespace contam
