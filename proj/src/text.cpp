#include "contam/text.hpp"

#include <array>
#include <cctype>

#include "contam/error.hpp"
#include "contam/hash.hpp"

namespace contam {

namespace {

bool is_ws(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_punct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) ||
         (c >= 91 && c <= 96) || (c >= 123 && c <= 126);
}

struct Fold {
  std::string_view from;
  std::string_view to;
};

// Typographic characters folded to their ASCII counterparts (UTF-8 input).
constexpr std::array<Fold, 16> kFolds = {{
    {"‘", "'"},   // left single quote
    {"’", "'"},   // right single quote
    {"‚", "'"},   // low single quote
    {"‛", "'"},
    {"“", "\""},  // left double quote
    {"”", "\""},  // right double quote
    {"„", "\""},
    {"‟", "\""},
    {"«", "\""},  // guillemets
    {"»", "\""},
    {"‐", "-"},   // hyphens and dashes
    {"‑", "-"},
    {"‒", "-"},
    {"–", "-"},
    {"—", "-"},
    {"―", "-"},
}};

// Returns the ASCII replacement when `s` starts with a foldable sequence,
// along with its byte length; {nullptr-ish, 0} otherwise.
std::pair<std::string_view, size_t> fold_at(std::string_view s) {
  for (const Fold& f : kFolds) {
    if (s.size() >= f.from.size() && s.substr(0, f.from.size()) == f.from) {
      return {f.to, f.from.size()};
    }
  }
  if (s.size() >= 3 && s.substr(0, 3) == "…") return {"...", 3};
  if (s.size() >= 2 && s.substr(0, 2) == " ") return {" ", 2};
  return {{}, 0};
}

}  // namespace

uint64_t NormalizationPolicy::digest() const {
  return hash_bytes(to_string(), 0x706f6c696379ULL);
}

std::string NormalizationPolicy::to_string() const {
  std::string out;
  if (unicode_fold) out += "fold,";
  if (lowercase) out += "lowercase,";
  if (strip_punctuation) out += "strip-punct,";
  if (collapse_whitespace) out += "collapse-ws,";
  if (out.empty()) return "none";
  out.pop_back();
  return out;
}

NormalizationPolicy NormalizationPolicy::parse(std::string_view spec) {
  NormalizationPolicy p{false, false, false, false};
  if (spec.empty() || spec == "none") return p;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view item = spec.substr(pos, comma - pos);
    if (item == "fold") {
      p.unicode_fold = true;
    } else if (item == "lowercase") {
      p.lowercase = true;
    } else if (item == "strip-punct") {
      p.strip_punctuation = true;
    } else if (item == "collapse-ws") {
      p.collapse_whitespace = true;
    } else if (!item.empty()) {
      throw InputError("unknown normalization step: " + std::string(item));
    }
    pos = comma + 1;
  }
  return p;
}

std::string normalize_text(std::string_view raw, const NormalizationPolicy& policy) {
  std::string out;
  out.reserve(raw.size());
  size_t i = 0;
  while (i < raw.size()) {
    std::string_view rest = raw.substr(i);
    if (policy.unicode_fold) {
      auto [rep, len] = fold_at(rest);
      if (len > 0) {
        for (char rc : rep) {
          char c = rc;
          if (policy.lowercase && c >= 'A' && c <= 'Z') c += 32;
          if (policy.strip_punctuation && is_punct(c)) c = ' ';
          out.push_back(c);
        }
        i += len;
        continue;
      }
    }
    char c = raw[i++];
    if (policy.lowercase && c >= 'A' && c <= 'Z') c += 32;
    if (policy.strip_punctuation && is_punct(static_cast<unsigned char>(c)))
      c = ' ';
    out.push_back(c);
  }
  if (policy.collapse_whitespace) {
    std::string collapsed;
    collapsed.reserve(out.size());
    bool pending = false;
    for (char c : out) {
      if (is_ws(static_cast<unsigned char>(c))) {
        pending = !collapsed.empty();
      } else {
        if (pending) collapsed.push_back(' ');
        pending = false;
        collapsed.push_back(c);
      }
    }
    out = std::move(collapsed);
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> words;
  for (const WordSpan& s : tokenize_word_spans(text)) {
    words.emplace_back(s.word);
  }
  return words;
}

std::vector<WordSpan> tokenize_word_spans(std::string_view text) {
  std::vector<WordSpan> spans;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ws(static_cast<unsigned char>(text[i]))) i++;
    if (i >= text.size()) break;
    size_t start = i;
    while (i < text.size() && !is_ws(static_cast<unsigned char>(text[i]))) i++;
    spans.push_back({text.substr(start, i - start), start});
  }
  return spans;
}

RestoreResult restore_case_punct(std::string_view transcript,
                                 std::string_view source_text,
                                 const NormalizationPolicy& policy) {
  RestoreResult res;
  const std::string norm_transcript = normalize_text(transcript, policy);
  std::vector<std::string> target = tokenize_words(norm_transcript);
  if (target.empty()) return res;

  // Normalized words of the source, each annotated with the raw token it
  // came from. One raw token can normalize to several words ("don't" with
  // punctuation stripping) or to none ("--").
  std::vector<WordSpan> raw_tokens = tokenize_word_spans(source_text);
  struct NormWord {
    std::string word;
    size_t token;     // index into raw_tokens
    bool first, last; // position within its raw token
  };
  std::vector<NormWord> norm;
  for (size_t t = 0; t < raw_tokens.size(); t++) {
    std::vector<std::string> ws =
        tokenize_words(normalize_text(raw_tokens[t].word, policy));
    for (size_t j = 0; j < ws.size(); j++) {
      norm.push_back({std::move(ws[j]), t, j == 0, j + 1 == ws.size()});
    }
  }
  if (norm.size() < target.size()) return res;

  // A match must cover whole raw tokens, otherwise the returned span would
  // normalize to more than the transcript.
  for (size_t i = 0; i + target.size() <= norm.size(); i++) {
    if (!norm[i].first || !norm[i + target.size() - 1].last) continue;
    bool match = true;
    for (size_t j = 0; j < target.size(); j++) {
      if (norm[i + j].word != target[j]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const WordSpan& from = raw_tokens[norm[i].token];
    const WordSpan& to = raw_tokens[norm[i + target.size() - 1].token];
    std::string_view span =
        source_text.substr(from.begin, to.begin + to.word.size() - from.begin);
    // Word equality is not quite the contract when whitespace survives
    // normalization; check the span's normalization verbatim.
    if (normalize_text(span, policy) != norm_transcript) continue;
    res.multiplicity++;
    if (res.multiplicity == 1) {
      res.ok = true;
      res.begin = from.begin;
      res.end = to.begin + to.word.size();
      res.restored = std::string(span);
    }
  }
  return res;
}

}  // namespace contam
