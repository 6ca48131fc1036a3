#include "contam/matcher.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "contam/error.hpp"
#include "contam/hash.hpp"
#include "contam/parallel.hpp"

namespace contam {

MultiPatternScanner::MultiPatternScanner(std::span<const std::string> patterns) {
  byte_class_.fill(-1);
  for (const std::string& p : patterns) {
    if (p.empty()) throw InputError("empty search pattern");
    for (unsigned char c : p) {
      if (byte_class_[c] < 0) byte_class_[c] = static_cast<int32_t>(alphabet_++);
    }
  }
  if (alphabet_ == 0) throw InputError("no patterns given");

  // Trie construction with per-node dense transition rows.
  std::vector<int32_t> fail(1, 0);
  next_.assign(alphabet_, -1);
  outputs_.resize(1);
  nodes_ = 1;
  auto row = [&](size_t node) { return next_.begin() + node * alphabet_; };
  for (uint32_t pi = 0; pi < patterns.size(); pi++) {
    size_t node = 0;
    for (unsigned char c : patterns[pi]) {
      int32_t cls = byte_class_[c];
      int32_t to = *(row(node) + cls);
      if (to < 0) {
        to = static_cast<int32_t>(nodes_++);
        next_.resize(nodes_ * alphabet_, -1);
        outputs_.emplace_back();
        fail.push_back(0);
        *(row(node) + cls) = to;
      }
      node = static_cast<size_t>(to);
    }
    outputs_[node].push_back(pi);
  }

  // BFS: compute failure links and complete the transition table so that
  // matching never walks failures at scan time. bfs_order records the
  // depth-ordered node sequence for the output-link pass below.
  std::deque<size_t> queue;
  std::vector<size_t> bfs_order;
  bfs_order.reserve(nodes_);
  for (uint32_t c = 0; c < alphabet_; c++) {
    int32_t& to = next_[c];
    if (to < 0) {
      to = 0;
    } else {
      fail[to] = 0;
      queue.push_back(static_cast<size_t>(to));
    }
  }
  while (!queue.empty()) {
    size_t node = queue.front();
    queue.pop_front();
    bfs_order.push_back(node);
    for (uint32_t c = 0; c < alphabet_; c++) {
      int32_t& to = *(row(node) + c);
      int32_t via_fail = *(row(static_cast<size_t>(fail[node])) + c);
      if (to < 0) {
        to = via_fail;
      } else {
        fail[to] = via_fail;
        queue.push_back(static_cast<size_t>(to));
      }
    }
  }

  output_link_.assign(nodes_, -1);
  for (size_t node : bfs_order) {
    int32_t f = fail[node];
    output_link_[node] =
        outputs_[f].empty() ? output_link_[f] : static_cast<int32_t>(f);
  }
}

void MultiPatternScanner::scan(
    std::string_view text,
    const std::function<void(uint32_t, size_t)>& emit) const {
  size_t state = 0;
  for (size_t i = 0; i < text.size(); i++) {
    int32_t cls = byte_class_[static_cast<unsigned char>(text[i])];
    if (cls < 0) {
      state = 0;
      continue;
    }
    state = static_cast<size_t>(next_[state * alphabet_ + cls]);
    size_t end = i + 1;
    if (!outputs_[state].empty()) {
      for (uint32_t pi : outputs_[state]) emit(pi, end);
    }
    for (int32_t v = output_link_[state]; v >= 0; v = output_link_[v]) {
      for (uint32_t pi : outputs_[v]) emit(pi, end);
    }
  }
}

void finalize_records(std::vector<MatchRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const MatchRecord& a, const MatchRecord& b) {
              return std::tie(a.doc_id, a.work_id, a.utt_id, a.span_begin,
                              a.kind) <
                     std::tie(b.doc_id, b.work_id, b.utt_id, b.span_begin,
                              b.kind);
            });
  char buf[32];
  for (size_t i = 0; i < records.size(); i++) {
    std::snprintf(buf, sizeof(buf), "m%06zu", i);
    records[i].match_id = buf;
  }
}

namespace {

// Streams the corpus in chunks and runs `work` over each chunk's documents
// in parallel; per-document results land in order-stable slots.
template <typename PerDoc>
void for_each_doc_chunked(const std::string& corpus_path, size_t chunk_docs,
                          PerDoc&& per_doc) {
  std::vector<Document> chunk;
  chunk.reserve(chunk_docs);
  auto flush = [&]() {
    if (chunk.empty()) return;
    parallel_for(chunk.size(), [&](size_t i) { per_doc(chunk[i]); });
    chunk.clear();
  };
  load_documents(corpus_path, [&](Document&& doc) {
    chunk.push_back(std::move(doc));
    if (chunk.size() >= chunk_docs) flush();
  });
  flush();
}

std::string padded(std::string_view normalized) {
  std::string s;
  s.reserve(normalized.size() + 2);
  s.push_back(' ');
  s.append(normalized);
  s.push_back(' ');
  return s;
}

}  // namespace

WorkMatchResult match_works(const std::vector<Document>& works,
                            const std::string& corpus_path,
                            const ScanConfig& config) {
  if (works.empty()) throw InputError("no works to match");
  WorkMatchResult result;

  std::vector<std::string> work_ids;
  std::vector<ShingleSet> work_sets;
  std::vector<std::string> work_norm;
  for (const Document& w : works) {
    std::string norm = normalize_text(w.text, config.policy);
    ShingleSet set = shingle_text(norm, config.shingle_k, config.seed);
    if (set.degenerate()) {
      result.audit.push_back({"degenerate_work", w.doc_id,
                              "fewer than k words after normalization; "
                              "unmatchable"});
      continue;
    }
    work_ids.push_back(w.doc_id);
    work_sets.push_back(std::move(set));
    work_norm.push_back(std::move(norm));
  }

  struct DocOutcome {
    std::vector<std::pair<uint32_t, double>> hits;  // work index, jaccard
    std::string norm_text;
    bool degenerate = false;
  };

  std::vector<MatchRecord> records;
  if (!work_sets.empty()) {
    std::vector<MinHashSignature> sigs =
        signature_batch(work_sets, config.n_hashes, config.seed);
    LshIndex index(config.banding, config.n_hashes, config.seed, work_ids,
                   std::move(sigs));

    std::vector<DocOutcome> outcomes;
    auto process_chunk = [&](std::vector<Document>& docs) {
      outcomes.assign(docs.size(), DocOutcome{});
      parallel_for(docs.size(), [&](size_t i) {
        DocOutcome& out = outcomes[i];
        std::string norm = normalize_text(docs[i].text, config.policy);
        ShingleSet set = shingle_text(norm, config.shingle_k, config.seed);
        if (set.degenerate()) {
          out.degenerate = true;
          return;
        }
        MinHashSignature sig = signature(set, config.n_hashes, config.seed);
        for (uint32_t cand : index.query(sig)) {
          double j = exact_jaccard(set, work_sets[cand]);
          if (j > config.threshold) out.hits.emplace_back(cand, j);
        }
        if (!out.hits.empty()) out.norm_text = std::move(norm);
      });
      for (size_t i = 0; i < docs.size(); i++) {
        DocOutcome& out = outcomes[i];
        if (out.degenerate) {
          result.audit.push_back({"degenerate_doc", docs[i].doc_id,
                                  "fewer than k words after normalization; "
                                  "excluded from index"});
          continue;
        }
        for (auto [cand, j] : out.hits) {
          MatchRecord rec;
          rec.kind = "book_near_dup";
          rec.work_id = work_ids[cand];
          rec.doc_id = docs[i].doc_id;
          rec.verified_jaccard = j;
          records.push_back(std::move(rec));
        }
        if (!out.hits.empty()) {
          result.matched_doc_text[docs[i].doc_id] = std::move(out.norm_text);
        }
      }
    };

    std::vector<Document> buffer;
    buffer.reserve(config.chunk_docs);
    load_documents(corpus_path, [&](Document&& doc) {
      buffer.push_back(std::move(doc));
      if (buffer.size() >= config.chunk_docs) {
        process_chunk(buffer);
        buffer.clear();
      }
    });
    process_chunk(buffer);
  }

  finalize_records(records);
  result.records = std::move(records);
  return result;
}

AttributionResult attribute_utterances(const std::vector<EvalUtterance>& eval_set,
                                       const std::vector<Document>& works,
                                       const WorkMatchResult& work_matches,
                                       const NormalizationPolicy& policy) {
  std::set<std::string> known_works;
  for (const Document& w : works) known_works.insert(w.doc_id);

  // work -> matched (doc_id, match_id) pairs
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_work;
  for (const MatchRecord& rec : work_matches.records) {
    by_work[rec.work_id].emplace_back(rec.doc_id, rec.match_id);
  }

  AttributionResult result;
  result.labels.resize(eval_set.size());
  parallel_for(eval_set.size(), [&](size_t i) {
    const EvalUtterance& utt = eval_set[i];
    PartitionLabel& label = result.labels[i];
    label.utt_id = utt.utt_id;
    label.label = "non_leaked";
    if (utt.work_id.empty() || !known_works.count(utt.work_id)) return;
    auto it = by_work.find(utt.work_id);
    if (it == by_work.end()) return;
    std::string needle = padded(normalize_text(utt.transcript, policy));
    if (needle.size() <= 2) return;
    for (const auto& [doc_id, match_id] : it->second) {
      const std::string& doc_text = work_matches.matched_doc_text.at(doc_id);
      if (padded(doc_text).find(needle) != std::string::npos) {
        label.evidence.push_back(match_id);
      }
    }
    if (!label.evidence.empty()) label.label = "leaked";
  });
  for (const EvalUtterance& utt : eval_set) {
    if (!utt.work_id.empty() && !known_works.count(utt.work_id)) {
      result.unknown_work_warnings++;
    }
  }
  return result;
}

VerbatimResult find_verbatim(const std::vector<EvalUtterance>& sentences,
                             const std::string& corpus_path,
                             const ScanConfig& config) {
  VerbatimResult result;
  std::vector<std::string> patterns;
  std::vector<uint32_t> pattern_utt;  // pattern index -> sentence index
  for (size_t i = 0; i < sentences.size(); i++) {
    std::string norm = normalize_text(sentences[i].transcript, config.policy);
    if (norm.empty()) {
      result.audit.push_back(
          {"empty_sentence", sentences[i].utt_id, "empty after normalization"});
      continue;
    }
    patterns.push_back(padded(norm));
    pattern_utt.push_back(static_cast<uint32_t>(i));
  }
  if (patterns.empty()) return result;

  MultiPatternScanner scanner(patterns);

  struct DocHits {
    std::vector<MatchRecord> records;
  };
  std::vector<DocHits> outcomes;
  std::vector<MatchRecord> records;

  auto process_chunk = [&](std::vector<Document>& docs) {
    outcomes.assign(docs.size(), DocHits{});
    parallel_for(docs.size(), [&](size_t i) {
      std::string text = padded(normalize_text(docs[i].text, config.policy));
      scanner.scan(text, [&](uint32_t pi, size_t end) {
        // Strip the sentinel spaces: pattern content sits at
        // [end-len+1, end-1) of the padded text, i.e. shifted left by one
        // in document coordinates.
        size_t len = patterns[pi].size();
        MatchRecord rec;
        rec.kind = "verbatim";
        rec.utt_id = sentences[pattern_utt[pi]].utt_id;
        rec.doc_id = docs[i].doc_id;
        rec.span_begin = static_cast<int64_t>(end - len + 1) - 1;
        rec.span_end = rec.span_begin + static_cast<int64_t>(len) - 2;
        outcomes[i].records.push_back(std::move(rec));
      });
    });
    for (DocHits& h : outcomes) {
      for (MatchRecord& r : h.records) records.push_back(std::move(r));
    }
  };

  std::vector<Document> buffer;
  buffer.reserve(config.chunk_docs);
  load_documents(corpus_path, [&](Document&& doc) {
    buffer.push_back(std::move(doc));
    if (buffer.size() >= config.chunk_docs) {
      process_chunk(buffer);
      buffer.clear();
    }
  });
  process_chunk(buffer);

  finalize_records(records);
  result.records = std::move(records);
  return result;
}

VerbatimResult find_fuzzy_sentences(const std::vector<EvalUtterance>& sentences,
                                    const std::string& corpus_path,
                                    const ScanConfig& config) {
  VerbatimResult result;

  struct SentenceEntry {
    uint32_t idx = 0;
    size_t n_words = 0;
    ShingleSet set;
  };
  std::vector<SentenceEntry> entries;
  // shingle fingerprint -> (entry index, window position within sentence)
  std::unordered_map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> inverted;

  for (size_t i = 0; i < sentences.size(); i++) {
    std::string norm = normalize_text(sentences[i].transcript, config.policy);
    std::vector<std::string> words = tokenize_words(norm);
    if (words.size() < config.shingle_k) {
      result.audit.push_back({"degenerate_sentence", sentences[i].utt_id,
                              "fewer than k words; skipped by fuzzy matcher"});
      continue;
    }
    SentenceEntry e;
    e.idx = static_cast<uint32_t>(i);
    e.n_words = words.size();
    e.set = shingle(words, config.shingle_k, config.seed);
    uint32_t entry_idx = static_cast<uint32_t>(entries.size());
    for (size_t pos = 0; pos + config.shingle_k <= words.size(); pos++) {
      ByteHasher h(config.seed);
      for (size_t j = 0; j < config.shingle_k; j++) {
        if (j > 0) h.update_byte(' ');
        h.update(words[pos + j]);
      }
      inverted[h.digest()].emplace_back(entry_idx, static_cast<uint32_t>(pos));
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) return result;

  std::vector<MatchRecord> records;
  std::vector<std::vector<MatchRecord>> outcomes;

  auto process_chunk = [&](std::vector<Document>& docs) {
    outcomes.assign(docs.size(), {});
    parallel_for(docs.size(), [&](size_t i) {
      std::string norm = normalize_text(docs[i].text, config.policy);
      std::vector<WordSpan> spans = tokenize_word_spans(norm);
      if (spans.size() < config.shingle_k) return;
      std::set<std::pair<uint32_t, size_t>> tried;  // (entry, window start)
      for (size_t p = 0; p + config.shingle_k <= spans.size(); p++) {
        ByteHasher h(config.seed);
        for (size_t j = 0; j < config.shingle_k; j++) {
          if (j > 0) h.update_byte(' ');
          h.update(spans[p + j].word);
        }
        auto it = inverted.find(h.digest());
        if (it == inverted.end()) continue;
        for (auto [entry_idx, pos] : it->second) {
          const SentenceEntry& e = entries[entry_idx];
          if (pos > p) continue;
          size_t start = p - pos;
          if (start + e.n_words > spans.size()) continue;
          if (!tried.emplace(entry_idx, start).second) continue;
          std::vector<std::string> window;
          window.reserve(e.n_words);
          for (size_t w = 0; w < e.n_words; w++) {
            window.emplace_back(spans[start + w].word);
          }
          ShingleSet wset = shingle(window, config.shingle_k, config.seed);
          double j = exact_jaccard(wset, e.set);
          if (j > config.threshold) {
            MatchRecord rec;
            rec.kind = "sentence_fuzzy";
            rec.utt_id = sentences[e.idx].utt_id;
            rec.doc_id = docs[i].doc_id;
            rec.verified_jaccard = j;
            rec.span_begin = static_cast<int64_t>(spans[start].begin);
            const WordSpan& last = spans[start + e.n_words - 1];
            rec.span_end = static_cast<int64_t>(last.begin + last.word.size());
            outcomes[i].push_back(std::move(rec));
          }
        }
      }
    });
    for (auto& recs : outcomes) {
      for (MatchRecord& r : recs) records.push_back(std::move(r));
    }
  };

  std::vector<Document> buffer;
  buffer.reserve(config.chunk_docs);
  load_documents(corpus_path, [&](Document&& doc) {
    buffer.push_back(std::move(doc));
    if (buffer.size() >= config.chunk_docs) {
      process_chunk(buffer);
      buffer.clear();
    }
  });
  process_chunk(buffer);

  finalize_records(records);
  result.records = std::move(records);
  return result;
}

PartitionSummary partition(const std::vector<EvalUtterance>& eval_set,
                           const std::vector<PartitionLabel>& labels,
                           std::vector<EvalUtterance>* leaked_out,
                           std::vector<EvalUtterance>* non_leaked_out) {
  std::map<std::string, const PartitionLabel*> by_id;
  for (const PartitionLabel& l : labels) by_id[l.utt_id] = &l;
  PartitionSummary summary;
  summary.total = eval_set.size();
  for (const EvalUtterance& utt : eval_set) {
    auto it = by_id.find(utt.utt_id);
    if (it == by_id.end()) {
      throw InternalError("utterance '" + utt.utt_id + "' is unlabeled");
    }
    const PartitionLabel& l = *it->second;
    if ((l.label == "leaked") != !l.evidence.empty()) {
      throw InternalError("label/evidence mismatch for '" + utt.utt_id + "'");
    }
    if (l.label == "leaked") {
      summary.leaked++;
      if (leaked_out) leaked_out->push_back(utt);
    } else if (l.label == "non_leaked") {
      summary.non_leaked++;
      if (non_leaked_out) non_leaked_out->push_back(utt);
    } else {
      throw InternalError("unknown label '" + l.label + "'");
    }
  }
  summary.leaked_fraction =
      summary.total == 0
          ? 0.0
          : static_cast<double>(summary.leaked) / static_cast<double>(summary.total);
  return summary;
}

void write_match_records(const std::string& path,
                         std::span<const MatchRecord> records) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write match file: " + path, path);
  for (const MatchRecord& r : records) {
    nlohmann::json j;
    j["match_id"] = r.match_id;
    j["kind"] = r.kind;
    j["doc_id"] = r.doc_id;
    if (!r.utt_id.empty()) j["utt_id"] = r.utt_id;
    if (!r.work_id.empty()) j["work_id"] = r.work_id;
    if (r.verified_jaccard >= 0.0) j["verified_jaccard"] = r.verified_jaccard;
    if (r.span_begin >= 0) {
      j["span_begin"] = r.span_begin;
      j["span_end"] = r.span_end;
    }
    out << j.dump() << "\n";
  }
}

void write_labels(const std::string& path,
                  std::span<const PartitionLabel> labels) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write label file: " + path, path);
  for (const PartitionLabel& l : labels) {
    nlohmann::json j;
    j["utt_id"] = l.utt_id;
    j["label"] = l.label;
    j["evidence"] = l.evidence;
    out << j.dump() << "\n";
  }
}

std::vector<PartitionLabel> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open label file: " + path, path);
  std::vector<PartitionLabel> labels;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("utt_id") ||
        !j.contains("label")) {
      throw InputError("malformed label record", path, lineno);
    }
    PartitionLabel l;
    l.utt_id = j["utt_id"].get<std::string>();
    l.label = j["label"].get<std::string>();
    if (j.contains("evidence")) {
      for (const auto& e : j["evidence"]) l.evidence.push_back(e.get<std::string>());
    }
    labels.push_back(std::move(l));
  }
  return labels;
}

void write_audit(const std::string& path, std::span<const AuditEntry> audit) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write audit file: " + path, path);
  for (const AuditEntry& a : audit) {
    nlohmann::json j;
    j["kind"] = a.kind;
    j["id"] = a.id;
    j["detail"] = a.detail;
    out << j.dump() << "\n";
  }
}

}  // namespace contam
