// Acceptance suite: one pass/fail line per criterion. Each criterion pins
// its tolerances in code; the binary exits nonzero if any criterion fails.
//
// Criteria that specify CLI behaviour shell out to the contamcheck binary
// (CONTAMCHECK_BIN) with OMP_NUM_THREADS=1 so the stated runtime budgets
// are measured on one core.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "contam/corpus.hpp"
#include "contam/hash.hpp"
#include "contam/matcher.hpp"
#include "contam/minhash.hpp"
#include "contam/ngram.hpp"
#include "contam/report.hpp"
#include "contam/stats.hpp"
#include "contam/text.hpp"

using namespace contam;
using nlohmann::json;

namespace {

int g_failures = 0;

void verdict(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) g_failures++;
}

std::string g_bin;
std::filesystem::path g_dir;

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

int run_cli(const std::string& args, double* wall_seconds = nullptr) {
  std::string cmd = "OMP_NUM_THREADS=1 " + g_bin + " " + args + " >" +
                    path_of("cli_stdout.txt") + " 2>" + path_of("cli_stderr.txt");
  auto t0 = std::chrono::steady_clock::now();
  int status = std::system(cmd.c_str());
  if (wall_seconds) {
    *wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::string word_of(SplitMix64& rng, size_t vocab = 50000) {
  return "w" + std::to_string(rng.next_below(vocab));
}

std::vector<std::string> words_of(SplitMix64& rng, size_t n) {
  std::vector<std::string> w(n);
  for (auto& x : w) x = word_of(rng);
  return w;
}

std::string join(const std::vector<std::string>& w, size_t from = 0,
                 size_t count = SIZE_MAX) {
  std::string s;
  size_t end = std::min(w.size(), count == SIZE_MAX ? w.size() : from + count);
  for (size_t i = from; i < end; i++) {
    if (i > from) s += ' ';
    s += w[i];
  }
  return s;
}

std::string doc_json(const std::string& id, const std::string& text) {
  json j;
  j["id"] = id;
  j["source"] = "fixture";
  j["text"] = text;
  return j.dump() + "\n";
}

std::string utt_json(const std::string& id, const std::string& transcript,
                     const std::string& work = "") {
  json j;
  j["utt_id"] = id;
  j["transcript"] = transcript;
  if (!work.empty()) j["work_id"] = work;
  j["split"] = "test";
  return j.dump() + "\n";
}

// Set pair with exact Jaccard overlap/(2*size-overlap).
std::pair<ShingleSet, ShingleSet> pair_with_jaccard(size_t size, size_t overlap,
                                                    uint64_t seed) {
  SplitMix64 rng(seed);
  std::set<uint64_t> pool;
  while (pool.size() < 2 * size - overlap) pool.insert(rng.next());
  std::vector<uint64_t> vals(pool.begin(), pool.end());
  ShingleSet a, b;
  a.k = b.k = 1;
  a.hashes.assign(vals.begin(), vals.begin() + size);
  b.hashes.assign(vals.begin() + (size - overlap), vals.end());
  std::sort(a.hashes.begin(), a.hashes.end());
  std::sort(b.hashes.begin(), b.hashes.end());
  return {a, b};
}

// ---------------------------------------------------------------------------

void criterion_1_book_recovery() {
  const char* name = "planted book-contamination recovery via scan";
  SplitMix64 rng(0xc1);
  ScanConfig cfg;  // defaults: k=5, 256 hashes, 32x8, threshold 0.7

  const int n_works = 20;
  const size_t work_len = 900;
  std::vector<std::vector<std::string>> work_words(n_works);
  std::string works_content, corpus_content, eval_content;
  std::set<std::pair<std::string, std::string>> manifest;  // planted pairs

  std::vector<Document> all_docs;
  for (int w = 0; w < n_works; w++) {
    work_words[w] = words_of(rng, work_len);
    std::string wid = "work" + std::to_string(w);
    works_content += doc_json(wid, join(work_words[w]));
    eval_content += utt_json("u" + std::to_string(w),
                             join(work_words[w], 0, 12), wid);

    // Planted variant: replace ~95 mid words, exact Jaccard ~ 0.82.
    auto plant = work_words[w];
    auto repl = words_of(rng, 95);
    std::copy(repl.begin(), repl.end(), plant.begin() + 300);
    std::string plant_id = "plant" + std::to_string(w);
    all_docs.push_back({plant_id, "fixture", join(plant)});
    manifest.insert({wid, plant_id});

    // Two decoys in [0.3, 0.65].
    for (int d = 0; d < 2; d++) {
      auto decoy = work_words[w];
      size_t m = d == 0 ? 300 : 420;
      auto drepl = words_of(rng, m);
      std::copy(drepl.begin(), drepl.end(), decoy.begin() + 200);
      all_docs.push_back({"decoy" + std::to_string(w) + "_" + std::to_string(d),
                          "fixture", join(decoy)});
    }
  }
  for (int i = 0; i < 10000 - n_works * 3; i++) {
    all_docs.push_back({"noise" + std::to_string(i), "fixture",
                        join(words_of(rng, 400))});
  }
  for (const Document& d : all_docs) corpus_content += doc_json(d.doc_id, d.text);
  std::ofstream(path_of("c1_corpus.jsonl")) << corpus_content;
  std::ofstream(path_of("c1_works.jsonl")) << works_content;
  std::ofstream(path_of("c1_eval.jsonl")) << eval_content;

  // Brute-force all-pairs oracle over (work, doc): verify plant bands and
  // derive the expected match set.
  std::vector<ShingleSet> work_sets(n_works);
  for (int w = 0; w < n_works; w++) {
    work_sets[w] = shingle(work_words[w], cfg.shingle_k, cfg.seed);
  }
  std::set<std::pair<std::string, std::string>> oracle_matches;
  bool bands_ok = true;
  for (const Document& d : all_docs) {
    ShingleSet ds = shingle_text(normalize_text(d.text, cfg.policy),
                                 cfg.shingle_k, cfg.seed);
    for (int w = 0; w < n_works; w++) {
      double j = exact_jaccard(ds, work_sets[w]);
      std::string wid = "work" + std::to_string(w);
      if (j > cfg.threshold) oracle_matches.insert({wid, d.doc_id});
      if (manifest.count({wid, d.doc_id})) {
        if (!(j > 0.75)) bands_ok = false;
      } else if (d.doc_id.rfind("decoy" + std::to_string(w) + "_", 0) == 0) {
        if (!(j >= 0.3 && j <= 0.65)) bands_ok = false;
      }
    }
  }
  if (!bands_ok || oracle_matches != manifest) {
    verdict(1, name, false, "fixture construction failed its oracle bands");
    return;
  }

  double wall = 0.0;
  int rc = run_cli("scan --corpus " + path_of("c1_corpus.jsonl") + " --works " +
                       path_of("c1_works.jsonl") + " --eval " +
                       path_of("c1_eval.jsonl") + " --out-dir " + path_of("c1_out"),
                   &wall);
  if (rc != 0) {
    verdict(1, name, false, "scan exited " + std::to_string(rc));
    return;
  }
  std::set<std::pair<std::string, std::string>> got;
  std::ifstream matches(path_of("c1_out/matches.jsonl"));
  std::string line;
  while (std::getline(matches, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    got.insert(std::make_pair(j["work_id"].get<std::string>(),
                              j["doc_id"].get<std::string>()));
  }
  size_t tp = 0;
  for (const auto& p : got) tp += manifest.count(p);
  double precision = got.empty() ? 0.0 : double(tp) / double(got.size());
  double recall = double(tp) / double(manifest.size());
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "precision %.3f recall %.3f over %zu plants, %.1fs single core",
                precision, recall, manifest.size(), wall);
  verdict(1, name, precision == 1.0 && recall == 1.0 && wall < 60.0, detail);
}

void criterion_2_verbatim_recovery() {
  const char* name = "verbatim recovery with near-miss exclusion";
  SplitMix64 rng(0xc2);
  NormalizationPolicy policy;

  const int n_sentences = 1000;
  std::vector<std::string> sentences(n_sentences);
  std::string eval_content;
  for (int s = 0; s < n_sentences; s++) {
    sentences[s] = join(words_of(rng, 12));
    eval_content += utt_json("u" + std::to_string(s), sentences[s]);
  }

  std::set<std::pair<std::string, std::string>> plants;  // (utt, doc)
  std::vector<Document> docs;
  for (int d = 0; d < 10000; d++) {
    std::string id = "d" + std::to_string(d);
    std::string text = join(words_of(rng, 120));
    if (d < 50) {
      // Verbatim insertion of sentence d.
      text = join(words_of(rng, 40)) + " " + sentences[d] + " " +
             join(words_of(rng, 40));
      plants.insert({"u" + std::to_string(d), id});
    } else if (d < 100) {
      // One-word-edited near miss of sentence d (50..99).
      auto ws = tokenize_words(sentences[d]);
      ws[5] = "edited" + std::to_string(d);
      text = join(words_of(rng, 40)) + " " + join(ws) + " " +
             join(words_of(rng, 40));
    }
    docs.push_back({id, "fixture", text});
  }
  std::string corpus_content;
  for (const Document& d : docs) corpus_content += doc_json(d.doc_id, d.text);
  std::ofstream(path_of("c2_corpus.jsonl")) << corpus_content;
  std::ofstream(path_of("c2_eval.jsonl")) << eval_content;

  double wall = 0.0;
  int rc = run_cli("verbatim --corpus " + path_of("c2_corpus.jsonl") + " --eval " +
                       path_of("c2_eval.jsonl") + " --out-dir " + path_of("c2_out"),
                   &wall);
  if (rc != 0) {
    verdict(2, name, false, "verbatim exited " + std::to_string(rc));
    return;
  }
  std::set<std::pair<std::string, std::string>> got;
  std::ifstream matches(path_of("c2_out/matches.jsonl"));
  std::string line;
  while (std::getline(matches, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    got.insert(std::make_pair(j["utt_id"].get<std::string>(),
                              j["doc_id"].get<std::string>()));
  }

  // Naive per-pair substring oracle.
  std::set<std::pair<std::string, std::string>> oracle;
  for (const Document& d : docs) {
    std::string padded = " " + normalize_text(d.text, policy) + " ";
    for (int s = 0; s < n_sentences; s++) {
      std::string needle = " " + normalize_text(sentences[s], policy) + " ";
      if (padded.find(needle) != std::string::npos) {
        oracle.insert({"u" + std::to_string(s), d.doc_id});
      }
    }
  }

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu hits (expected 50), oracle agreement %s, %.1fs single core",
                got.size(), got == oracle ? "yes" : "NO", wall);
  verdict(2, name, got == plants && got == oracle && wall < 30.0, detail);
}

void criterion_3_minhash_fidelity() {
  const char* name = "minhash estimate fidelity over 200 pairs";
  // (size, overlap) pairs giving exact Jaccard 0.1 .. 0.9.
  const std::vector<std::pair<size_t, size_t>> targets = {
      {110, 20}, {120, 40}, {130, 60}, {140, 80}, {150, 100},
      {160, 120}, {170, 140}, {180, 160}, {190, 180}};
  double sum_abs = 0.0, max_abs = 0.0;
  int count = 0;
  for (int p = 0; p < 200; p++) {
    auto [size, overlap] = targets[p % targets.size()];
    auto [a, b] = pair_with_jaccard(size, overlap, 0x30000 + p);
    double exact = exact_jaccard(a, b);
    double est = estimate_jaccard(signature(a, 256, 0x40000 + p),
                                  signature(b, 256, 0x40000 + p));
    double err = std::abs(est - exact);
    sum_abs += err;
    max_abs = std::max(max_abs, err);
    count++;
  }
  double mean_abs = sum_abs / count;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "mean |err| %.4f (<=0.03), max %.4f (<=0.12)",
                mean_abs, max_abs);
  verdict(3, name, mean_abs <= 0.03 && max_abs <= 0.12, detail);
}

void criterion_4_s_curve() {
  const char* name = "lsh candidate rate matches 1-(1-j^r)^b";
  LshBandingParams params{32, 4};
  const uint32_t n_hashes = 128;
  struct Case {
    size_t size, overlap;
    double j;
  };
  const std::vector<Case> cases = {{130, 60, 0.3}, {170, 140, 0.7}, {190, 180, 0.9}};
  const int n_pairs = 1500;
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    // Reference value recomputed in extended precision.
    long double expected_ld = 1.0L - powl(1.0L - powl((long double)c.j, 4), 32);
    double expected = (double)expected_ld;
    if (std::abs(candidate_probability(c.j, 32, 4) - expected) > 1e-12) ok = false;

    int hits = 0;
    for (int p = 0; p < n_pairs; p++) {
      auto [a, b] = pair_with_jaccard(c.size, c.overlap, 0x50000 + p);
      MinHashSignature sa = signature(a, n_hashes, 0x60000 + p);
      MinHashSignature sb = signature(b, n_hashes, 0x60000 + p);
      LshIndex index(params, n_hashes, 0x60000 + p, {"x"}, {sa});
      if (!index.query(sb).empty()) hits++;
    }
    double rate = double(hits) / n_pairs;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "j=%.1f: %.3f vs %.3f; ", c.j, rate, expected);
    detail += buf;
    if (std::abs(rate - expected) > 0.05) ok = false;
  }
  verdict(4, name, ok, detail);
}

void criterion_5_nll_exactness() {
  const char* name = "word-normalized nll/ppl exactness";
  // Hand-summed 10-record fixture; all values binary-exact.
  std::vector<std::pair<double, uint64_t>> raw = {
      {-12.25, 4}, {-3.5, 1},  {-91.125, 30}, {-17.0, 6},  {-44.5, 13},
      {-8.875, 3}, {-26.0, 9}, {-5.625, 2},   {-61.25, 21}, {-33.375, 11}};
  std::vector<ScoreRecord> rs;
  for (size_t i = 0; i < raw.size(); i++) {
    rs.push_back({"u" + std::to_string(i), raw[i].first, raw[i].second,
                  raw[i].second, "m"});
  }
  long double lp = 0.0L, words = 0.0L;
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) {
    lp += it->first;
    words += it->second;
  }
  double expected = double(-lp / words);  // 303.5 / 100
  double nll = corpus_nll(rs);
  bool ok = std::abs(nll - expected) <= 1e-12 * std::abs(expected);

  double ppl100 = perplexity(std::log(100.0));
  ok = ok && std::abs(ppl100 - 100.0) <= 1e-12 * 100.0;

  // Uniform model over V symbols, tokens = words.
  const double V = 64.0;
  std::vector<ScoreRecord> uni;
  for (int i = 0; i < 20; i++) {
    uint64_t w = 3 + i % 9;
    uni.push_back({"s" + std::to_string(i), -double(w) * std::log(V), w, w, "m"});
  }
  double ppl_uniform = perplexity(corpus_nll(uni));
  ok = ok && std::abs(ppl_uniform - V) <= 1e-9;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "nll err %.2e, ppl(ln 100)=%.12f, uniform-%g ppl err %.2e", 
                std::abs(nll - expected), ppl100, V, std::abs(ppl_uniform - V));
  verdict(5, name, ok, detail);
}

void criterion_6_bootstrap() {
  const char* name = "bootstrap determinism and coverage";
  SplitMix64 rng(0xc6);

  // (a) Fixed-seed determinism, parallel vs serial, bitwise.
  std::vector<ScoreRecord> rs;
  for (int i = 0; i < 500; i++) {
    uint64_t w = 3 + rng.next_below(12);
    rs.push_back({"u" + std::to_string(i),
                  -double(w) * (1.5 + double(rng.next_below(100)) / 40.0), w, w,
                  "m"});
  }
  BootstrapResult r1 = bootstrap_ci(rs, 1000, 0xabcd);
  BootstrapResult r2 = bootstrap_ci(rs, 1000, 0xabcd);
  BootstrapResult r3 = bootstrap_ci_serial(rs, 1000, 0xabcd);
  bool deterministic = r1.lo == r2.lo && r1.hi == r2.hi && r1.point == r2.point &&
                       r1.lo == r3.lo && r1.hi == r3.hi && r1.point == r3.point &&
                       r1.replicates == 1000;

  // (b) Coverage: 500 trials, n = 1000, true PPL = exp(mu) by construction
  // (per-word nll ~ Normal(mu, sigma), word counts independent).
  const double mu = 2.0, sigma = 0.5;
  const double true_ppl = std::exp(mu);
  int covered = 0;
  const int n_trials = 500;
  for (int t = 0; t < n_trials; t++) {
    SplitMix64 trial_rng(derive_stream(0x77500, t));
    std::vector<ScoreRecord> data;
    data.reserve(1000);
    for (int i = 0; i < 1000; i++) {
      uint64_t w = 5 + trial_rng.next_below(11);
      // Box-Muller from two uniform draws.
      double u1 = (double(trial_rng.next() >> 11) + 0.5) / 9007199254740992.0;
      double u2 = (double(trial_rng.next() >> 11) + 0.5) / 9007199254740992.0;
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      double per_word_nll = mu + sigma * z;
      data.push_back({"u" + std::to_string(i), -double(w) * per_word_nll, w, w,
                      "m"});
    }
    BootstrapResult ci = bootstrap_ci(data, 1000, derive_stream(0x88100, t));
    if (ci.lo <= true_ppl && true_ppl <= ci.hi) covered++;
  }
  double coverage = double(covered) / n_trials;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "deterministic %s; coverage %.3f (>=0.93) with 1000 replicates, "
                "percentiles 2.5/97.5",
                deterministic ? "yes" : "NO", coverage);
  verdict(6, name, deterministic && coverage >= 0.93, detail);
}

void criterion_7_partition_delta() {
  const char* name = "leaked-only uplift shows through analyze";
  SplitMix64 rng(0xc7);
  std::string sa, sb, labs;
  sa = json{{"log_base", "e"}, {"model_id", "baseline"}}.dump() + "\n";
  sb = json{{"log_base", "e"}, {"model_id", "treatment"}}.dump() + "\n";
  for (int i = 0; i < 400; i++) {
    std::string id = "u" + std::to_string(i);
    bool leaked = i % 2 == 0;
    uint64_t w = 4 + rng.next_below(12);
    double per_word = 2.0 + double(rng.next_below(100)) / 100.0;
    double lp = -double(w) * per_word;
    double uplift = leaked ? 0.1 * double(w) : 0.0;  // constant per token
    json a{{"utt_id", id}, {"total_logprob", lp}, {"n_tokens_scored", w},
           {"n_words", w}};
    json b{{"utt_id", id}, {"total_logprob", lp + uplift},
           {"n_tokens_scored", w}, {"n_words", w}};
    sa += a.dump() + "\n";
    sb += b.dump() + "\n";
    labs += json{{"utt_id", id}, {"label", leaked ? "leaked" : "non_leaked"}}.dump() +
            "\n";
  }
  std::ofstream(path_of("c7_a.jsonl")) << sa;
  std::ofstream(path_of("c7_b.jsonl")) << sb;
  std::ofstream(path_of("c7_labels.jsonl")) << labs;

  int rc = run_cli("analyze --scores " + path_of("c7_a.jsonl") + " --scores " +
                   path_of("c7_b.jsonl") + " --labels " + path_of("c7_labels.jsonl") +
                   " --out-dir " + path_of("c7_out") + " --replicates 1000 --seed 11");
  if (rc != 0) {
    verdict(7, name, false, "analyze exited " + std::to_string(rc));
    return;
  }
  json cmp = json::parse(read_file(path_of("c7_out/comparison.json")));
  double leaked_delta = 0, leaked_hi = 0, nl_lo = 0, nl_hi = 0;
  for (const auto& d : cmp["deltas"]) {
    if (d["partition"] == "leaked") {
      leaked_delta = d["delta_ppl"];
      leaked_hi = d["ci_hi"];
    } else {
      nl_lo = d["ci_lo"];
      nl_hi = d["ci_hi"];
    }
  }
  bool note_present = false;
  for (const auto& n : cmp["notes"]) {
    std::string s = n;
    if (s.find("not reproducible") != std::string::npos) note_present = true;
  }
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "leaked delta %.3f (ci_hi %.3f < 0), non-leaked ci [%.3f, %.3f] "
                "contains 0, reproducibility note %s",
                leaked_delta, leaked_hi, nl_lo, nl_hi,
                note_present ? "present" : "MISSING");
  verdict(7, name,
          leaked_delta < 0 && leaked_hi < 0 && nl_lo <= 0 && 0 <= nl_hi &&
              note_present,
          detail);
}

void criterion_8_report_format() {
  const char* name = "reference-scale counts render correctly";
  // Pile-scale counts are not reproducible at desk scale; criteria 1-2
  // substitute. Here the report formatting itself is validated on the
  // reference numbers.
  bool ok = format_fraction(6873, 11126) == "0.6177" &&
            format_fraction(10388, 32796) == "0.3167";
  // End-to-end: a summary built from fixture data renders fraction fields
  // with the same formatter (checked through the CLI in criteria 1-2 runs).
  json c1 = json::parse(read_file(path_of("c1_out/summary.json")));
  ok = ok && c1["partition"].contains("leaked_fraction_display");
  std::string got = c1["partition"]["leaked_fraction_display"];
  ok = ok && got.size() == 6 && got[1] == '.';
  verdict(8, name, ok,
          "6873/11126 -> " + format_fraction(6873, 11126) + ", 10388/32796 -> " +
              format_fraction(10388, 32796) + "; desk-scale substitution stated");
}

void criterion_9_ngram_sanity() {
  const char* name = "n-gram normalization, generalization, and scoring";
  SplitMix64 rng(0xc9);

  // Fixture with < 50 types.
  std::vector<std::vector<std::string>> train;
  for (int s = 0; s < 150; s++) {
    std::vector<std::string> sent;
    size_t len = 3 + rng.next_below(9);
    for (size_t i = 0; i < len; i++) {
      sent.push_back("t" + std::to_string(rng.next_below(40)));
    }
    train.push_back(sent);
  }
  NgramModel model = train_ngram(4, train);

  // (a) Exhaustive normalization per context.
  bool norm_ok = true;
  double worst = 0.0;
  std::vector<uint32_t> outcome_ids;
  for (uint32_t id = 0; id < model.vocab().size(); id++) {
    if (id != Vocab::kBos) outcome_ids.push_back(id);
  }
  for (uint32_t m = 1; m <= 4 && norm_ok; m++) {
    for (const auto& [key, table] : model.level(m)) {
      (void)table;
      std::vector<uint32_t> ctx = unpack_ids(key);
      double sum = 0.0;
      for (uint32_t w : outcome_ids) sum += model.prob(ctx, w);
      worst = std::max(worst, std::abs(sum - 1.0));
      if (std::abs(sum - 1.0) > 1e-9) {
        norm_ok = false;
        break;
      }
    }
  }

  // (b) Train vs held-out perplexity ordering, 20/20 fixtures.
  int order_ok = 0;
  for (int trial = 0; trial < 20; trial++) {
    SplitMix64 trng(derive_stream(0x99000, trial));
    auto gen_sent = [&](size_t lo, size_t hi) {
      std::vector<std::string> s;
      size_t len = lo + trng.next_below(hi - lo + 1);
      // Markov-ish: prefer the successor id to create learnable structure.
      uint32_t state = uint32_t(trng.next_below(30));
      for (size_t i = 0; i < len; i++) {
        s.push_back("t" + std::to_string(state));
        state = trng.next_below(4) ? (state * 7 + 3) % 30 : uint32_t(trng.next_below(30));
      }
      return s;
    };
    std::vector<std::vector<std::string>> tr, held;
    for (int i = 0; i < 200; i++) tr.push_back(gen_sent(3, 10));
    for (int i = 0; i < 80; i++) held.push_back(gen_sent(3, 10));
    NgramModel m3 = train_ngram(3, tr);
    auto ppl = [&](const std::vector<std::vector<std::string>>& ss) {
      double lp = 0.0;
      uint64_t w = 0;
      for (const auto& s : ss) {
        for (double x : m3.score_sentence(m3.ids_of_words(s), false)) lp += x;
        w += s.size();
      }
      return std::exp(-lp / double(w));
    };
    if (ppl(tr) <= ppl(held)) order_ok++;
  }

  // (c) Scoring matches a brute-force walk of the persisted tables.
  auto table_prob = [&](const std::vector<uint32_t>& context, uint32_t word) {
    double p = 1.0 / (model.vocab().size() - 1);  // uniform base
    // Build up from unigram level to the highest applicable level.
    for (uint32_t m = 1; m <= std::min<uint32_t>(4, uint32_t(context.size()) + 1);
         m++) {
      std::vector<uint32_t> ctx(context.end() - (m - 1), context.end());
      auto it = model.level(m).find(pack_ids(ctx));
      if (it == model.level(m).end() || it->second.total == 0) continue;
      const auto& t = it->second;
      double total = double(t.total);
      double d = model.discount(m);
      double c = double(t.count_of(word));
      double lambda = d * double(t.counts.size()) / total;
      p = std::max(c - d, 0.0) / total + lambda * p;
    }
    return p;
  };
  bool score_ok = true;
  double worst_score = 0.0;
  for (int s = 0; s < 40 && score_ok; s++) {
    std::vector<std::string> sent;
    size_t len = 1 + rng.next_below(9);
    for (size_t i = 0; i < len; i++) {
      sent.push_back(rng.next_below(5) ? "t" + std::to_string(rng.next_below(40))
                                       : "unseen" + std::to_string(i));
    }
    std::vector<uint32_t> ids = model.ids_of_words(sent);
    for (bool skip : {false, true}) {
      auto scores = model.score_sentence(ids, skip);
      for (size_t t = skip ? 1 : 0, si = 0; t < ids.size(); t++, si++) {
        std::vector<uint32_t> ctx;
        for (size_t i = t >= 3 ? t - 3 : 0; i < t; i++) ctx.push_back(ids[i]);
        while (ctx.size() < 3) ctx.insert(ctx.begin(), Vocab::kBos);
        double expected = std::log(table_prob(ctx, ids[t]));
        worst_score = std::max(worst_score, std::abs(scores[si] - expected));
        if (std::abs(scores[si] - expected) > 1e-10) {
          score_ok = false;
          break;
        }
      }
    }
  }

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "norm worst |sum-1| %.1e (<=1e-9); train<=held %d/20; "
                "table-walk worst err %.1e (<=1e-10)",
                worst, order_ok, worst_score);
  verdict(9, name, norm_ok && order_ok == 20 && score_ok, detail);
}

void criterion_10_restoration() {
  const char* name = "restoration round trip on 500 pairs";
  SplitMix64 rng(0xca);
  NormalizationPolicy policy;
  const std::vector<std::string> punct = {"", ",", ".", "!", "?", ";", ":"};

  std::string eval_content, sources_content;
  std::set<std::string> unsolvable;
  for (int p = 0; p < 500; p++) {
    // Source: 60 decorated, randomly cased tokens.
    std::vector<std::string> norm_words(60);
    std::vector<std::string> raw_tokens(60);
    for (int i = 0; i < 60; i++) {
      norm_words[i] = word_of(rng, 2000);
      std::string t = norm_words[i];
      if (rng.next_below(4) == 0) t[0] = char(t[0] - 'a' + 'A');
      raw_tokens[i] = t + punct[rng.next_below(punct.size())];
    }
    size_t start = rng.next_below(45);
    size_t len = 3 + rng.next_below(8);
    std::string transcript = join(std::vector<std::string>(
        norm_words.begin() + start, norm_words.begin() + start + len));
    std::string id = "p" + std::to_string(p);
    if (p < 25) {
      // Planted unsolvable: swap one transcript word for a token absent
      // from the source.
      auto ws = tokenize_words(transcript);
      ws[len / 2] = "zzqx" + std::to_string(p);
      transcript = join(ws);
      unsolvable.insert(id);
    }
    sources_content += doc_json("src_" + id, join(raw_tokens));
    eval_content += utt_json(id, transcript, "src_" + id);
  }
  std::ofstream(path_of("c10_eval.jsonl")) << eval_content;
  std::ofstream(path_of("c10_sources.jsonl")) << sources_content;

  int rc = run_cli("restore --eval " + path_of("c10_eval.jsonl") + " --sources " +
                   path_of("c10_sources.jsonl") + " --out-dir " + path_of("c10_out"));
  if (rc != 0) {
    verdict(10, name, false, "restore exited " + std::to_string(rc));
    return;
  }

  // Round-trip every restored span; count failures.
  std::map<std::string, std::string> transcripts;
  {
    std::ifstream in(path_of("c10_eval.jsonl"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      transcripts[j["utt_id"]] = j["transcript"];
    }
  }
  size_t ok_count = 0, fail_count = 0, round_trip_bad = 0;
  std::set<std::string> failed_ids;
  std::ifstream in(path_of("c10_out/restored.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j["status"] == "ok") {
      ok_count++;
      std::string restored = j["restored"];
      if (normalize_text(restored, policy) !=
          normalize_text(transcripts[j["utt_id"]], policy)) {
        round_trip_bad++;
      }
    } else {
      fail_count++;
      failed_ids.insert(j["utt_id"]);
    }
  }
  bool ok = ok_count == 475 && fail_count == 25 && round_trip_bad == 0 &&
            failed_ids == unsolvable;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu/475 restored, %zu/25 failures on planted unsolvables, "
                "%zu round-trip violations",
                ok_count, fail_count, round_trip_bad);
  verdict(10, name, ok, detail);
}

}  // namespace

int main() {
  const char* bin = std::getenv("CONTAMCHECK_BIN");
  if (!bin) {
    std::fprintf(stderr, "CONTAMCHECK_BIN must point at the contamcheck binary\n");
    return 2;
  }
  g_bin = bin;
  g_dir = std::filesystem::temp_directory_path() /
          ("contam_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(g_dir);

  criterion_1_book_recovery();
  criterion_2_verbatim_recovery();
  criterion_3_minhash_fidelity();
  criterion_4_s_curve();
  criterion_5_nll_exactness();
  criterion_6_bootstrap();
  criterion_7_partition_delta();
  criterion_8_report_format();
  criterion_9_ngram_sanity();
  criterion_10_restoration();

  std::error_code ec;
  std::filesystem::remove_all(g_dir, ec);
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
