// contamcheck: corpus contamination audit toolkit.
//
// Subcommands:
//   scan         book-level near-duplicate matching + utterance attribution
//   verbatim     exact sentence search over a corpus (optional fuzzy mode)
//   ngram-train  train a Kneser-Ney n-gram model
//   score        score an eval set with a trained model
//   analyze      perplexity comparison with bootstrap confidence intervals
//   restore      recover cased/punctuated sentences from source works
//
// Exit codes: 0 success (finding nothing is a result, not an error),
// 2 input error, 3 internal invariant violation. Errors print one JSON
// object to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contam/corpus.hpp"
#include "contam/error.hpp"
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

struct CommonOpts {
  std::string policy = "fold,lowercase,strip-punct,collapse-ws";
  uint32_t shingle_k = 5;
  uint32_t num_hashes = 256;
  uint32_t bands = 32;
  uint32_t rows = 8;
  double threshold = 0.7;
  uint64_t seed = 42;
  uint32_t replicates = 1000;
  bool skip_first = false;
  std::string out_dir = "contamcheck_out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--policy", o.policy,
                  "normalization steps (comma list of fold, lowercase, "
                  "strip-punct, collapse-ws; or 'none')");
  cmd->add_option("--shingle-k", o.shingle_k, "shingle width in words");
  cmd->add_option("--num-hashes", o.num_hashes, "MinHash permutation count");
  cmd->add_option("--bands", o.bands, "LSH bands");
  cmd->add_option("--rows", o.rows, "LSH rows per band");
  cmd->add_option("--threshold", o.threshold, "duplicate Jaccard threshold");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--replicates", o.replicates, "bootstrap replicates");
  cmd->add_flag("--skip-first", o.skip_first, "do not score the first token");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
}

ScanConfig scan_config(const CommonOpts& o) {
  ScanConfig cfg;
  cfg.policy = NormalizationPolicy::parse(o.policy);
  cfg.shingle_k = o.shingle_k;
  cfg.n_hashes = o.num_hashes;
  cfg.banding = LshBandingParams{o.bands, o.rows};
  cfg.seed = o.seed;
  cfg.threshold = o.threshold;
  return cfg;
}

json common_parameters(const CommonOpts& o) {
  json p;
  p["policy"] = o.policy;
  p["shingle_k"] = o.shingle_k;
  p["num_hashes"] = o.num_hashes;
  p["bands"] = o.bands;
  p["rows"] = o.rows;
  p["threshold"] = o.threshold;
  p["seed"] = o.seed;
  p["replicates"] = o.replicates;
  p["skip_first"] = o.skip_first;
  return p;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  std::filesystem::create_directories(o.out_dir);
  return (std::filesystem::path(o.out_dir) / name).string();
}

// Word definition shared by every report: space-separated segments of the
// normalized text.
constexpr const char* kWordDefinition =
    "space-separated segments of policy-normalized text; punctuation never "
    "counts as a word";

json partition_json(const PartitionSummary& s) {
  json j;
  j["total"] = s.total;
  j["leaked"] = s.leaked;
  j["non_leaked"] = s.non_leaked;
  j["leaked_fraction"] = s.leaked_fraction;
  j["leaked_fraction_display"] = format_fraction(s.leaked, s.total);
  return j;
}

int run_scan(const CommonOpts& opts, const std::string& corpus_path,
             const std::string& works_path, const std::string& eval_path,
             const std::string& signatures_out) {
  ScanConfig cfg = scan_config(opts);
  std::vector<Document> works = load_documents(works_path);
  std::vector<EvalUtterance> eval_set = load_eval_set(eval_path);

  WorkMatchResult wm = match_works(works, corpus_path, cfg);
  AttributionResult attr = attribute_utterances(eval_set, works, wm, cfg.policy);
  std::vector<EvalUtterance> leaked, non_leaked;
  PartitionSummary summary = partition(eval_set, attr.labels, &leaked, &non_leaked);

  write_match_records(out_path(opts, "matches.jsonl"), wm.records);
  write_labels(out_path(opts, "labels.jsonl"), attr.labels);
  write_audit(out_path(opts, "audit.jsonl"), wm.audit);

  if (!signatures_out.empty()) {
    SignatureFile file;
    file.n_hashes = cfg.n_hashes;
    file.seed = cfg.seed;
    file.bands = cfg.banding.bands;
    file.rows = cfg.banding.rows;
    file.shingle_k = cfg.shingle_k;
    file.policy_digest = cfg.policy.digest();
    std::vector<ShingleSet> sets;
    for (const Document& w : works) {
      ShingleSet s = shingle_text(normalize_text(w.text, cfg.policy),
                                  cfg.shingle_k, cfg.seed);
      if (s.degenerate()) continue;
      file.ids.push_back(w.doc_id);
      sets.push_back(std::move(s));
    }
    file.signatures = signature_batch(sets, cfg.n_hashes, cfg.seed);
    save_signatures(signatures_out, file);
  }

  RunManifest manifest;
  manifest.command = "scan";
  manifest.parameters = common_parameters(opts);
  manifest.add_input(corpus_path);
  manifest.add_input(works_path);
  manifest.add_input(eval_path);

  json report;
  report["manifest"] = manifest.to_json();
  report["policy"] = policy_json(cfg.policy);
  report["word_definition"] = kWordDefinition;
  report["partition"] = partition_json(summary);
  report["work_matches"] = wm.records.size();
  report["matched_documents"] = wm.matched_doc_text.size();
  report["audit_entries"] = wm.audit.size();
  report["unknown_work_warnings"] = attr.unknown_work_warnings;
  report["notes"] = json::array(
      {"attribution requires the normalized transcript to occur inside the "
       "matched document text, which is stricter than book membership alone"});
  write_json_file(out_path(opts, "summary.json"), report);

  std::printf("scan: %zu work matches, %zu/%zu utterances leaked (%s)\n",
              wm.records.size(), summary.leaked, summary.total,
              format_fraction(summary.leaked, summary.total).c_str());
  return 0;
}

int run_verbatim(const CommonOpts& opts, const std::string& corpus_path,
                 const std::string& eval_path, bool fuzzy, uint32_t fuzzy_k) {
  ScanConfig cfg = scan_config(opts);
  std::vector<EvalUtterance> eval_set = load_eval_set(eval_path);

  VerbatimResult res = find_verbatim(eval_set, corpus_path, cfg);

  // Label from verbatim evidence.
  std::map<std::string, std::vector<std::string>> evidence;
  for (const MatchRecord& r : res.records) evidence[r.utt_id].push_back(r.match_id);
  std::vector<PartitionLabel> labels;
  for (const EvalUtterance& u : eval_set) {
    PartitionLabel l;
    l.utt_id = u.utt_id;
    auto it = evidence.find(u.utt_id);
    if (it != evidence.end()) {
      l.label = "leaked";
      l.evidence = it->second;
    } else {
      l.label = "non_leaked";
    }
    labels.push_back(std::move(l));
  }
  PartitionSummary summary = partition(eval_set, labels);

  write_match_records(out_path(opts, "matches.jsonl"), res.records);
  write_labels(out_path(opts, "labels.jsonl"), labels);
  write_audit(out_path(opts, "audit.jsonl"), res.audit);

  RunManifest manifest;
  manifest.command = "verbatim";
  manifest.parameters = common_parameters(opts);
  manifest.parameters["fuzzy"] = fuzzy;
  manifest.parameters["fuzzy_k"] = fuzzy_k;
  manifest.add_input(corpus_path);
  manifest.add_input(eval_path);

  json report;
  report["manifest"] = manifest.to_json();
  report["policy"] = policy_json(cfg.policy);
  report["word_definition"] = kWordDefinition;
  report["partition"] = partition_json(summary);
  report["verbatim_matches"] = res.records.size();
  report["audit_entries"] = res.audit.size();

  if (fuzzy) {
    ScanConfig fuzzy_cfg = cfg;
    fuzzy_cfg.shingle_k = fuzzy_k;
    VerbatimResult fres = find_fuzzy_sentences(eval_set, corpus_path, fuzzy_cfg);
    write_match_records(out_path(opts, "fuzzy_matches.jsonl"), fres.records);
    std::set<std::string> fuzzy_utts;
    for (const MatchRecord& r : fres.records) fuzzy_utts.insert(r.utt_id);
    json fz;
    fz["shingle_k"] = fuzzy_k;
    fz["threshold"] = cfg.threshold;
    fz["matches"] = fres.records.size();
    fz["utterances_matched"] = fuzzy_utts.size();
    fz["note"] =
        "fuzzy sentence matches are reported separately and never counted "
        "as verbatim hits";
    report["fuzzy"] = fz;
  }
  write_json_file(out_path(opts, "summary.json"), report);

  std::printf("verbatim: %zu matches, %zu/%zu utterances leaked (%s)\n",
              res.records.size(), summary.leaked, summary.total,
              format_fraction(summary.leaked, summary.total).c_str());
  return 0;
}

int run_ngram_train(const CommonOpts& opts, uint32_t order,
                    const std::string& text_path, const std::string& tokens_path,
                    const std::string& vocab_path) {
  NormalizationPolicy policy = NormalizationPolicy::parse(opts.policy);
  NgramModel model = [&]() {
    if (!text_path.empty()) {
      std::ifstream in(text_path);
      if (!in) throw InputError("cannot open text file: " + text_path, text_path);
      std::vector<std::vector<std::string>> sentences;
      std::string line;
      while (std::getline(in, line)) {
        std::vector<std::string> words =
            tokenize_words(normalize_text(line, policy));
        if (!words.empty()) sentences.push_back(std::move(words));
      }
      return train_ngram(order, sentences);
    }
    std::ifstream vin(vocab_path);
    if (!vin) throw InputError("cannot open vocab file: " + vocab_path, vocab_path);
    std::vector<std::string> vocab_words;
    std::string line;
    while (std::getline(vin, line)) {
      if (!line.empty()) vocab_words.push_back(line);
    }
    std::ifstream tin(tokens_path);
    if (!tin) throw InputError("cannot open token file: " + tokens_path, tokens_path);
    std::vector<std::vector<uint32_t>> sentences;
    long lineno = 0;
    while (std::getline(tin, line)) {
      lineno++;
      std::vector<uint32_t> ids;
      size_t pos = 0;
      while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') pos++;
        if (pos >= line.size()) break;
        size_t end = line.find(' ', pos);
        if (end == std::string::npos) end = line.size();
        try {
          ids.push_back(static_cast<uint32_t>(std::stoul(line.substr(pos, end - pos))));
        } catch (const std::exception&) {
          throw InputError("malformed token id", tokens_path, lineno);
        }
        pos = end;
      }
      if (!ids.empty()) sentences.push_back(std::move(ids));
    }
    return train_ngram_ids(order, sentences, vocab_words);
  }();

  std::string model_path = out_path(opts, "model.bin");
  model.save(model_path);

  RunManifest manifest;
  manifest.command = "ngram-train";
  manifest.parameters = common_parameters(opts);
  manifest.parameters["order"] = order;
  if (!text_path.empty()) manifest.add_input(text_path);
  if (!tokens_path.empty()) manifest.add_input(tokens_path);
  if (!vocab_path.empty()) manifest.add_input(vocab_path);

  json report;
  report["manifest"] = manifest.to_json();
  report["order"] = order;
  report["vocab_size"] = model.vocab().size();
  report["real_tokens"] = model.real_token_total();
  json discounts = json::array();
  for (uint32_t m = 1; m <= order; m++) discounts.push_back(model.discount(m));
  report["discounts"] = discounts;
  report["smoothing"] = "interpolated Kneser-Ney, discounts from count-of-counts";
  report["model_file"] = "model.bin";
  write_json_file(out_path(opts, "summary.json"), report);

  std::printf("ngram-train: order %u, %u vocab types, model at %s\n", order,
              model.vocab().size(), model_path.c_str());
  return 0;
}

int run_score(const CommonOpts& opts, const std::string& model_path,
              const std::string& eval_path, std::string model_id) {
  NormalizationPolicy policy = NormalizationPolicy::parse(opts.policy);
  NgramModel model = NgramModel::load(model_path);
  std::vector<EvalUtterance> eval_set = load_eval_set(eval_path);
  if (model_id.empty()) {
    model_id = "ngram-" + std::to_string(model.order()) + "g-" +
               file_digest(model_path).substr(0, 8);
  }

  std::vector<ScoreRecord> records;
  std::vector<AuditEntry> audit;
  for (const EvalUtterance& u : eval_set) {
    std::vector<std::string> words = tokenize_words(normalize_text(u.transcript, policy));
    if (words.empty()) {
      audit.push_back({"empty_sentence", u.utt_id, "empty after normalization"});
      continue;
    }
    std::vector<double> scores =
        model.score_sentence(model.ids_of_words(words), opts.skip_first);
    ScoreRecord r;
    r.utt_id = u.utt_id;
    for (double s : scores) r.total_logprob += s;
    r.n_tokens_scored = scores.size();
    r.n_words = words.size();
    r.model_id = model_id;
    records.push_back(std::move(r));
  }
  if (records.empty()) throw InputError("no scorable utterances in eval set");

  save_score_file(out_path(opts, "scores.jsonl"), records);
  write_audit(out_path(opts, "audit.jsonl"), audit);

  RunManifest manifest;
  manifest.command = "score";
  manifest.parameters = common_parameters(opts);
  manifest.parameters["model_id"] = model_id;
  manifest.add_input(model_path);
  manifest.add_input(eval_path);

  double nll = corpus_nll(records);
  json report;
  report["manifest"] = manifest.to_json();
  report["policy"] = policy_json(policy);
  report["word_definition"] = kWordDefinition;
  report["tokenization"] = "tokens are normalized words";
  report["model_id"] = model_id;
  report["sentences_scored"] = records.size();
  report["corpus_nll"] = nll;
  report["corpus_ppl"] = perplexity(nll);
  report["log_base"] = "e";
  write_json_file(out_path(opts, "summary.json"), report);

  std::printf("score: %zu sentences, corpus PPL %.4f\n", records.size(),
              perplexity(nll));
  return 0;
}

int run_analyze(const CommonOpts& opts, const std::vector<std::string>& score_paths,
                const std::string& labels_path, bool unpaired) {
  if (score_paths.size() != 2) {
    throw InputError("analyze needs exactly two --scores files (baseline, "
                     "treatment); delta = second - first");
  }
  std::vector<ScoreRecord> a = load_score_file(score_paths[0]);
  std::vector<ScoreRecord> b = load_score_file(score_paths[1]);
  std::map<std::string, std::string> label_of;
  for (const PartitionLabel& l : load_labels(labels_path)) {
    label_of[l.utt_id] = l.label;
  }

  PartitionComparison cmp =
      compare_partitions(a, b, label_of, opts.replicates, opts.seed, !unpaired);

  RunManifest manifest;
  manifest.command = "analyze";
  manifest.parameters = common_parameters(opts);
  manifest.parameters["paired"] = !unpaired;
  manifest.add_input(score_paths[0]);
  manifest.add_input(score_paths[1]);
  manifest.add_input(labels_path);

  json report;
  report["manifest"] = manifest.to_json();
  report["replicates"] = cmp.replicates;
  report["seed"] = cmp.seed;
  report["rng"] = "splitmix64; replicate j of partition p uses substream "
                  "derive(derive(seed, p), j)";
  report["resampling_unit"] = "sentence";
  json cells = json::array();
  for (const ComparisonCell& c : cmp.cells) {
    json jc;
    jc["model_id"] = c.model_id;
    jc["partition"] = c.partition;
    jc["n_sentences"] = c.n_sentences;
    jc["ppl"] = c.ppl;
    jc["ci_lo"] = c.ci.lo;
    jc["ci_hi"] = c.ci.hi;
    cells.push_back(jc);
  }
  report["cells"] = cells;
  json deltas = json::array();
  for (const DeltaCell& d : cmp.deltas) {
    json jd;
    jd["partition"] = d.partition;
    jd["delta_ppl"] = d.delta;
    jd["ci_lo"] = d.ci.lo;
    jd["ci_hi"] = d.ci.hi;
    jd["paired"] = d.paired;
    jd["direction"] = "treatment minus baseline";
    deltas.push_back(jd);
  }
  report["deltas"] = deltas;
  report["notes"] = json::array(
      {"results reflect only the supplied score files; published reference "
       "deltas require scores from actually pretrained models and are not "
       "reproducible from synthetic inputs"});
  write_json_file(out_path(opts, "comparison.json"), report);

  // Plot-ready CSV mirroring the perplexity table layout.
  std::ofstream csv(out_path(opts, "plot_data.csv"));
  if (!csv) throw InputError("cannot write plot_data.csv");
  csv << "model,partition,n_sentences,ppl,ci_lo,ci_hi\n";
  char buf[256];
  for (const ComparisonCell& c : cmp.cells) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%.10g,%.10g,%.10g\n",
                  c.model_id.c_str(), c.partition.c_str(), c.n_sentences, c.ppl,
                  c.ci.lo, c.ci.hi);
    csv << buf;
  }
  for (const DeltaCell& d : cmp.deltas) {
    std::snprintf(buf, sizeof(buf), "delta,%s,,%.10g,%.10g,%.10g\n",
                  d.partition.c_str(), d.delta, d.ci.lo, d.ci.hi);
    csv << buf;
  }
  csv.close();

  for (const DeltaCell& d : cmp.deltas) {
    std::printf("analyze: %s delta %.4f [%.4f, %.4f]\n", d.partition.c_str(),
                d.delta, d.ci.lo, d.ci.hi);
  }
  return 0;
}

int run_restore(const CommonOpts& opts, const std::string& eval_path,
                const std::string& sources_path) {
  NormalizationPolicy policy = NormalizationPolicy::parse(opts.policy);
  std::vector<EvalUtterance> eval_set = load_eval_set(eval_path);
  std::map<std::string, std::string> source_text;
  for (const Document& d : load_documents(sources_path)) {
    source_text[d.doc_id] = d.text;
  }

  size_t restored = 0, failed = 0, no_source = 0, ambiguous = 0;
  std::ofstream out(out_path(opts, "restored.jsonl"));
  if (!out) throw InputError("cannot write restored.jsonl");
  for (const EvalUtterance& u : eval_set) {
    json j;
    j["utt_id"] = u.utt_id;
    auto it = u.work_id.empty() ? source_text.end() : source_text.find(u.work_id);
    if (it == source_text.end()) {
      j["status"] = "no_source";
      no_source++;
    } else {
      RestoreResult r = restore_case_punct(u.transcript, it->second, policy);
      if (r.ok) {
        j["status"] = "ok";
        j["restored"] = r.restored;
        j["span_begin"] = r.begin;
        j["span_end"] = r.end;
        j["multiplicity"] = r.multiplicity;
        restored++;
        if (r.multiplicity > 1) ambiguous++;
      } else {
        j["status"] = "no_match";
        failed++;
      }
    }
    out << j.dump() << "\n";
  }
  out.close();

  RunManifest manifest;
  manifest.command = "restore";
  manifest.parameters = common_parameters(opts);
  manifest.add_input(eval_path);
  manifest.add_input(sources_path);

  json report;
  report["manifest"] = manifest.to_json();
  report["policy"] = policy_json(policy);
  report["restored"] = restored;
  report["no_match"] = failed;
  report["no_source"] = no_source;
  report["multiple_spans"] = ambiguous;
  report["total"] = eval_set.size();
  write_json_file(out_path(opts, "summary.json"), report);

  std::printf("restore: %zu ok, %zu no_match, %zu no_source of %zu\n", restored,
              failed, no_source, eval_set.size());
  return 0;
}

void print_json_error(const char* kind, const std::string& message,
                      const std::string& file = "", long line = 0) {
  json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (!file.empty()) j["error"]["file"] = file;
  if (line > 0) j["error"]["line"] = line;
  std::fprintf(stderr, "%s\n", j.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus contamination audit toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;

  std::string corpus_path, works_path, eval_path, signatures_out;
  CLI::App* scan = app.add_subcommand("scan", "book-level contamination scan");
  add_common(scan, opts);
  scan->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  scan->add_option("--works", works_path, "works JSONL (corpus format)")->required();
  scan->add_option("--eval", eval_path, "eval-set JSONL")->required();
  scan->add_option("--signatures-out", signatures_out,
                   "write work signatures to this binary sidecar");

  bool fuzzy = false;
  uint32_t fuzzy_k = 3;
  CLI::App* verbatim = app.add_subcommand("verbatim", "verbatim sentence search");
  add_common(verbatim, opts);
  verbatim->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  verbatim->add_option("--eval", eval_path, "eval-set JSONL")->required();
  verbatim->add_flag("--fuzzy", fuzzy, "also run fuzzy sentence matching");
  verbatim->add_option("--fuzzy-k", fuzzy_k, "shingle width for fuzzy mode");

  uint32_t order = 4;
  std::string text_path, tokens_path, vocab_path;
  CLI::App* train = app.add_subcommand("ngram-train", "train a Kneser-Ney model");
  add_common(train, opts);
  train->add_option("--order", order, "model order");
  train->add_option("--text", text_path, "training text, one sentence per line");
  train->add_option("--tokens", tokens_path,
                    "pre-tokenized id streams, one sentence per line");
  train->add_option("--vocab", vocab_path, "sidecar vocabulary, one token per line");

  std::string model_path, model_id;
  CLI::App* score = app.add_subcommand("score", "score an eval set");
  add_common(score, opts);
  score->add_option("--model", model_path, "trained model file")->required();
  score->add_option("--eval", eval_path, "eval-set JSONL")->required();
  score->add_option("--model-id", model_id, "model id for the score file");

  std::vector<std::string> score_paths;
  std::string labels_path;
  bool unpaired = false;
  CLI::App* analyze = app.add_subcommand("analyze", "partition comparison");
  add_common(analyze, opts);
  analyze->add_option("--scores", score_paths,
                      "two score files: baseline then treatment")
      ->required();
  analyze->add_option("--labels", labels_path, "labels JSONL")->required();
  analyze->add_flag("--unpaired", unpaired, "independent resampling per model");

  std::string sources_path;
  CLI::App* restore = app.add_subcommand("restore", "restore casing/punctuation");
  add_common(restore, opts);
  restore->add_option("--eval", eval_path, "eval-set JSONL")->required();
  restore->add_option("--sources", sources_path,
                      "source works JSONL keyed by work_id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      print_json_error("usage", e.what());
      return 2;
    }
    return app.exit(e);  // --help
  }

  try {
    if (scan->parsed()) {
      return run_scan(opts, corpus_path, works_path, eval_path, signatures_out);
    }
    if (verbatim->parsed()) {
      return run_verbatim(opts, corpus_path, eval_path, fuzzy, fuzzy_k);
    }
    if (train->parsed()) {
      if (text_path.empty() == (tokens_path.empty() || vocab_path.empty())) {
        throw InputError("ngram-train needs either --text or --tokens with --vocab");
      }
      return run_ngram_train(opts, order, text_path, tokens_path, vocab_path);
    }
    if (score->parsed()) {
      return run_score(opts, model_path, eval_path, model_id);
    }
    if (analyze->parsed()) {
      return run_analyze(opts, score_paths, labels_path, unpaired);
    }
    if (restore->parsed()) {
      return run_restore(opts, eval_path, sources_path);
    }
  } catch (const InputError& e) {
    print_json_error("input", e.what(), e.file(), e.line());
    return 2;
  } catch (const InternalError& e) {
    print_json_error("internal", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_json_error("internal", e.what());
    return 3;
  }
  return 0;
}
