#include "contam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "contam/error.hpp"
#include "contam/hash.hpp"
#include "contam/parallel.hpp"

namespace contam {

using nlohmann::json;

double corpus_nll(std::span<const ScoreRecord> records) {
  if (records.empty()) throw InputError("no score records");
  double logprob_sum = 0.0;
  uint64_t word_sum = 0;
  for (const ScoreRecord& r : records) {
    if (r.model_id != records.front().model_id) {
      throw InputError("corpus_nll called with records from several models");
    }
    logprob_sum += r.total_logprob;
    word_sum += r.n_words;
  }
  if (word_sum == 0) throw InputError("total word count is zero");
  return -logprob_sum / static_cast<double>(word_sum);
}

namespace {

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  double rank = q * static_cast<double>(values.size() - 1);
  size_t lo = static_cast<size_t>(rank);
  size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = rank - static_cast<double>(lo);
  // Equal bracketing order statistics return exactly that value; the
  // interpolation below could otherwise drift a ulp on constant arrays.
  if (values[lo] == values[hi]) return values[lo];
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double resampled_ppl(std::span<const ScoreRecord> records, SplitMix64& rng,
                     std::vector<size_t>& idx) {
  const size_t n = records.size();
  idx.resize(n);
  for (size_t t = 0; t < n; t++) idx[t] = rng.next_below(n);
  double lp = 0.0;
  uint64_t words = 0;
  for (size_t t : idx) {
    lp += records[t].total_logprob;
    words += records[t].n_words;
  }
  return std::exp(-lp / static_cast<double>(words));
}

template <typename ForLoop>
BootstrapResult bootstrap_impl(std::span<const ScoreRecord> records,
                               uint32_t replicates, uint64_t seed,
                               ForLoop&& loop) {
  if (records.size() < 2) throw InputError("bootstrap needs >= 2 records");
  if (replicates == 0) throw InputError("bootstrap needs >= 1 replicate");
  std::vector<double> stats(replicates);
  loop(static_cast<size_t>(replicates), [&](size_t j) {
    SplitMix64 rng(derive_stream(seed, j));
    std::vector<size_t> idx;
    stats[j] = resampled_ppl(records, rng, idx);
  });
  BootstrapResult res;
  res.point = perplexity(corpus_nll(records));
  res.lo = percentile(stats, 0.025);
  res.hi = percentile(stats, 0.975);
  res.replicates = replicates;
  res.seed = seed;
  if (!(res.lo <= res.point && res.point <= res.hi)) {
    throw InternalError("bootstrap interval does not bracket the point estimate");
  }
  return res;
}

}  // namespace

BootstrapResult bootstrap_ci(std::span<const ScoreRecord> records,
                             uint32_t replicates, uint64_t seed) {
  return bootstrap_impl(records, replicates, seed,
                        [](size_t n, auto&& f) { parallel_for(n, f); });
}

BootstrapResult bootstrap_ci_serial(std::span<const ScoreRecord> records,
                                    uint32_t replicates, uint64_t seed) {
  return bootstrap_impl(records, replicates, seed,
                        [](size_t n, auto&& f) { serial_for(n, f); });
}

namespace {

struct PairedPartition {
  std::string name;
  std::vector<ScoreRecord> a;  // sorted by utt_id, aligned with b
  std::vector<ScoreRecord> b;
};

double ratio_ppl(std::span<const ScoreRecord> records,
                 std::span<const size_t> idx) {
  double lp = 0.0;
  uint64_t words = 0;
  for (size_t t : idx) {
    lp += records[t].total_logprob;
    words += records[t].n_words;
  }
  return std::exp(-lp / static_cast<double>(words));
}

}  // namespace

PartitionComparison compare_partitions(
    std::span<const ScoreRecord> model_a, std::span<const ScoreRecord> model_b,
    const std::map<std::string, std::string>& partition_of_utt,
    uint32_t replicates, uint64_t seed, bool paired) {
  // Coverage check: both models must score exactly the same utterances.
  std::map<std::string, const ScoreRecord*> by_id_a, by_id_b;
  for (const ScoreRecord& r : model_a) by_id_a[r.utt_id] = &r;
  for (const ScoreRecord& r : model_b) by_id_b[r.utt_id] = &r;
  std::string missing;
  int n_missing = 0;
  for (const auto& [id, r] : by_id_a) {
    (void)r;
    if (!by_id_b.count(id)) {
      missing += (n_missing++ ? ", " : "") + id;
      if (n_missing >= 20) break;
    }
  }
  for (const auto& [id, r] : by_id_b) {
    (void)r;
    if (!by_id_a.count(id)) {
      missing += (n_missing++ ? ", " : "") + id;
      if (n_missing >= 20) break;
    }
  }
  if (n_missing > 0) {
    throw InputError("models do not cover the same utterances: " + missing);
  }

  const std::vector<std::string> partition_names = {"leaked", "non_leaked"};
  std::vector<PairedPartition> parts(partition_names.size());
  for (size_t p = 0; p < partition_names.size(); p++) {
    parts[p].name = partition_names[p];
  }
  for (const auto& [id, ra] : by_id_a) {
    auto it = partition_of_utt.find(id);
    if (it == partition_of_utt.end()) {
      throw InputError("utterance '" + id + "' has no partition label");
    }
    size_t p;
    if (it->second == "leaked") {
      p = 0;
    } else if (it->second == "non_leaked") {
      p = 1;
    } else {
      throw InputError("unknown partition label '" + it->second + "'");
    }
    parts[p].a.push_back(*ra);
    parts[p].b.push_back(*by_id_b[id]);
  }

  PartitionComparison cmp;
  cmp.replicates = replicates;
  cmp.seed = seed;
  std::vector<ComparisonCell> cells_a, cells_b;

  for (size_t p = 0; p < parts.size(); p++) {
    const PairedPartition& part = parts[p];
    if (part.a.empty()) continue;
    if (part.a.size() < 2) {
      throw InputError("partition '" + part.name + "' has fewer than 2 sentences");
    }
    const size_t n = part.a.size();
    const uint64_t part_seed = derive_stream(seed, p);

    std::vector<double> ppl_a(replicates), ppl_b(replicates), delta(replicates);
    parallel_for(replicates, [&](size_t j) {
      SplitMix64 rng_a(derive_stream(part_seed, j));
      std::vector<size_t> idx(n);
      for (size_t t = 0; t < n; t++) idx[t] = rng_a.next_below(n);
      ppl_a[j] = ratio_ppl(part.a, idx);
      if (!paired) {
        SplitMix64 rng_b(derive_stream(derive_stream(part_seed, 2), j));
        for (size_t t = 0; t < n; t++) idx[t] = rng_b.next_below(n);
      }
      ppl_b[j] = ratio_ppl(part.b, idx);
      delta[j] = ppl_b[j] - ppl_a[j];
    });

    double point_a = perplexity(corpus_nll(part.a));
    double point_b = perplexity(corpus_nll(part.b));

    ComparisonCell cell_a{part.a.front().model_id, part.name, n, point_a,
                          {point_a, percentile(ppl_a, 0.025),
                           percentile(ppl_a, 0.975), replicates, part_seed}};
    ComparisonCell cell_b{part.b.front().model_id, part.name, n, point_b,
                          {point_b, percentile(ppl_b, 0.025),
                           percentile(ppl_b, 0.975), replicates, part_seed}};

    DeltaCell d;
    d.partition = part.name;
    d.delta = point_b - point_a;
    d.ci = {d.delta, percentile(delta, 0.025), percentile(delta, 0.975),
            replicates, part_seed};
    d.paired = paired;

    for (const BootstrapResult* r : {&cell_a.ci, &cell_b.ci, &d.ci}) {
      if (!(r->lo <= r->point && r->point <= r->hi)) {
        throw InternalError(
            "bootstrap interval does not bracket the point estimate: lo=" +
            std::to_string(r->lo) + " point=" + std::to_string(r->point) +
            " hi=" + std::to_string(r->hi) + " partition=" + part.name);
      }
    }
    cells_a.push_back(std::move(cell_a));
    cells_b.push_back(std::move(cell_b));
    cmp.deltas.push_back(std::move(d));
  }

  cmp.cells.insert(cmp.cells.end(), cells_a.begin(), cells_a.end());
  cmp.cells.insert(cmp.cells.end(), cells_b.begin(), cells_b.end());
  return cmp;
}

namespace {

double log_base_factor(const json& header, const std::string& path) {
  auto it = header.find("log_base");
  if (it == header.end()) {
    throw InputError("score file header is missing log_base", path, 1);
  }
  if (it->is_string()) {
    std::string s = it->get<std::string>();
    if (s == "e") return 1.0;
    if (s == "2") return std::log(2.0);
    if (s == "10") return std::log(10.0);
    throw InputError("unsupported log_base '" + s + "'", path, 1);
  }
  if (it->is_number()) {
    double b = it->get<double>();
    if (b <= 0.0 || b == 1.0) throw InputError("invalid log_base", path, 1);
    return std::log(b);
  }
  throw InputError("log_base must be a string or number", path, 1);
}

}  // namespace

std::vector<ScoreRecord> load_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open score file: " + path, path);
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) {
    throw InputError("empty score file", path);
  }
  lineno++;
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    throw InputError("malformed score file header", path, 1);
  }
  const double factor = log_base_factor(header, path);
  std::string default_model;
  if (header.contains("model_id") && header["model_id"].is_string()) {
    default_model = header["model_id"].get<std::string>();
  }

  std::vector<ScoreRecord> records;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw InputError("malformed score record", path, lineno);
    }
    ScoreRecord r;
    if (!j.contains("utt_id") || !j["utt_id"].is_string()) {
      throw InputError("score record missing utt_id", path, lineno);
    }
    r.utt_id = j["utt_id"].get<std::string>();
    if (!j.contains("total_logprob") || !j["total_logprob"].is_number()) {
      throw InputError("score record missing total_logprob", path, lineno);
    }
    r.total_logprob = j["total_logprob"].get<double>() * factor;
    if (!j.contains("n_words") || !j["n_words"].is_number_unsigned()) {
      throw InputError("score record missing n_words", path, lineno);
    }
    r.n_words = j["n_words"].get<uint64_t>();
    if (j.contains("n_tokens_scored")) {
      if (!j["n_tokens_scored"].is_number_unsigned()) {
        throw InputError("n_tokens_scored must be a nonnegative integer", path,
                         lineno);
      }
      r.n_tokens_scored = j["n_tokens_scored"].get<uint64_t>();
    }
    r.model_id = j.contains("model_id") && j["model_id"].is_string()
                     ? j["model_id"].get<std::string>()
                     : default_model;
    if (r.total_logprob > 0.0) {
      throw InputError("total_logprob must be <= 0", path, lineno);
    }
    if (r.n_words == 0) {
      throw InputError("n_words must be >= 1", path, lineno);
    }
    if (r.model_id.empty()) {
      throw InputError("score record has no model_id", path, lineno);
    }
    if (!seen.insert(r.utt_id).second) {
      throw InputError("duplicate utt_id '" + r.utt_id + "'", path, lineno);
    }
    records.push_back(std::move(r));
  }
  if (records.empty()) throw InputError("score file has no records", path);
  return records;
}

void save_score_file(const std::string& path,
                     std::span<const ScoreRecord> records) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write score file: " + path, path);
  json header;
  header["log_base"] = "e";
  if (!records.empty()) header["model_id"] = records.front().model_id;
  out << header.dump() << "\n";
  for (const ScoreRecord& r : records) {
    json j;
    j["utt_id"] = r.utt_id;
    j["total_logprob"] = r.total_logprob;
    j["n_tokens_scored"] = r.n_tokens_scored;
    j["n_words"] = r.n_words;
    j["model_id"] = r.model_id;
    out << j.dump() << "\n";
  }
  if (!out) throw InputError("short write to score file: " + path, path);
}

}  // namespace contam
