// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: MinHash signature batches, LSH index build, and
// bootstrap replicate evaluation. Results must be bit-identical; the
// benchmark reports throughput and verifies equality on every run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "contam/corpus.hpp"
#include "contam/hash.hpp"
#include "contam/minhash.hpp"
#include "contam/parallel.hpp"
#include "contam/stats.hpp"

using namespace contam;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<std::string> make_words(SplitMix64& rng, size_t n) {
  std::vector<std::string> words(n);
  for (auto& w : words) w = "w" + std::to_string(rng.next_below(30000));
  return words;
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-24s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s,
              equal ? "identical" : "MISMATCH");
  if (!equal) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
  std::printf("threads: %d, scale: %.2f\n", max_threads(), scale);

  SplitMix64 rng(0xbe7c4);

  // MinHash signatures over a batch of documents.
  {
    size_t n_docs = static_cast<size_t>(600 * scale);
    std::vector<ShingleSet> sets;
    sets.reserve(n_docs);
    for (size_t i = 0; i < n_docs; i++) {
      sets.push_back(shingle(make_words(rng, 400), 5, 9));
    }
    auto t0 = std::chrono::steady_clock::now();
    auto ser = signature_batch_serial(sets, 256, 9);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto par = signature_batch(sets, 256, 9);
    double tp = seconds_since(t0);
    bool equal = ser.size() == par.size();
    for (size_t i = 0; equal && i < ser.size(); i++) {
      equal = ser[i].values == par[i].values;
    }
    report("signature_batch", ts, tp, equal);

    // LSH index build over the same signatures.
    std::vector<std::string> ids(n_docs);
    for (size_t i = 0; i < n_docs; i++) ids[i] = "d" + std::to_string(i);
    t0 = std::chrono::steady_clock::now();
    LshIndex serial_index(LshBandingParams{32, 8}, 256, 9, ids, ser, false);
    ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    LshIndex parallel_index(LshBandingParams{32, 8}, 256, 9, ids, par, true);
    tp = seconds_since(t0);
    equal = true;
    for (size_t i = 0; equal && i < n_docs; i += 37) {
      equal = serial_index.query(ser[i]) == parallel_index.query(par[i]);
    }
    report("lsh_index_build", ts, tp, equal);
  }

  // Bootstrap replicates over a large score set.
  {
    size_t n_records = static_cast<size_t>(20000 * scale);
    uint32_t replicates = static_cast<uint32_t>(2000 * scale);
    std::vector<ScoreRecord> records(n_records);
    for (size_t i = 0; i < n_records; i++) {
      uint64_t words = 4 + rng.next_below(16);
      records[i] = {"u" + std::to_string(i),
                    -double(words) * (2.0 + double(rng.next_below(100)) / 50.0),
                    words, words, "bench"};
    }
    auto t0 = std::chrono::steady_clock::now();
    BootstrapResult ser = bootstrap_ci_serial(records, replicates, 7);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    BootstrapResult par = bootstrap_ci(records, replicates, 7);
    double tp = seconds_since(t0);
    report("bootstrap_replicates", ts, tp,
           ser.lo == par.lo && ser.hi == par.hi && ser.point == par.point);
  }

  return 0;
}
