#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "contam/corpus.hpp"

namespace contam {

// Fixed-width signature of a shingle set. values[i] is the minimum of the
// ith seeded hash over the set's fingerprints; signatures are comparable
// only when n_hashes and seed agree.
struct MinHashSignature {
  uint32_t n_hashes = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> values;
};

// Hash i of the family: mix64(fingerprint ^ derive_stream(seed, i)).
MinHashSignature signature(const ShingleSet& shingles, uint32_t n_hashes,
                           uint64_t seed);

// Batch kernels. signature_batch runs the per-set loop under OpenMP;
// signature_batch_serial is the reference implementation, bit-identical.
// Degenerate sets yield empty signatures (values empty) so callers of the
// batch API can audit rather than abort mid-stream.
std::vector<MinHashSignature> signature_batch(std::span<const ShingleSet> sets,
                                              uint32_t n_hashes, uint64_t seed);
std::vector<MinHashSignature> signature_batch_serial(
    std::span<const ShingleSet> sets, uint32_t n_hashes, uint64_t seed);

// Fraction of agreeing components; unbiased estimator of Jaccard.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

// |A ∩ B| / |A ∪ B| over the fingerprint sets.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

// Probability that a pair at Jaccard j becomes a candidate under (b, r)
// banding: 1 - (1 - j^r)^b.
double candidate_probability(double j, uint32_t bands, uint32_t rows);

struct LshBandingParams {
  uint32_t bands = 32;
  uint32_t rows = 8;
  uint32_t n_hashes() const { return bands * rows; }
};

// Banded index over signatures. Immutable once built; queries are safe to
// run concurrently. A document lands in exactly `bands` buckets; any pair
// agreeing on all rows of some band always collides (band keys hash the
// row values, so equal rows give equal keys).
class LshIndex {
 public:
  LshIndex(LshBandingParams params, uint32_t n_hashes, uint64_t seed,
           std::vector<std::string> ids,
           std::vector<MinHashSignature> signatures, bool parallel = true);

  // Indices (into ids()) of every document sharing at least one full band
  // with the probe, sorted ascending.
  std::vector<uint32_t> query(const MinHashSignature& probe) const;

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<MinHashSignature>& signatures() const { return sigs_; }
  const LshBandingParams& params() const { return params_; }

 private:
  uint64_t band_key(const MinHashSignature& sig, uint32_t band) const;

  LshBandingParams params_;
  uint32_t n_hashes_;
  uint64_t seed_;
  std::vector<std::string> ids_;
  std::vector<MinHashSignature> sigs_;
  std::vector<std::unordered_map<uint64_t, std::vector<uint32_t>>> bands_;
};

// Binary signature sidecar. Little-endian; a version byte leads the header
// (n_hashes, seed, bands, rows, shingle k, policy digest).
struct SignatureFile {
  uint32_t n_hashes = 0;
  uint64_t seed = 0;
  uint32_t bands = 0;
  uint32_t rows = 0;
  uint32_t shingle_k = 0;
  uint64_t policy_digest = 0;
  std::vector<std::string> ids;
  std::vector<MinHashSignature> signatures;
};

void save_signatures(const std::string& path, const SignatureFile& file);
SignatureFile load_signatures(const std::string& path);

}  // namespace contam
