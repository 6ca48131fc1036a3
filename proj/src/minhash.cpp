#include "contam/minhash.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "contam/error.hpp"
#include "contam/hash.hpp"
#include "contam/parallel.hpp"

namespace contam {

namespace {

void fill_signature(const ShingleSet& shingles, uint32_t n_hashes,
                    uint64_t seed, std::span<const uint64_t> hash_seeds,
                    MinHashSignature& out) {
  out.n_hashes = n_hashes;
  out.seed = seed;
  if (shingles.degenerate()) {
    out.values.clear();
    return;
  }
  out.values.assign(n_hashes, std::numeric_limits<uint64_t>::max());
  for (uint64_t f : shingles.hashes) {
    for (uint32_t i = 0; i < n_hashes; i++) {
      uint64_t h = mix64(f ^ hash_seeds[i]);
      if (h < out.values[i]) out.values[i] = h;
    }
  }
}

std::vector<uint64_t> make_hash_seeds(uint32_t n_hashes, uint64_t seed) {
  std::vector<uint64_t> seeds(n_hashes);
  for (uint32_t i = 0; i < n_hashes; i++) seeds[i] = derive_stream(seed, i);
  return seeds;
}

}  // namespace

MinHashSignature signature(const ShingleSet& shingles, uint32_t n_hashes,
                           uint64_t seed) {
  if (shingles.degenerate()) {
    throw InputError("cannot sign a degenerate (empty) shingle set");
  }
  MinHashSignature sig;
  fill_signature(shingles, n_hashes, seed, make_hash_seeds(n_hashes, seed), sig);
  return sig;
}

std::vector<MinHashSignature> signature_batch(std::span<const ShingleSet> sets,
                                              uint32_t n_hashes, uint64_t seed) {
  std::vector<uint64_t> seeds = make_hash_seeds(n_hashes, seed);
  std::vector<MinHashSignature> sigs(sets.size());
  parallel_for(sets.size(), [&](size_t i) {
    fill_signature(sets[i], n_hashes, seed, seeds, sigs[i]);
  });
  return sigs;
}

std::vector<MinHashSignature> signature_batch_serial(
    std::span<const ShingleSet> sets, uint32_t n_hashes, uint64_t seed) {
  std::vector<uint64_t> seeds = make_hash_seeds(n_hashes, seed);
  std::vector<MinHashSignature> sigs(sets.size());
  serial_for(sets.size(), [&](size_t i) {
    fill_signature(sets[i], n_hashes, seed, seeds, sigs[i]);
  });
  return sigs;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.n_hashes != b.n_hashes || a.seed != b.seed) {
    throw InputError("signatures have mismatched n_hashes or seed");
  }
  if (a.values.empty() || b.values.empty()) {
    throw InputError("cannot estimate similarity of a degenerate signature");
  }
  uint32_t agree = 0;
  for (uint32_t i = 0; i < a.n_hashes; i++) {
    if (a.values[i] == b.values[i]) agree++;
  }
  return static_cast<double>(agree) / a.n_hashes;
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
  if (a.degenerate() && b.degenerate()) {
    throw InputError("Jaccard of two empty shingle sets is undefined");
  }
  size_t i = 0, j = 0, inter = 0;
  while (i < a.hashes.size() && j < b.hashes.size()) {
    if (a.hashes[i] == b.hashes[j]) {
      inter++;
      i++;
      j++;
    } else if (a.hashes[i] < b.hashes[j]) {
      i++;
    } else {
      j++;
    }
  }
  size_t uni = a.hashes.size() + b.hashes.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double candidate_probability(double j, uint32_t bands, uint32_t rows) {
  if (j < 0.0 || j > 1.0) throw InputError("jaccard must be in [0,1]");
  // log1p/expm1 keep the tails accurate.
  double jr = std::pow(j, static_cast<double>(rows));
  if (jr >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(bands) * std::log1p(-jr));
}

LshIndex::LshIndex(LshBandingParams params, uint32_t n_hashes, uint64_t seed,
                   std::vector<std::string> ids,
                   std::vector<MinHashSignature> signatures, bool parallel)
    : params_(params),
      n_hashes_(n_hashes),
      seed_(seed),
      ids_(std::move(ids)),
      sigs_(std::move(signatures)) {
  if (params_.n_hashes() != n_hashes_) {
    throw InputError("bands * rows must equal n_hashes");
  }
  if (ids_.size() != sigs_.size()) {
    throw InternalError("id/signature count mismatch");
  }
  for (const MinHashSignature& s : sigs_) {
    if (s.n_hashes != n_hashes_ || s.seed != seed_) {
      throw InputError("signature parameters do not match index parameters");
    }
    if (s.values.size() != n_hashes_) {
      throw InputError("degenerate signature cannot be indexed");
    }
  }
  bands_.resize(params_.bands);
  // Bands are independent maps; building them concurrently is the
  // per-band-merge scheme and yields the same index as the serial pass.
  auto build_band = [&](size_t band) {
    auto& bucket = bands_[band];
    for (size_t doc = 0; doc < sigs_.size(); doc++) {
      bucket[band_key(sigs_[doc], static_cast<uint32_t>(band))].push_back(
          static_cast<uint32_t>(doc));
    }
  };
  if (parallel) {
    parallel_for(params_.bands, build_band);
  } else {
    serial_for(params_.bands, build_band);
  }
}

uint64_t LshIndex::band_key(const MinHashSignature& sig, uint32_t band) const {
  const uint64_t* row = sig.values.data() + static_cast<size_t>(band) * params_.rows;
  return hash_bytes(reinterpret_cast<const char*>(row),
                    sizeof(uint64_t) * params_.rows, seed_ ^ (band + 1));
}

std::vector<uint32_t> LshIndex::query(const MinHashSignature& probe) const {
  if (probe.n_hashes != n_hashes_ || probe.seed != seed_) {
    throw InputError("probe parameters do not match index parameters");
  }
  if (probe.values.size() != n_hashes_) {
    throw InputError("degenerate probe signature");
  }
  std::vector<uint32_t> hits;
  for (uint32_t band = 0; band < params_.bands; band++) {
    auto it = bands_[band].find(band_key(probe, band));
    if (it == bands_[band].end()) continue;
    hits.insert(hits.end(), it->second.begin(), it->second.end());
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

namespace {

constexpr uint8_t kSignatureFileVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; i++) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; i++) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void save_signatures(const std::string& path, const SignatureFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write signature file: " + path, path);
  out.put(static_cast<char>(kSignatureFileVersion));
  put_u32(out, file.n_hashes);
  put_u64(out, file.seed);
  put_u32(out, file.bands);
  put_u32(out, file.rows);
  put_u32(out, file.shingle_k);
  put_u64(out, file.policy_digest);
  put_u64(out, file.ids.size());
  for (const std::string& id : file.ids) {
    put_u32(out, static_cast<uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (const MinHashSignature& sig : file.signatures) {
    if (sig.values.size() != file.n_hashes) {
      throw InternalError("signature row width does not match header");
    }
    for (uint64_t v : sig.values) put_u64(out, v);
  }
  if (!out) throw InputError("short write to signature file: " + path, path);
}

SignatureFile load_signatures(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open signature file: " + path, path);
  int version = in.get();
  if (version != kSignatureFileVersion) {
    throw InputError("unsupported signature file version", path);
  }
  SignatureFile file;
  file.n_hashes = get_u32(in);
  file.seed = get_u64(in);
  file.bands = get_u32(in);
  file.rows = get_u32(in);
  file.shingle_k = get_u32(in);
  file.policy_digest = get_u64(in);
  uint64_t count = get_u64(in);
  file.ids.resize(count);
  for (uint64_t i = 0; i < count; i++) {
    uint32_t len = get_u32(in);
    file.ids[i].resize(len);
    in.read(file.ids[i].data(), len);
  }
  file.signatures.resize(count);
  for (uint64_t i = 0; i < count; i++) {
    MinHashSignature& sig = file.signatures[i];
    sig.n_hashes = file.n_hashes;
    sig.seed = file.seed;
    sig.values.resize(file.n_hashes);
    for (uint32_t k = 0; k < file.n_hashes; k++) sig.values[k] = get_u64(in);
  }
  if (!in) throw InputError("truncated signature file: " + path, path);
  return file;
}

}  // namespace contam
