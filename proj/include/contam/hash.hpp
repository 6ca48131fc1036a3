#pragma once

// Seeded 64-bit hashing and the deterministic RNG contract.
//
// Everything downstream (shingle fingerprints, MinHash permutations, band
// keys, bootstrap resampling) derives from the primitives in this header,
// so their exact definitions are part of the file and report contracts:
//
//   mix64(z)            splitmix64 finalizer (Vigna).
//   hash_bytes(p,n,s)   FNV-1a/64 with the seed folded into the offset
//                       basis, passed through mix64.
//   derive_stream(s,k)  substream seed: mix64(s ^ (k+1)*0x9e3779b97f4a7c15).
//   SplitMix64          the named portable generator; state advances by the
//                       golden-ratio increment, output is mix64(state).
//   bounded(x,n)        Lemire reduction: high 64 bits of x*n.
//
// Bootstrap replicate j of a run with master seed S draws its indices from
// SplitMix64(derive_stream(S, j)); a second implementation following this
// paragraph reproduces the draws bit for bit.

#include <cstdint>
#include <cstring>
#include <string_view>

namespace contam {

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t hash_bytes(const char* data, size_t n, uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (size_t i = 0; i < n; i++) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

inline uint64_t hash_bytes(std::string_view s, uint64_t seed) {
  return hash_bytes(s.data(), s.size(), seed);
}

// Seed of substream k of master seed s.
constexpr uint64_t derive_stream(uint64_t s, uint64_t k) {
  return mix64(s ^ ((k + 1) * kGolden));
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }
  // Uniform draw from [0, n) without modulo bias worth caring about.
  uint64_t next_below(uint64_t n) { return bounded(next(), n); }

  static uint64_t bounded(uint64_t x, uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(x) * n) >> 64);
  }

 private:
  uint64_t state_;
};

// Incremental FNV-1a for hashing a shingle window without materializing
// the joined string.
class ByteHasher {
 public:
  explicit ByteHasher(uint64_t seed) : h_(0xcbf29ce484222325ULL ^ seed) {}
  void update(std::string_view s) {
    for (char c : s) {
      h_ ^= static_cast<unsigned char>(c);
      h_ *= 0x100000001b3ULL;
    }
  }
  void update_byte(char c) {
    h_ ^= static_cast<unsigned char>(c);
    h_ *= 0x100000001b3ULL;
  }
  uint64_t digest() const { return mix64(h_); }

 private:
  uint64_t h_;
};

}  // namespace contam
