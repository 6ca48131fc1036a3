#include "contam/report.hpp"

#include <cstdio>
#include <fstream>

#include "contam/error.hpp"
#include "contam/hash.hpp"

namespace contam {

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path, path);
  ByteHasher h(0x66696c65ULL);
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h.update(std::string_view(buf, static_cast<size_t>(in.gcount())));
  }
  return hex64(h.digest());
}

void RunManifest::add_input(const std::string& path) {
  input_digests[path] = file_digest(path);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["tool_version"] = kToolVersion;
  j["parameters"] = parameters;
  j["inputs"] = input_digests;
  return j;
}

std::string format_fraction(uint64_t numerator, uint64_t denominator) {
  double f = denominator == 0
                 ? 0.0
                 : static_cast<double>(numerator) / static_cast<double>(denominator);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", f);
  return buf;
}

nlohmann::json policy_json(const NormalizationPolicy& policy) {
  nlohmann::json j;
  j["lowercase"] = policy.lowercase;
  j["strip_punctuation"] = policy.strip_punctuation;
  j["collapse_whitespace"] = policy.collapse_whitespace;
  j["unicode_fold"] = policy.unicode_fold;
  j["digest"] = hex64(policy.digest());
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write report file: " + path, path);
  out << doc.dump(2) << "\n";
  if (!out) throw InputError("short write to report file: " + path, path);
}

}  // namespace contam
