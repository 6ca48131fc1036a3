#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "contam/text.hpp"

namespace contam {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to rerun a command byte-for-byte: the command, all
// effective parameters, and digests of every input file. Embedded into
// every report; reports carry no timestamps so identical manifests produce
// identical bytes.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, std::string> input_digests;  // path -> hex digest

  void add_input(const std::string& path);
  nlohmann::json to_json() const;
};

// Streamed non-cryptographic 64-bit digest of a file, hex encoded.
std::string file_digest(const std::string& path);

std::string hex64(uint64_t v);

// Fixed four-decimal rendering used for fraction fields in summaries,
// e.g. 6873/11126 -> "0.6177".
std::string format_fraction(uint64_t numerator, uint64_t denominator);

nlohmann::json policy_json(const NormalizationPolicy& policy);

// Writes a JSON document with sorted keys, two-space indent and a trailing
// newline; the canonical report serialization.
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace contam
