#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuskit/io.hpp"

namespace fuskit::verify {

/// One corpus file: a fusion-system description tested at each listed prime.
/// `expected` maps a prime to an object of {key: {"value", "provenance", ...}}.
struct CorpusEntry {
  std::string name;
  std::filesystem::path path;
  io::Json raw;
  std::vector<std::size_t> primes;
  std::vector<std::size_t> models;  // primes at which the group is shipped as a model
  std::map<std::size_t, io::Json> expected;
};

/// Provenance markers accepted on expected values.
inline constexpr const char* kProvenancePublished = "published";
inline constexpr const char* kProvenanceOracle = "derived-oracle";

CorpusEntry entry_from_json(const io::Json& j, const std::filesystem::path& path);
CorpusEntry load_entry(const std::filesystem::path& path);
/// Top-level *.json files of `dir`, sorted by entry name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);
/// The fusion spec of an entry at prime p.
io::FusionSpec entry_spec(const CorpusEntry& entry, std::size_t p);

struct Witness {
  std::string entry;
  std::size_t p = 0;
  std::string detail;
  io::Json data;       // subgroups as element-id lists, morphisms as iso records
  std::string replay;  // CLI command reproducing the failure
};

struct TheoremResult {
  std::string id;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::vector<Witness> failures;
  double elapsed_ms = 0;
};

struct Report {
  std::vector<TheoremResult> theorems;  // sorted by id
  bool ok() const;
};

struct Options {
  std::optional<std::string> theorem;
  std::optional<std::string> entry;
  std::uint64_t seed = 1;
};

/// Registered suite ids, sorted.
std::vector<std::string> theorem_ids();

/// Throws ValidationError for an unknown theorem or entry filter.
Report run_verification(const std::filesystem::path& dir, const Options& options);
Report run_verification(const std::vector<CorpusEntry>& corpus, const Options& options,
                        const std::string& corpus_label);

/// {"version": 1, "theorems": [...]}; elapsed times only when `timing`.
io::Json report_to_json(const Report& report, bool timing = false);
/// Compact one-line form with "version" first.
std::string report_to_json_text(const Report& report, bool timing = false);
Report report_from_json(const io::Json& j);
/// One line per theorem.
std::string report_to_text(const Report& report, bool timing = false);

}  // namespace fuskit::verify
