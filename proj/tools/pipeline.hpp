#pragma once

// Batch steps shared by subcommands and replication recipes.

#include <cstddef>
#include <string>
#include <vector>

#include "cli_support.hpp"

namespace cli {

struct Classified {
  std::vector<std::string> names;
  std::vector<std::size_t> decisions;
  std::vector<double> posteriors;  // n x K, row-major

  std::size_t k() const { return names.size(); }
  double max_posterior(std::size_t i) const;
  double entropy(std::size_t i) const;
};

Classified classify_all(const nbb_classifier* c, const std::vector<const char*>& reads, unsigned workers);

struct Profiles {
  std::vector<nbb_profile> rows;
  std::vector<std::size_t> counts;  // n x K, row-major
};

Profiles profile_all(const nbb_classifier* c, const std::vector<const char*>& reads, int include_n,
                     unsigned workers);

// Maps each read's "src=<label>" to a class index by name; throws when a
// label is missing or unknown.
std::vector<std::size_t> truth_indices(const nbb_records* r, const std::vector<std::string>& names);

RecordsPtr synthetic_reads(const std::vector<const nbb_model*>& models, const std::vector<std::size_t>& genome_lengths,
                           const nbb_read_config& cfg, unsigned workers);
RecordsPtr synthetic_reads(const std::vector<ModelPtr>& models, const std::vector<std::size_t>& genome_lengths,
                           const nbb_read_config& cfg, unsigned workers);

// Bundled reference lengths when exactly three models are given.
std::vector<std::size_t> default_genome_lengths(std::size_t n_models, const std::string& explicit_list);

std::vector<double> column_doubles(const CsvTable& t, const std::string& name);

}  // namespace cli
