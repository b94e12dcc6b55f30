#include "pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace cli {

double Classified::max_posterior(std::size_t i) const {
  const double* p = posteriors.data() + i * k();
  return *std::max_element(p, p + k());
}

double Classified::entropy(std::size_t i) const {
  const double* p = posteriors.data() + i * k();
  double h = 0.0;
  for (std::size_t j = 0; j < k(); ++j) {
    if (p[j] > 0.0) h -= p[j] * std::log(p[j]);
  }
  return h;
}

Classified classify_all(const nbb_classifier* c, const std::vector<const char*>& reads, unsigned workers) {
  Classified out;
  out.names = class_names(c);
  out.decisions.resize(reads.size());
  out.posteriors.resize(reads.size() * out.k());
  check(nbb_classify_batch(c, reads.data(), reads.size(), workers, out.decisions.data(), out.posteriors.data()));
  return out;
}

Profiles profile_all(const nbb_classifier* c, const std::vector<const char*>& reads, int include_n,
                     unsigned workers) {
  Profiles out;
  out.rows.resize(reads.size());
  out.counts.resize(reads.size() * nbb_classifier_num_classes(c));
  check(nbb_neighbor_profiles(c, reads.data(), reads.size(), include_n, workers, out.rows.data(),
                              out.counts.data()));
  return out;
}

std::vector<std::size_t> truth_indices(const nbb_records* r, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nbb_records_count(r); ++i) {
    const std::string id = nbb_records_id(r, i);
    const std::string label = source_label(id);
    const auto it = std::find(names.begin(), names.end(), label);
    if (it == names.end()) throw InputError("read '" + id + "' has no source label matching a class");
    out.push_back(static_cast<std::size_t>(it - names.begin()));
  }
  return out;
}

RecordsPtr synthetic_reads(const std::vector<ModelPtr>& models, const std::vector<std::size_t>& genome_lengths,
                           const nbb_read_config& cfg, unsigned workers) {
  std::vector<const nbb_model*> raw;
  for (const auto& m : models) raw.push_back(m.get());
  return synthetic_reads(raw, genome_lengths, cfg, workers);
}

RecordsPtr synthetic_reads(const std::vector<const nbb_model*>& raw, const std::vector<std::size_t>& genome_lengths,
                           const nbb_read_config& cfg, unsigned workers) {
  if (genome_lengths.size() != raw.size()) throw UsageError("need one genome length per model");
  nbb_records* r = nullptr;
  check(nbb_synthetic_reads(raw.data(), genome_lengths.data(), raw.size(), &cfg, workers, &r));
  return RecordsPtr(r);
}

std::vector<std::size_t> default_genome_lengths(std::size_t n_models, const std::string& explicit_list) {
  if (!explicit_list.empty()) return parse_size_list(explicit_list);
  if (n_models != 3) throw UsageError("--genome-lengths is required unless exactly three models are given");
  return {nbb_bundled_genome_length(NBB_GENOME_ADENO), nbb_bundled_genome_length(NBB_GENOME_COVID),
          nbb_bundled_genome_length(NBB_GENOME_SARS)};
}

std::vector<double> column_doubles(const CsvTable& t, const std::string& name) {
  const std::size_t c = t.col(name);
  std::vector<double> out;
  for (const auto& row : t.rows) {
    try {
      out.push_back(std::stod(row[c]));
    } catch (const std::exception&) {
      throw InputError("column '" + name + "' holds a non-numeric value '" + row[c] + "'");
    }
  }
  return out;
}

}  // namespace cli
