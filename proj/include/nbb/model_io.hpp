#pragma once

// JSON persistence for triplet models and classifier bundles, plus the three
// bundled virus-genome models.

#include <string>
#include <vector>

#include "nbb/triplet_model.hpp"

namespace nbb {

// {"label": ..., "alphabet": "ACGT", "triplets": {"AAA": p, ..., "TTT": p}}.
// Probabilities summing to within 1e-4 of 1 are renormalized; anything else
// is rejected.
TripletModel model_from_json(const std::string& text, const std::string& source = "<json>");
std::string model_to_json(const TripletModel& model);
TripletModel load_model_file(const std::string& path);
void save_model_file(const TripletModel& model, const std::string& path);

struct ClassifierBundle {
  std::vector<TripletModel> models;
  std::vector<double> prior;  // empty means uniform
};

// {"models": ["adeno.json", ...], "prior": [..]}; model paths are resolved
// relative to the bundle file.
ClassifierBundle load_bundle_file(const std::string& path);

enum class BundledGenome { kAdeno = 0, kCovid = 1, kSars = 2 };

TripletModel bundled_model(BundledGenome genome);
// Adeno, COVID, SARS in that order.
std::vector<TripletModel> bundled_models();
// Reference genome lengths the bundled models were estimated from.
std::size_t bundled_genome_length(BundledGenome genome);

}  // namespace nbb
