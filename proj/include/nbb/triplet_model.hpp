#pragma once

// Second-order Markov ("triplet") models of DNA sequences.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbb/seqspace.hpp"

namespace nbb {

inline constexpr std::size_t kNumTriplets = 64;
inline constexpr std::size_t kNumPairs = 16;
inline constexpr std::size_t kNumBases = 4;

constexpr std::size_t pair_index(int b1, int b2) noexcept {
  return static_cast<std::size_t>(b1 * 4 + b2);
}
constexpr std::size_t triplet_index(int b1, int b2, int b3) noexcept {
  return static_cast<std::size_t>(b1 * 16 + b2 * 4 + b3);
}
// "AAA" .. "TTT" for indices 0..63.
std::string triplet_name(std::size_t index);
std::string pair_name(std::size_t index);

// Probability over the 64 triplets in lexicographic ACGT order.
class TripletDistribution {
 public:
  TripletDistribution() = default;

  // Entries must be >= 0 and sum to 1 within `tolerance`; they are then
  // rescaled to sum to exactly 1 (up to rounding).
  static TripletDistribution normalized(const std::array<double, kNumTriplets>& raw,
                                        double tolerance = 1e-9);
  static TripletDistribution uniform();

  const std::array<double, kNumTriplets>& probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

 private:
  std::array<double, kNumTriplets> probs_{};
};

struct PairDistribution {
  std::array<double, kNumPairs> probs{};
};

// Rows indexed by the preceding pair, columns by the next base. Rows whose
// pair has zero mass are undefined.
struct TransitionMatrix {
  std::array<std::array<double, kNumBases>, kNumPairs> rows{};
  std::array<bool, kNumPairs> defined{};
};

TripletDistribution estimate_triplet_distribution(const Sequence& g, double pseudocount = 0.0);
PairDistribution derive_pair(const TripletDistribution& p3);
TransitionMatrix derive_transition(const TripletDistribution& p3, const PairDistribution& p2);

// Hellinger distance between two discrete distributions on the same index
// set. Inputs must each sum to 1 within 1e-6.
double hellinger(std::span<const double> p, std::span<const double> q);
double hellinger(const TripletDistribution& p, const TripletDistribution& q);

class TripletModel {
 public:
  TripletModel(std::string label, TripletDistribution p3);

  const std::string& label() const noexcept { return label_; }
  const TripletDistribution& p3() const noexcept { return p3_; }
  const PairDistribution& p2() const noexcept { return p2_; }
  const TransitionMatrix& t3() const noexcept { return t3_; }

  // Natural logs of p2 and t3; zero probabilities (and undefined rows) map to
  // -infinity.
  const std::array<double, kNumPairs>& log_p2() const noexcept { return log_p2_; }
  const std::array<std::array<double, kNumBases>, kNumPairs>& log_t3() const noexcept {
    return log_t3_;
  }

 private:
  std::string label_;
  TripletDistribution p3_;
  PairDistribution p2_;
  TransitionMatrix t3_;
  std::array<double, kNumPairs> log_p2_{};
  std::array<std::array<double, kNumBases>, kNumPairs> log_t3_{};
};

// First pair from p2, then each base from the t3 row of its two predecessors.
Sequence simulate_genome(const TripletModel& model, std::size_t length, Rng& rng);

enum class NullSampling {
  // Each of the length-2 windows drawn independently from p3 (multinomial).
  kIndependentWindows,
  // Whole genomes simulated with simulate_genome, then re-estimated.
  kMarkovChain,
};

struct NullQuantileOptions {
  std::size_t replicates = 1000;
  double q = 0.999;
  std::uint64_t seed = 1;
  NullSampling sampling = NullSampling::kIndependentWindows;
  unsigned workers = 1;
};

// Hellinger distances between model.p3 and the re-estimated distribution of
// each replicate, sorted ascending. Replicate i is seeded with seed + i.
std::vector<double> null_distances(const TripletModel& model, std::size_t length,
                                   const NullQuantileOptions& options);

double null_quantile(const TripletModel& model, std::size_t length,
                     const NullQuantileOptions& options);

// Linear-interpolation quantile of an ascending sample (R's default, type 7).
double empirical_quantile(std::span<const double> sorted, double q);

}  // namespace nbb
