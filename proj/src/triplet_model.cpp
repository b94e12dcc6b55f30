#include "nbb/triplet_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nbb/parallel.hpp"

namespace nbb {

namespace {

constexpr char kAcgt[] = "ACGT";
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

// Inverse-CDF draw from the first n entries of probs (which need not be
// exactly normalized).
template <typename Array>
std::size_t draw_index(const Array& probs, std::size_t n, double total, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace

std::string triplet_name(std::size_t index) {
  return {kAcgt[index / 16], kAcgt[(index / 4) % 4], kAcgt[index % 4]};
}

std::string pair_name(std::size_t index) { return {kAcgt[index / 4], kAcgt[index % 4]}; }

TripletDistribution TripletDistribution::normalized(const std::array<double, kNumTriplets>& raw,
                                                    double tolerance) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumTriplets; ++i) {
    require(std::isfinite(raw[i]) && raw[i] >= 0.0, ErrorCode::kDomain,
            "triplet probability for " + triplet_name(i) + " must be finite and non-negative");
    sum += raw[i];
  }
  require(std::abs(sum - 1.0) <= tolerance, ErrorCode::kDomain,
          "triplet probabilities sum to " + std::to_string(sum) + ", outside tolerance");
  TripletDistribution d;
  for (std::size_t i = 0; i < kNumTriplets; ++i) d.probs_[i] = raw[i] / sum;
  return d;
}

TripletDistribution TripletDistribution::uniform() {
  TripletDistribution d;
  d.probs_.fill(1.0 / kNumTriplets);
  return d;
}

TripletDistribution estimate_triplet_distribution(const Sequence& g, double pseudocount) {
  require(g.size() >= 3, ErrorCode::kDomain, "triplet estimation needs at least 3 bases");
  require(pseudocount >= 0.0 && std::isfinite(pseudocount), ErrorCode::kDomain,
          "pseudocount must be non-negative");
  std::array<std::uint64_t, kNumTriplets> counts{};
  std::uint64_t windows = 0;
  for (std::size_t k = 0; k + 2 < g.size(); ++k) {
    const int b1 = base_code(g[k]), b2 = base_code(g[k + 1]), b3 = base_code(g[k + 2]);
    if (b1 < 0 || b1 > 3 || b2 < 0 || b2 > 3 || b3 < 0 || b3 > 3) continue;
    ++counts[triplet_index(b1, b2, b3)];
    ++windows;
  }
  require(windows > 0, ErrorCode::kDomain, "sequence has no window free of N");
  const double denom = static_cast<double>(windows) + kNumTriplets * pseudocount;
  std::array<double, kNumTriplets> p{};
  for (std::size_t i = 0; i < kNumTriplets; ++i) {
    p[i] = (static_cast<double>(counts[i]) + pseudocount) / denom;
  }
  return TripletDistribution::normalized(p, 1e-9);
}

PairDistribution derive_pair(const TripletDistribution& p3) {
  PairDistribution p2;
  for (std::size_t pair = 0; pair < kNumPairs; ++pair) {
    double s = 0.0;
    for (std::size_t b3 = 0; b3 < kNumBases; ++b3) s += p3[pair * 4 + b3];
    p2.probs[pair] = s;
  }
  return p2;
}

TransitionMatrix derive_transition(const TripletDistribution& p3, const PairDistribution& p2) {
  TransitionMatrix t;
  for (std::size_t pair = 0; pair < kNumPairs; ++pair) {
    t.defined[pair] = p2.probs[pair] > 0.0;
    for (std::size_t b3 = 0; b3 < kNumBases; ++b3) {
      t.rows[pair][b3] = t.defined[pair] ? p3[pair * 4 + b3] / p2.probs[pair] : 0.0;
    }
  }
  return t;
}

double hellinger(std::span<const double> p, std::span<const double> q) {
  require(p.size() == q.size() && !p.empty(), ErrorCode::kInvalidArgument,
          "hellinger needs distributions over the same index set");
  double sp = 0.0, sq = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require(p[i] >= 0.0 && q[i] >= 0.0, ErrorCode::kDomain, "negative probability");
    sp += p[i];
    sq += q[i];
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    acc += d * d;
  }
  require(std::abs(sp - 1.0) <= 1e-6 && std::abs(sq - 1.0) <= 1e-6, ErrorCode::kDomain,
          "hellinger inputs must sum to 1");
  return std::min(1.0, std::sqrt(0.5 * acc));
}

double hellinger(const TripletDistribution& p, const TripletDistribution& q) {
  return hellinger(std::span<const double>(p.probs()), std::span<const double>(q.probs()));
}

TripletModel::TripletModel(std::string label, TripletDistribution p3)
    : label_(std::move(label)),
      p3_(p3),
      p2_(derive_pair(p3_)),
      t3_(derive_transition(p3_, p2_)) {
  for (std::size_t pair = 0; pair < kNumPairs; ++pair) {
    log_p2_[pair] = safe_log(p2_.probs[pair]);
    for (std::size_t b3 = 0; b3 < kNumBases; ++b3) {
      log_t3_[pair][b3] = t3_.defined[pair] ? safe_log(t3_.rows[pair][b3]) : kNegInf;
    }
  }
}

Sequence simulate_genome(const TripletModel& model, std::size_t length, Rng& rng) {
  require(length >= 3, ErrorCode::kDomain, "genome length must be >= 3");
  const auto& p2 = model.p2().probs;
  const double p2_total = std::accumulate(p2.begin(), p2.end(), 0.0);
  require(p2_total > 0.0, ErrorCode::kDegenerateModel, "pair distribution has no mass");

  std::string bases(length, 'A');
  const std::size_t first = draw_index(p2, kNumPairs, p2_total, rng);
  bases[0] = kAcgt[first / 4];
  bases[1] = kAcgt[first % 4];
  std::size_t state = first;
  for (std::size_t i = 2; i < length; ++i) {
    if (!model.t3().defined[state]) {
      fail(ErrorCode::kDegenerateModel,
           "chain reached undefined transition row " + pair_name(state) + " at position " +
               std::to_string(i + 1));
    }
    const auto& row = model.t3().rows[state];
    const double total = row[0] + row[1] + row[2] + row[3];
    const std::size_t b3 = draw_index(row, kNumBases, total, rng);
    bases[i] = kAcgt[b3];
    state = (state % 4) * 4 + b3;
  }
  return Sequence::trusted(std::move(bases));
}

namespace {

double independent_window_distance(const TripletModel& model, std::size_t length, Rng& rng) {
  const auto& p = model.p3().probs();
  std::array<double, kNumTriplets> cdf{};
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  const double total = cdf.back();
  std::array<std::uint64_t, kNumTriplets> counts{};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t windows = length - 2;
  for (std::size_t w = 0; w < windows; ++w) {
    const double u = unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), kNumTriplets - 1));
    while (p[idx] <= 0.0 && idx > 0) --idx;
    ++counts[idx];
  }
  std::array<double, kNumTriplets> est{};
  for (std::size_t i = 0; i < kNumTriplets; ++i) {
    est[i] = static_cast<double>(counts[i]) / static_cast<double>(windows);
  }
  return hellinger(std::span<const double>(est), std::span<const double>(p));
}

}  // namespace

std::vector<double> null_distances(const TripletModel& model, std::size_t length,
                                   const NullQuantileOptions& options) {
  require(length >= 3, ErrorCode::kDomain, "genome length must be >= 3");
  require(options.replicates >= 1, ErrorCode::kInvalidArgument, "replicates must be >= 1");
  std::vector<double> d(options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t i) {
    Rng rng(options.seed + i);
    if (options.sampling == NullSampling::kIndependentWindows) {
      d[i] = independent_window_distance(model, length, rng);
    } else {
      const Sequence g = simulate_genome(model, length, rng);
      d[i] = hellinger(estimate_triplet_distribution(g), model.p3());
    }
  });
  std::sort(d.begin(), d.end());
  return d;
}

double null_quantile(const TripletModel& model, std::size_t length,
                     const NullQuantileOptions& options) {
  require(options.q > 0.0 && options.q < 1.0, ErrorCode::kDomain, "quantile must lie in (0,1)");
  const auto d = null_distances(model, length, options);
  return empirical_quantile(d, options.q);
}

double empirical_quantile(std::span<const double> sorted, double q) {
  require(!sorted.empty(), ErrorCode::kInvalidArgument, "quantile of empty sample");
  require(q >= 0.0 && q <= 1.0, ErrorCode::kDomain, "quantile level must lie in [0,1]");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace nbb
