#include "nbb/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "nbb/parallel.hpp"

namespace nbb {

double neighbor_similarity(ClassIndex decision, std::span<const std::size_t> counts) {
  require(decision < counts.size(), ErrorCode::kInvalidArgument, "decision outside class range");
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  require(total > 0, ErrorCode::kInvalidArgument, "neighbor similarity needs at least one neighbor");
  double acc = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double q = static_cast<double>(counts[k]) / static_cast<double>(total);
    const double point = k == decision ? 1.0 : 0.0;
    const double d = std::sqrt(point) - std::sqrt(q);
    acc += d * d;
  }
  return 1.0 - std::min(1.0, std::sqrt(0.5 * acc));
}

namespace {

std::size_t status_of(ClassIndex decision, const std::vector<std::size_t>& counts) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += (k != decision && counts[k] > 0);
  return s;
}

NeighborProfile profile_one(const Classifier& c, const Sequence& r, const Alphabet& alphabet,
                            unsigned workers, bool keep) {
  NeighborProfile p;
  p.origin = r;
  p.decision = c.classify(r);
  const std::size_t m = neighbor_count(r.size(), alphabet);
  std::vector<ClassIndex> decisions(m);
  if (workers <= 1) {
    for_each_neighbor(r, alphabet, [&](std::size_t i, const std::string& s) {
      decisions[i] = c.classify(Sequence::trusted(s));
    });
  } else {
    parallel_for(m, workers, [&](std::size_t i) { decisions[i] = c.classify(neighbor_at(r, alphabet, i)); });
  }
  p.neighbor_counts.assign(c.num_classes(), 0);
  for (ClassIndex d : decisions) ++p.neighbor_counts[d];
  p.ns = neighbor_similarity(p.decision, p.neighbor_counts);
  p.boundary_status = status_of(p.decision, p.neighbor_counts);
  p.evaluations = m + 1;
  if (keep) p.neighbor_decisions = std::move(decisions);
  return p;
}

}  // namespace

NeighborProfile neighbor_profile(const Classifier& c, const Sequence& r, const ProfileOptions& options) {
  return profile_one(c, r, options.neighbor_alphabet(), options.workers,
                     options.keep_neighbor_decisions);
}

std::vector<NeighborProfile> neighbor_profiles(const Classifier& c, std::span<const Sequence> reads,
                                               const ProfileOptions& options) {
  const Alphabet alphabet = options.neighbor_alphabet();
  std::vector<NeighborProfile> out(reads.size());
  parallel_for(reads.size(), options.workers, [&](std::size_t i) {
    out[i] = profile_one(c, reads[i], alphabet, 1, options.keep_neighbor_decisions);
  });
  return out;
}

std::vector<std::size_t> random_neighbor_order(std::size_t count, Rng& rng) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, count - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  return order;
}

SampledNs sampled_ns(const Classifier& c, const Sequence& r, std::size_t k, Rng& rng, bool include_n) {
  return sampled_ns(c, r, k, rng, Alphabet::dna(include_n));
}

SampledNs sampled_ns(const Classifier& c, const Sequence& r, std::size_t k, Rng& rng,
                     const Alphabet& alphabet) {
  const std::size_t m = neighbor_count(r.size(), alphabet);
  require(k >= 1 && k <= m, ErrorCode::kInvalidArgument,
          "sample size " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
  SampledNs s;
  s.origin = r;
  s.k = k;
  s.decision = c.classify(r);
  // Partial Fisher-Yates: the first k slots are a uniform draw without
  // replacement, identical to the prefix of random_neighbor_order.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k && i + 1 < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, m - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  s.sampled_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::size_t> counts(c.num_classes(), 0);
  for (std::size_t idx : s.sampled_indices) ++counts[c.classify(neighbor_at(r, alphabet, idx))];
  s.ns_estimate = neighbor_similarity(s.decision, counts);
  s.evaluations = k + 1;
  return s;
}

namespace {

struct BudgetExhausted {};

class MemoClassifier {
 public:
  MemoClassifier(const Classifier& c, std::size_t budget) : c_(c), budget_(budget) {}

  ClassIndex operator()(const std::string& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_) throw BudgetExhausted{};
    const ClassIndex d = c_.classify(Sequence::trusted(s));
    memo_.emplace(s, d);
    return d;
  }

  std::size_t used() const noexcept { return memo_.size(); }

 private:
  const Classifier& c_;
  std::size_t budget_;
  std::unordered_map<std::string, ClassIndex> memo_;
};

// Stops at the first differing neighbor.
bool is_boundary(MemoClassifier& eval, const std::string& x, const Alphabet& alphabet) {
  const ClassIndex d = eval(x);
  std::string scratch = x;
  for (std::size_t pos = 0; pos < scratch.size(); ++pos) {
    const char own = scratch[pos];
    for (char s : alphabet.symbols()) {
      if (s == own) continue;
      scratch[pos] = s;
      if (eval(scratch) != d) return true;
    }
    scratch[pos] = own;
  }
  return false;
}

}  // namespace

DbBound db_bound(const Classifier& c, const Sequence& r, std::span<const LabeledSequence> witnesses,
                 std::size_t bfs_budget, bool include_n) {
  return db_bound(c, r, witnesses, bfs_budget, Alphabet::dna(include_n));
}

DbBound db_bound(const Classifier& c, const Sequence& r, std::span<const LabeledSequence> witnesses,
                 std::size_t bfs_budget, const Alphabet& alphabet) {
  require(bfs_budget >= neighbor_count(r.size(), alphabet) + 1, ErrorCode::kInvalidArgument,
          "search budget must cover the origin and its neighbors");
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(alphabet.contains(r[i]), ErrorCode::kInvalidArgument,
            "origin has symbols outside the neighbor alphabet");
  }

  DbBound out;
  out.origin = r;
  MemoClassifier eval(c, bfs_budget);
  const ClassIndex own = eval(r.str());
  for (const auto& w : witnesses) {
    if (w.decision == own || w.sequence.size() != r.size()) continue;
    const std::size_t h = hamming_distance(r, w.sequence);
    if (!out.upper || h < *out.upper) out.upper = h;
  }

  std::unordered_set<std::string> seen{r.str()};
  std::vector<std::string> sphere{r.str()};
  std::size_t radius = 0;
  // Each non-boundary point of a sphere costs at least one fresh evaluation,
  // so a sphere is never materialized beyond what the budget could examine.
  bool truncated = false;
  try {
    while (!sphere.empty()) {
      for (const auto& x : sphere) {
        if (is_boundary(eval, x, alphabet)) {
          out.lower = radius;
          out.exhausted_radius = radius;
          out.upper = out.upper ? std::min(*out.upper, radius) : radius;
          out.budget_used = eval.used();
          return out;
        }
      }
      if (truncated) break;
      ++radius;
      out.exhausted_radius = radius;
      // DB never exceeds the witness bound, so the search is already tight.
      if (out.upper && radius >= *out.upper) break;
      const std::size_t cap = bfs_budget - eval.used() + 1;
      std::vector<std::string> next;
      for (const auto& x : sphere) {
        std::string scratch = x;
        for (std::size_t pos = 0; pos < scratch.size() && !truncated; ++pos) {
          const char keep = scratch[pos];
          for (char s : alphabet.symbols()) {
            if (s == keep) continue;
            scratch[pos] = s;
            if (seen.insert(scratch).second) next.push_back(scratch);
            if (next.size() >= cap) {
              truncated = true;
              break;
            }
          }
          scratch[pos] = keep;
        }
        if (truncated) break;
      }
      sphere = std::move(next);
    }
  } catch (const BudgetExhausted&) {
  }
  out.lower = out.exhausted_radius;
  out.budget_used = eval.used();
  return out;
}

}  // namespace nbb
