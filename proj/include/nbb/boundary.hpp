#pragma once

// Boundary membership and Neighbor Similarity over the Hamming graph, for any
// Classifier.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nbb/bayes.hpp"
#include "nbb/seqspace.hpp"

namespace nbb {

struct ProfileOptions {
  bool include_n = true;  // 4 substitutes per site (404 neighbors at length 101) vs 3 (303)
  unsigned workers = 1;
  bool keep_neighbor_decisions = false;
  std::optional<Alphabet> alphabet;  // overrides include_n when set

  Alphabet neighbor_alphabet() const { return alphabet ? *alphabet : Alphabet::dna(include_n); }
};

struct NeighborProfile {
  Sequence origin;
  ClassIndex decision = 0;
  std::vector<std::size_t> neighbor_counts;  // decisions among all neighbors, per class
  double ns = 1.0;
  std::size_t boundary_status = 0;  // classes other than `decision` seen among neighbors
  std::size_t evaluations = 0;
  // Per-neighbor decisions in enumeration order, when requested.
  std::vector<ClassIndex> neighbor_decisions;

  bool on_boundary() const noexcept { return boundary_status > 0; }
};

// 1 - H(point mass at `decision`, empirical distribution of `counts`).
// counts must not be all zero.
double neighbor_similarity(ClassIndex decision, std::span<const std::size_t> counts);

NeighborProfile neighbor_profile(const Classifier& c, const Sequence& r,
                                 const ProfileOptions& options = {});

// Profiles many reads; parallelism is across reads, results are in input order.
std::vector<NeighborProfile> neighbor_profiles(const Classifier& c, std::span<const Sequence> reads,
                                               const ProfileOptions& options = {});

struct SampledNs {
  Sequence origin;
  ClassIndex decision = 0;
  std::size_t k = 0;
  double ns_estimate = 1.0;
  std::vector<std::size_t> sampled_indices;  // neighbor indices, draw order
  std::size_t evaluations = 0;
};

// Uniformly random ordering of neighbor indices 0..count-1 (Fisher-Yates).
std::vector<std::size_t> random_neighbor_order(std::size_t count, Rng& rng);

// NS estimated from k neighbors drawn without replacement.
SampledNs sampled_ns(const Classifier& c, const Sequence& r, std::size_t k, Rng& rng,
                     bool include_n = true);
SampledNs sampled_ns(const Classifier& c, const Sequence& r, std::size_t k, Rng& rng,
                     const Alphabet& alphabet);

struct LabeledSequence {
  Sequence sequence;
  ClassIndex decision = 0;
};

struct DbBound {
  Sequence origin;
  std::size_t lower = 0;               // 0 exactly when origin is a boundary point
  std::optional<std::size_t> upper;    // unknown without a usable witness or BFS hit
  std::size_t exhausted_radius = 0;    // no boundary point lies closer than this
  std::size_t budget_used = 0;         // classifier evaluations spent by the search
  bool exact() const noexcept { return upper && *upper == lower; }
};

// Distance-from-boundary bounds: the upper bound comes from the nearest
// differently classified witness, the lower bound from a breadth-first search
// that stops at the first boundary point or after bfs_budget evaluations.
// bfs_budget must cover at least the origin and its neighbors.
DbBound db_bound(const Classifier& c, const Sequence& r, std::span<const LabeledSequence> witnesses,
                 std::size_t bfs_budget, bool include_n = true);
DbBound db_bound(const Classifier& c, const Sequence& r, std::span<const LabeledSequence> witnesses,
                 std::size_t bfs_budget, const Alphabet& alphabet);

}  // namespace nbb
