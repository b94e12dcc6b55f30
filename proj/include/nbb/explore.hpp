#pragma once

// Boundary exploration: Hamming-path search, random walks and boundary crawls,
// with classifier-evaluation accounting.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nbb/bayes.hpp"
#include "nbb/seqspace.hpp"

namespace nbb {

enum class Strategy { kHammingPath, kRandomWalk, kBoundaryCrawl };

std::string_view strategy_name(Strategy s) noexcept;

// Adjacent sequences with different decisions; both are boundary points.
struct BoundaryPair {
  Sequence a;
  Sequence b;
  ClassIndex decision_a = 0;
  ClassIndex decision_b = 0;
};

struct VisitedPoint {
  Sequence sequence;
  ClassIndex decision = 0;
};

struct ExplorationTrace {
  Strategy strategy = Strategy::kRandomWalk;
  Sequence origin;
  // Consecutive entries within a segment are neighbors. Walks and crawls have
  // one segment; Hamming searches start a segment per target when paths are
  // recorded.
  std::vector<VisitedPoint> visited;
  std::vector<std::size_t> segment_starts;
  std::vector<BoundaryPair> boundary_pairs;
  // Extra boundary points certified by full neighbor profiles (walk option).
  std::vector<Sequence> profiled_boundary_points;
  std::size_t classifier_evaluations = 0;
  bool terminated_early = false;
  std::uint64_t seed = 0;

  // Distinct boundary points identified by this trace, sorted.
  std::vector<Sequence> boundary_points() const;
  // Decisions of visited points, per class.
  std::vector<std::size_t> decision_counts(std::size_t num_classes) const;
  std::size_t n_decisions(std::size_t num_classes) const;
};

struct HammingSearchOptions {
  bool record_paths = false;
};

// Walks the left-to-right Hamming path from origin to each target, classifying
// every sequence once (memoized across targets). Every target must be
// classified differently from the origin.
ExplorationTrace hamming_path_search(const Classifier& c, const Sequence& origin,
                                     std::span<const Sequence> targets,
                                     const HammingSearchOptions& options = {});

struct WalkOptions {
  bool include_n = true;
  // Also profile every visited point, certifying boundary points the
  // predecessor comparison misses (costs |neighbors| evaluations per step).
  bool full_profile = false;
  std::optional<Alphabet> alphabet;  // overrides include_n when set
};

ExplorationTrace random_walk(const Classifier& c, const Sequence& origin, std::size_t steps, Rng& rng,
                             const WalkOptions& options = {});

// Moves only to unvisited neighbors classified differently from the current
// point. Every visited point costs |neighbors| evaluations; the start's own
// decision is taken as known. max_steps bounds the number of visited points.
ExplorationTrace boundary_crawl(const Classifier& c, const Sequence& start, std::size_t max_steps,
                                Rng& rng, bool include_n = true);
ExplorationTrace boundary_crawl(const Classifier& c, const Sequence& start, std::size_t max_steps,
                                Rng& rng, const Alphabet& alphabet);

struct EfficiencyRow {
  Strategy strategy = Strategy::kHammingPath;
  std::size_t traces = 0;
  std::size_t evaluations = 0;
  std::size_t boundary_points = 0;  // distinct across all traces of the strategy
  double efficiency = 0.0;          // boundary_points / evaluations
};

// One row per strategy present, in enum order.
std::vector<EfficiencyRow> efficiency_report(std::span<const ExplorationTrace> traces);

}  // namespace nbb
