#include "nbb/explore.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nbb/boundary.hpp"

namespace nbb {

std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::kHammingPath: return "hamming";
    case Strategy::kRandomWalk: return "walk";
    case Strategy::kBoundaryCrawl: return "crawl";
  }
  return "unknown";
}

std::vector<Sequence> ExplorationTrace::boundary_points() const {
  std::set<Sequence> points;
  for (const auto& p : boundary_pairs) {
    points.insert(p.a);
    points.insert(p.b);
  }
  points.insert(profiled_boundary_points.begin(), profiled_boundary_points.end());
  if (strategy == Strategy::kBoundaryCrawl) {
    for (const auto& v : visited) points.insert(v.sequence);
  }
  return {points.begin(), points.end()};
}

std::vector<std::size_t> ExplorationTrace::decision_counts(std::size_t num_classes) const {
  std::vector<std::size_t> counts(num_classes, 0);
  for (const auto& v : visited) ++counts.at(v.decision);
  return counts;
}

std::size_t ExplorationTrace::n_decisions(std::size_t num_classes) const {
  const auto counts = decision_counts(num_classes);
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }));
}

ExplorationTrace hamming_path_search(const Classifier& c, const Sequence& origin,
                                     std::span<const Sequence> targets,
                                     const HammingSearchOptions& options) {
  ExplorationTrace trace;
  trace.strategy = Strategy::kHammingPath;
  trace.origin = origin;

  std::unordered_map<std::string, ClassIndex> memo;
  auto eval = [&](const std::string& s) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    const ClassIndex d = c.classify(Sequence::trusted(s));
    memo.emplace(s, d);
    return d;
  };

  const ClassIndex own = eval(origin.str());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Sequence& target = targets[t];
    require(target.size() == origin.size(), ErrorCode::kLengthMismatch,
            "target " + std::to_string(t) + " differs in length from the origin");
    require(eval(target.str()) != own, ErrorCode::kInvalidArgument,
            "target " + std::to_string(t) + " has the same decision as the origin");

    if (options.record_paths) {
      trace.segment_starts.push_back(trace.visited.size());
      trace.visited.push_back({origin, own});
    }
    std::string cur = origin.str();
    ClassIndex prev = own;
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      if (cur[pos] == target[pos]) continue;
      std::string before = cur;
      cur[pos] = target[pos];
      const ClassIndex d = eval(cur);
      if (d != prev) {
        trace.boundary_pairs.push_back({Sequence::trusted(before), Sequence::trusted(cur), prev, d});
      }
      if (options.record_paths) trace.visited.push_back({Sequence::trusted(cur), d});
      prev = d;
    }
  }
  trace.classifier_evaluations = memo.size();
  return trace;
}

ExplorationTrace random_walk(const Classifier& c, const Sequence& origin, std::size_t steps, Rng& rng,
                             const WalkOptions& options) {
  require(steps >= 1, ErrorCode::kInvalidArgument, "a walk needs at least one step");
  const Alphabet alphabet = options.alphabet ? *options.alphabet : Alphabet::dna(options.include_n);
  const std::size_t m = neighbor_count(origin.size(), alphabet);
  require(m > 0, ErrorCode::kInvalidArgument, "origin has no neighbors");
  ProfileOptions profile_options;
  profile_options.alphabet = alphabet;

  ExplorationTrace trace;
  trace.strategy = Strategy::kRandomWalk;
  trace.origin = origin;
  trace.segment_starts = {0};
  trace.visited.push_back({origin, c.classify(origin)});
  trace.classifier_evaluations = 1;

  auto profile_point = [&](const VisitedPoint& v) {
    const auto p = neighbor_profile(c, v.sequence, profile_options);
    trace.classifier_evaluations += p.evaluations - 1;
    if (p.on_boundary()) trace.profiled_boundary_points.push_back(v.sequence);
  };
  if (options.full_profile) profile_point(trace.visited.back());

  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t step = 0; step < steps; ++step) {
    const VisitedPoint& here = trace.visited.back();
    Sequence next = neighbor_at(here.sequence, alphabet, pick(rng));
    const ClassIndex d = c.classify(next);
    ++trace.classifier_evaluations;
    if (d != here.decision) trace.boundary_pairs.push_back({here.sequence, next, here.decision, d});
    trace.visited.push_back({std::move(next), d});
    if (options.full_profile) profile_point(trace.visited.back());
  }
  return trace;
}

ExplorationTrace boundary_crawl(const Classifier& c, const Sequence& start, std::size_t max_steps,
                                Rng& rng, bool include_n) {
  return boundary_crawl(c, start, max_steps, rng, Alphabet::dna(include_n));
}

ExplorationTrace boundary_crawl(const Classifier& c, const Sequence& start, std::size_t max_steps,
                                Rng& rng, const Alphabet& alphabet) {
  require(max_steps >= 1, ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  const std::size_t m = neighbor_count(start.size(), alphabet);

  ExplorationTrace trace;
  trace.strategy = Strategy::kBoundaryCrawl;
  trace.origin = start;
  trace.segment_starts = {0};
  trace.visited.push_back({start, c.classify(start)});
  std::unordered_set<std::string> seen{start.str()};

  std::vector<ClassIndex> decisions(m);
  std::vector<std::size_t> candidates;
  while (true) {
    const VisitedPoint here = trace.visited.back();
    for_each_neighbor(here.sequence, alphabet, [&](std::size_t i, const std::string& s) {
      decisions[i] = c.classify(Sequence::trusted(s));
    });
    trace.classifier_evaluations += m;

    candidates.clear();
    bool any_differs = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (decisions[i] == here.decision) continue;
      any_differs = true;
      if (!seen.count(neighbor_at(here.sequence, alphabet, i).str())) candidates.push_back(i);
    }
    if (trace.visited.size() == 1 && !any_differs) {
      throw Error(ErrorCode::kNotOnBoundary, "crawl start is not a boundary point");
    }
    if (trace.visited.size() >= max_steps) break;
    if (candidates.empty()) {
      trace.terminated_early = true;
      break;
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t chosen = candidates[pick(rng)];
    Sequence next = neighbor_at(here.sequence, alphabet, chosen);
    seen.insert(next.str());
    trace.boundary_pairs.push_back({here.sequence, next, here.decision, decisions[chosen]});
    trace.visited.push_back({std::move(next), decisions[chosen]});
  }
  return trace;
}

std::vector<EfficiencyRow> efficiency_report(std::span<const ExplorationTrace> traces) {
  require(!traces.empty(), ErrorCode::kInvalidArgument, "efficiency report needs traces");
  std::map<Strategy, EfficiencyRow> rows;
  std::map<Strategy, std::set<Sequence>> points;
  for (const auto& t : traces) {
    auto& row = rows[t.strategy];
    row.strategy = t.strategy;
    ++row.traces;
    row.evaluations += t.classifier_evaluations;
    for (auto& p : t.boundary_points()) points[t.strategy].insert(std::move(p));
  }
  std::vector<EfficiencyRow> out;
  for (auto& [strategy, row] : rows) {
    row.boundary_points = points[strategy].size();
    row.efficiency = row.evaluations == 0
                         ? 0.0
                         : static_cast<double>(row.boundary_points) / static_cast<double>(row.evaluations);
    out.push_back(row);
  }
  return out;
}

}  // namespace nbb
