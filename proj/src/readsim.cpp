#include "nbb/readsim.hpp"

#include <cmath>

#include "nbb/parallel.hpp"

namespace nbb {

namespace {

void validate(const ReadSimConfig& cfg) {
  require(cfg.read_length >= 3, ErrorCode::kInvalidArgument, "read length must be >= 3");
  require(std::isfinite(cfg.coverage) && cfg.coverage > 0.0, ErrorCode::kInvalidArgument,
          "coverage must be positive");
  require(cfg.sub_rate >= 0.0 && cfg.sub_rate <= 1.0 && cfg.n_rate >= 0.0 && cfg.n_rate <= 1.0 &&
              cfg.sub_rate + cfg.n_rate <= 1.0,
          ErrorCode::kInvalidArgument, "error rates must lie in [0,1] and sum to at most 1");
}

}  // namespace

std::size_t simulated_read_count(std::size_t genome_length, const ReadSimConfig& cfg) {
  validate(cfg);
  return static_cast<std::size_t>(
      std::llround(cfg.coverage * static_cast<double>(genome_length) / static_cast<double>(cfg.read_length)));
}

std::vector<SimulatedRead> simulate_reads(const Sequence& genome, const ReadSimConfig& cfg,
                                          const std::string& source_id, unsigned workers) {
  validate(cfg);
  require(genome.size() >= cfg.read_length, ErrorCode::kInvalidArgument,
          "genome (" + std::to_string(genome.size()) + " bases) is shorter than the read length");
  const std::size_t n = simulated_read_count(genome.size(), cfg);
  const std::size_t last_offset = genome.size() - cfg.read_length;
  static constexpr char kAcgt[] = "ACGT";

  std::vector<SimulatedRead> reads(n);
  parallel_for(n, workers, [&](std::size_t i) {
    Rng rng(cfg.seed + i);
    std::uniform_int_distribution<std::size_t> offset_dist(0, last_offset);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> other(0, 2);
    const std::size_t off = offset_dist(rng);
    std::string bases = genome.str().substr(off, cfg.read_length);
    for (char& b : bases) {
      const double u = unit(rng);
      if (u < cfg.sub_rate) {
        // Uniform over the three bases different from the current one; an N in
        // the genome becomes one of A, C, G.
        const int own = base_code(b);
        int pick = other(rng);
        if (own >= 0 && own < 4 && pick >= own) ++pick;
        b = kAcgt[pick];
      } else if (u < cfg.sub_rate + cfg.n_rate) {
        b = 'N';
      }
    }
    reads[i].id = "src=" + source_id + " off=" + std::to_string(off) + " idx=" + std::to_string(i);
    reads[i].sequence = Sequence::trusted(std::move(bases));
    reads[i].origin_offset = off;
  });
  return reads;
}

std::vector<LabeledRead> synthetic_read_set(std::span<const SyntheticSource> sources,
                                            const ReadSimConfig& cfg, unsigned workers) {
  require(!sources.empty(), ErrorCode::kInvalidArgument, "synthetic read set needs at least one source");
  std::vector<LabeledRead> out;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    Rng rng(derive_seed(cfg.seed, 2 * k));
    const Sequence genome = simulate_genome(sources[k].model, sources[k].genome_length, rng);
    ReadSimConfig read_cfg = cfg;
    read_cfg.seed = derive_seed(cfg.seed, 2 * k + 1);
    for (auto& r : simulate_reads(genome, read_cfg, sources[k].model.label(), workers)) {
      out.push_back({std::move(r), k});
    }
  }
  return out;
}

}  // namespace nbb
