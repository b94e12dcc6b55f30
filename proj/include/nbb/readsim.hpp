#pragma once

// Fixed-length read simulation with substitution and undetermined-base (N)
// errors. Read length is preserved; there are no indels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbb/seqspace.hpp"
#include "nbb/triplet_model.hpp"

namespace nbb {

struct ReadSimConfig {
  std::size_t read_length = 101;
  double coverage = 6.0;
  double sub_rate = 0.004;
  double n_rate = 0.0005;
  std::uint64_t seed = 1;
};

struct SimulatedRead {
  std::string id;
  Sequence sequence;
  std::size_t origin_offset = 0;  // 0-based start within the genome
};

// round(coverage * |genome| / read_length).
std::size_t simulated_read_count(std::size_t genome_length, const ReadSimConfig& cfg);

// Read i is drawn from its own generator seeded with cfg.seed + i. Ids are
// "src=<source_id> off=<offset> idx=<i>".
std::vector<SimulatedRead> simulate_reads(const Sequence& genome, const ReadSimConfig& cfg,
                                          const std::string& source_id = "genome",
                                          unsigned workers = 1);

// Seed for an independent stream derived from a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return base + stream * 0x9E3779B97F4A7C15ULL;
}

struct SyntheticSource {
  TripletModel model;
  std::size_t genome_length = 0;
};

struct LabeledRead {
  SimulatedRead read;
  std::size_t source = 0;  // index into the sources
};

// Simulates one genome per source (seed derive_seed(cfg.seed, 2k)) and reads
// from it (seed derive_seed(cfg.seed, 2k + 1)); reads are concatenated in
// source order. The genome is labeled with the model's label.
std::vector<LabeledRead> synthetic_read_set(std::span<const SyntheticSource> sources,
                                            const ReadSimConfig& cfg, unsigned workers = 1);

}  // namespace nbb
