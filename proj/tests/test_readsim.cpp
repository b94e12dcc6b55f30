#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nbb/model_io.hpp"
#include "nbb/readsim.hpp"

using namespace nbb;

namespace {

Sequence genome_of(std::size_t len, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_genome(bundled_model(BundledGenome::kAdeno), len, rng);
}

}  // namespace

TEST_CASE("read count formula") {
  ReadSimConfig cfg;
  CHECK(simulated_read_count(34125, cfg) == 2027);
  CHECK(simulated_read_count(29926, cfg) == static_cast<std::size_t>(std::llround(6.0 * 29926 / 101)));
  cfg.coverage = 1.0;
  cfg.read_length = 10;
  CHECK(simulated_read_count(105, cfg) == 11);
}

TEST_CASE("error-free reads are exact substrings") {
  const auto g = genome_of(5000, 1);
  ReadSimConfig cfg;
  cfg.sub_rate = 0.0;
  cfg.n_rate = 0.0;
  const auto reads = simulate_reads(g, cfg, "g");
  CHECK(reads.size() == simulated_read_count(5000, cfg));
  for (std::size_t i = 0; i < reads.size(); ++i) {
    const auto& r = reads[i];
    CHECK(r.sequence.size() == 101);
    CHECK(r.origin_offset + 101 <= g.size());
    CHECK(r.sequence.str() == g.str().substr(r.origin_offset, 101));
    CHECK(r.id == "src=g off=" + std::to_string(r.origin_offset) + " idx=" + std::to_string(i));
  }
}

TEST_CASE("all-N reads at n_rate 1") {
  const auto g = genome_of(1000, 2);
  ReadSimConfig cfg;
  cfg.sub_rate = 0.0;
  cfg.n_rate = 1.0;
  for (const auto& r : simulate_reads(g, cfg)) CHECK(r.sequence.str() == std::string(101, 'N'));
}

TEST_CASE("substitution and N rates") {
  const auto g = genome_of(20000, 3);
  ReadSimConfig cfg;
  cfg.sub_rate = 0.1;
  cfg.n_rate = 0.05;
  std::size_t subs = 0, ns = 0, total = 0;
  for (const auto& r : simulate_reads(g, cfg)) {
    const std::string truth = g.str().substr(r.origin_offset, 101);
    for (std::size_t i = 0; i < 101; ++i) {
      ++total;
      if (r.sequence[i] == 'N') ++ns;
      else if (r.sequence[i] != truth[i]) ++subs;
    }
  }
  const double n = static_cast<double>(total);
  CHECK(std::abs(subs / n - 0.1) < 5 * std::sqrt(0.1 * 0.9 / n));
  CHECK(std::abs(ns / n - 0.05) < 5 * std::sqrt(0.05 * 0.95 / n));
}

TEST_CASE("reads are deterministic and independent of workers") {
  const auto g = genome_of(8000, 4);
  ReadSimConfig cfg;
  cfg.seed = 99;
  const auto a = simulate_reads(g, cfg, "x", 1);
  const auto b = simulate_reads(g, cfg, "x", 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sequence == b[i].sequence);
    CHECK(a[i].id == b[i].id);
  }
  cfg.seed = 100;
  const auto c = simulate_reads(g, cfg, "x", 1);
  // Seed s+1 shifts the per-read streams by one.
  CHECK(c[0].sequence == a[1].sequence);
}

TEST_CASE("error-free reads recover the genome distribution") {
  const auto g = genome_of(34125, 5);
  ReadSimConfig cfg;
  cfg.sub_rate = 0.0;
  cfg.n_rate = 0.0;
  std::string joined;
  for (const auto& r : simulate_reads(g, cfg)) joined += r.sequence.str();
  const double h = hellinger(estimate_triplet_distribution(Sequence::trusted(joined)),
                             estimate_triplet_distribution(g));
  CHECK(h < 0.05);
}

TEST_CASE("configuration validation") {
  const auto g = genome_of(200, 6);
  ReadSimConfig cfg;
  cfg.read_length = 2;
  CHECK_THROWS_AS(simulate_reads(g, cfg), Error);
  cfg = {};
  cfg.read_length = 300;
  CHECK_THROWS_AS(simulate_reads(g, cfg), Error);
  cfg = {};
  cfg.coverage = 0.0;
  CHECK_THROWS_AS(simulate_reads(g, cfg), Error);
  cfg = {};
  cfg.sub_rate = 0.7;
  cfg.n_rate = 0.4;
  CHECK_THROWS_AS(simulate_reads(g, cfg), Error);
}

TEST_CASE("synthetic read sets") {
  const auto models = bundled_models();
  std::vector<SyntheticSource> sources;
  for (const auto& m : models) sources.push_back({m, 6000});
  ReadSimConfig cfg;
  cfg.seed = 11;
  const auto reads = synthetic_read_set(sources, cfg, 2);
  const std::size_t per = simulated_read_count(6000, cfg);
  REQUIRE(reads.size() == 3 * per);
  for (std::size_t i = 0; i < reads.size(); ++i) {
    const std::size_t k = i / per;
    CHECK(reads[i].source == k);
    CHECK(reads[i].read.id.rfind("src=" + models[k].label() + " ", 0) == 0);
  }
  // Source k's genome and reads come from derived seeds.
  Rng grng(derive_seed(11, 2));
  const auto g1 = simulate_genome(models[1], 6000, grng);
  ReadSimConfig rc = cfg;
  rc.seed = derive_seed(11, 3);
  const auto direct = simulate_reads(g1, rc, models[1].label());
  CHECK(direct[0].sequence == reads[per].read.sequence);

  const auto again = synthetic_read_set(sources, cfg, 1);
  for (std::size_t i = 0; i < reads.size(); ++i) CHECK(again[i].read.sequence == reads[i].read.sequence);
  CHECK(derive_seed(5, 0) == 5);
  CHECK(derive_seed(5, 1) != derive_seed(6, 1));
}
