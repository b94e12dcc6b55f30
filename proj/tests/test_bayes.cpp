#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "nbb/bayes.hpp"
#include "nbb/model_io.hpp"
#include "test_util.hpp"

using namespace nbb;

namespace {

// P2(AA) = 0.1 and T3(AA -> A) = 0.5 with the remaining mass spread evenly.
TripletModel aa_model() {
  std::array<double, 64> raw{};
  raw[triplet_index(0, 0, 0)] = 0.05;
  for (int c = 1; c < 4; ++c) raw[triplet_index(0, 0, c)] = 0.05 / 3;
  double rest = 0.0;
  for (std::size_t i = 4; i < 64; ++i) rest += (raw[i] = 1.0);
  for (std::size_t i = 4; i < 64; ++i) raw[i] *= 0.9 / rest;
  return TripletModel("aa", TripletDistribution::normalized(raw));
}

// A classifier whose per-class log-likelihoods are shifted by fixed offsets.
std::vector<double> softmax(std::vector<double> l) {
  const double m = *std::max_element(l.begin(), l.end());
  double s = 0.0;
  for (auto& v : l) s += (v = std::exp(v - m));
  for (auto& v : l) v /= s;
  return l;
}

}  // namespace

TEST_CASE("log likelihood examples") {
  const auto m = aa_model();
  CHECK(log_likelihood(m, Sequence("AAA")) == doctest::Approx(std::log(0.05)).epsilon(1e-12));

  const TripletModel uni("u", TripletDistribution::uniform());
  Rng rng(1);
  for (std::size_t len : {2u, 3u, 10u, 101u}) {
    const auto r = random_sequence(len, Alphabet::dna(false), rng);
    CHECK(log_likelihood(uni, r) ==
          doctest::Approx(std::log(1.0 / 16) + (len - 2.0) * std::log(0.25)).epsilon(1e-12));
  }

  // ANA: sum over the middle base.
  const auto rm = testutil::random_model(4);
  double s = 0.0;
  for (int b = 0; b < 4; ++b) s += rm.p2().probs[pair_index(0, b)] * rm.t3().rows[pair_index(0, b)][0];
  CHECK(log_likelihood(rm, Sequence("ANA")) == doctest::Approx(std::log(s)).epsilon(1e-12));
  CHECK(log_likelihood(uni, Sequence("NNNN")) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(log_likelihood(rm, Sequence("CG")) == doctest::Approx(std::log(rm.p2().probs[pair_index(1, 2)])));
  CHECK_THROWS_AS(log_likelihood(rm, Sequence("C")), Error);
}

TEST_CASE("zero-probability completions") {
  std::array<double, 64> raw{};
  raw[triplet_index(0, 0, 0)] = 1.0;
  const TripletModel aaa("aaa", TripletDistribution::normalized(raw));
  CHECK(std::isinf(log_likelihood(aaa, Sequence("AAC"))));
  CHECK(log_likelihood(aaa, Sequence("ANA")) == doctest::Approx(0.0));
  CHECK(log_likelihood(aaa, Sequence("NNNNN")) == doctest::Approx(0.0));
}

TEST_CASE("forward recursion matches brute-force completion sums") {
  Rng rng(77);
  std::uniform_int_distribution<int> base(0, 3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto m = testutil::random_model(1000 + s);
    for (std::size_t len = 2; len <= 8; ++len) {
      for (int t = 0; t < 30; ++t) {
        std::string r(len, 'A');
        for (auto& c : r) c = "ACGT"[base(rng)];
        const std::size_t n_count = std::min<std::size_t>(len, t % 5);
        std::vector<std::size_t> pos(len);
        std::iota(pos.begin(), pos.end(), 0);
        std::shuffle(pos.begin(), pos.end(), rng);
        for (std::size_t k = 0; k < n_count; ++k) r[pos[k]] = 'N';
        const double expected = std::log(testutil::brute_force_likelihood(m, r));
        const double got = log_likelihood(m, Sequence(r));
        CHECK(std::abs(got - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST_CASE("posterior examples") {
  // Three copies of one model: equal likelihoods.
  const auto m = testutil::random_model(5);
  const TripletModel m1("a", m.p3()), m2("b", m.p3()), m3("c", m.p3());
  BayesClassifier same({m1, m2, m3});
  const auto p = same.posterior(Sequence("ACGTACGT"));
  for (double v : p.probs) CHECK(v == doctest::Approx(1.0 / 3));

  BayesClassifier prior({m1, m2, m3}, {0.5, 0.25, 0.25});
  const auto pp = prior.posterior(Sequence("ACGTACGT"));
  CHECK(pp.probs[0] == doctest::Approx(0.5));
  CHECK(pp.probs[1] == doctest::Approx(0.25));
  CHECK(prior.classify(Sequence("ACGTACGT")) == 0);

  // Likelihoods (0.2, 0.1, 0.1) under a uniform prior give (0.5, 0.25, 0.25).
  const auto q = softmax({std::log(0.2), std::log(0.1), std::log(0.1)});
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.25));

  CHECK_THROWS_AS(BayesClassifier({m1, m2}, {0.5, 0.6}), Error);
  CHECK_THROWS_AS(BayesClassifier({m, m}), Error);
  CHECK_THROWS_AS(BayesClassifier({}), Error);
}

TEST_CASE("posterior matches likelihood ratios") {
  const auto models = bundled_models();
  BayesClassifier c(models);
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto r = random_sequence(101, Alphabet::dna(true), rng);
    std::vector<double> ll;
    for (const auto& m : models) ll.push_back(log_likelihood(m, r));
    const auto expected = softmax(ll);
    const auto got = c.posterior(r).probs;
    for (std::size_t k = 0; k < 3; ++k) CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("argmax and summaries") {
  CHECK(argmax_lowest(std::vector<double>{0.5, 0.25, 0.25}) == 0);
  CHECK(argmax_lowest(std::vector<double>{0.4, 0.4, 0.2}) == 0);
  CHECK(argmax_lowest(std::vector<double>{0.2, 0.4, 0.4}) == 1);

  CHECK(max_posterior({{1.0 / 3, 1.0 / 3, 1.0 / 3}}) == doctest::Approx(1.0 / 3));
  CHECK(max_posterior({{0.5, 0.25, 0.25}}) == 0.5);
  CHECK(max_posterior({{1, 0, 0}}) == 1.0);

  CHECK(posterior_entropy({{1, 0, 0}}) == 0.0);
  CHECK(posterior_entropy({{1.0 / 3, 1.0 / 3, 1.0 / 3}}) == doctest::Approx(std::log(3.0)));
  CHECK(posterior_entropy({{0.5, 0.25, 0.25}}) == doctest::Approx(1.5 * std::log(2.0)));
}

TEST_CASE("classifier properties on random reads") {
  const auto models = bundled_models();
  BayesClassifier c(models);
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const auto r = random_sequence(101, Alphabet::dna(t % 2 == 0), rng);
    const auto ll = c.log_likelihoods(r);
    for (double v : ll) CHECK(std::isfinite(v));
    CHECK(c.classify(r) == argmax_lowest(ll));
    // A common shift leaves the decision unchanged.
    auto shifted = ll;
    for (auto& v : shifted) v += 1234.5;
    CHECK(argmax_lowest(shifted) == argmax_lowest(ll));
    const auto p = c.posterior(r).probs;
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(c.classify(r) == argmax_lowest(p));
  }
}

TEST_CASE("no underflow for length-101 reads") {
  BayesClassifier c(bundled_models());
  Rng rng(3);
  const auto r = random_sequence(101, Alphabet::dna(false), rng);
  for (double v : c.log_likelihoods(r)) {
    CHECK(std::isfinite(v));
    CHECK(v < std::log(1e-40));
  }
}

TEST_CASE("grouped classifier sums posterior mass") {
  auto base = std::make_shared<BayesClassifier>(bundled_models());
  GroupedClassifier g(base, {0, 1, 1}, {"Adeno", "Corona"});
  CHECK(g.num_classes() == 2);
  CHECK(g.class_name(1) == "Corona");
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto r = random_sequence(101, Alphabet::dna(false), rng);
    const auto p = base->posterior(r).probs;
    const auto q = g.posterior(r).probs;
    CHECK(q[0] == doctest::Approx(p[0]));
    CHECK(q[1] == doctest::Approx(p[1] + p[2]));
    CHECK(g.classify(r) == (p[1] + p[2] > p[0] ? 1u : 0u));
  }
  CHECK_THROWS_AS(GroupedClassifier(base, {0, 1}, {"a", "b"}), Error);
  CHECK_THROWS_AS(GroupedClassifier(base, {0, 2, 1}, {"a", "b"}), Error);
}

TEST_CASE("function classifier") {
  FunctionClassifier f({"even", "odd"}, [](const Sequence& s) { return s.size() % 2; });
  CHECK(f.classify(Sequence("AC")) == 0);
  CHECK(f.classify(Sequence("ACG")) == 1);
  CHECK_FALSE(f.has_posterior());
  CHECK_THROWS_AS(f.posterior(Sequence("A")), Error);
  FunctionClassifier bad({"x"}, [](const Sequence&) { return ClassIndex{3}; });
  CHECK_THROWS_AS(bad.classify(Sequence("A")), Error);
}
