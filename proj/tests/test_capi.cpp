#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "nbb/nbb.h"

namespace {

struct Bundled {
  nbb_model* m[3] = {nullptr, nullptr, nullptr};
  nbb_classifier* c = nullptr;
  Bundled() {
    for (int i = 0; i < 3; ++i) REQUIRE(nbb_model_bundled(i, &m[i]) == NBB_OK);
    REQUIRE(nbb_classifier_bayes(m, 3, nullptr, &c) == NBB_OK);
  }
  ~Bundled() {
    nbb_classifier_free(c);
    for (auto* x : m) nbb_model_free(x);
  }
};

std::vector<std::string> random_reads(std::size_t n, std::uint64_t seed) {
  nbb_records* r = nullptr;
  REQUIRE(nbb_random_sequences(n, 101, 0, seed, &r) == NBB_OK);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < nbb_records_count(r); ++i) out.emplace_back(nbb_records_sequence(r, i));
  nbb_records_free(r);
  return out;
}

std::vector<const char*> ptrs(const std::vector<std::string>& v) {
  std::vector<const char*> p;
  for (const auto& s : v) p.push_back(s.c_str());
  return p;
}

int count_a_parity(const char* s, std::size_t len, void*, std::size_t* out) {
  std::size_t a = 0;
  for (std::size_t i = 0; i < len; ++i) a += s[i] == 'A';
  *out = a % 2;
  return 0;
}

int failing(const char*, std::size_t, void*, std::size_t*) { return 1; }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(nbb_version()) > 0);
  CHECK(std::string(nbb_status_name(NBB_OK)) == "ok");
  CHECK(std::string(nbb_status_name(NBB_E_NOT_ON_BOUNDARY)).size() > 0);
}

TEST_CASE("models and distances") {
  Bundled b;
  CHECK(std::string(nbb_model_label(b.m[0])) == "Adeno");
  double h = 0;
  REQUIRE(nbb_hellinger(b.m[0], b.m[1], &h) == NBB_OK);
  CHECK(std::abs(h - 0.234) <= 0.002);
  CHECK(nbb_bundled_genome_length(0) == 34125);

  double p[64];
  REQUIRE(nbb_model_triplets(b.m[2], p) == NBB_OK);
  nbb_model* copy = nullptr;
  REQUIRE(nbb_model_from_probs("copy", p, &copy) == NBB_OK);
  REQUIRE(nbb_hellinger(copy, b.m[2], &h) == NBB_OK);
  CHECK(h == doctest::Approx(0.0));

  char* json = nullptr;
  REQUIRE(nbb_model_to_json(copy, &json) == NBB_OK);
  nbb_model* back = nullptr;
  REQUIRE(nbb_model_from_json(json, &back) == NBB_OK);
  CHECK(std::string(nbb_model_label(back)) == "copy");
  nbb_string_free(json);
  nbb_model_free(back);
  nbb_model_free(copy);

  nbb_model* bad = nullptr;
  CHECK(nbb_model_from_json("{not json", &bad) == NBB_E_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(nbb_last_error()) > 0);
  CHECK(nbb_model_load("/nonexistent.json", &bad) == NBB_E_IO);
  CHECK(nbb_model_bundled(7, &bad) == NBB_E_INVALID_ARGUMENT);
  CHECK(nbb_hellinger(nullptr, b.m[0], &h) == NBB_E_INVALID_ARGUMENT);

  const double pp[3] = {1, 0, 0}, qq[3] = {0.5, 0.5, 0};
  REQUIRE(nbb_hellinger_probs(pp, qq, 3, &h) == NBB_OK);
  CHECK(h == doctest::Approx(0.5411961));

  double ll = 0;
  REQUIRE(nbb_log_likelihood(b.m[0], "ACGTNACGT", &ll) == NBB_OK);
  CHECK(std::isfinite(ll));
  CHECK(nbb_log_likelihood(b.m[0], "ACXT", &ll) == NBB_E_ILLEGAL_CHARACTER);
}

TEST_CASE("estimation and simulation") {
  Bundled b;
  char* g = nullptr;
  REQUIRE(nbb_simulate_genome(b.m[1], 5000, 3, &g) == NBB_OK);
  CHECK(std::strlen(g) == 5000);
  nbb_model* est = nullptr;
  REQUIRE(nbb_model_estimate("est", g, 0.0, &est) == NBB_OK);
  double h = 1;
  REQUIRE(nbb_hellinger(est, b.m[1], &h) == NBB_OK);
  CHECK(h < 0.1);

  nbb_read_config cfg = nbb_read_config_default();
  CHECK(cfg.read_length == 101);
  nbb_records* r = nullptr;
  REQUIRE(nbb_simulate_reads(g, "g", &cfg, 2, &r) == NBB_OK);
  CHECK(nbb_records_count(r) == static_cast<std::size_t>(std::llround(6.0 * 5000 / 101)));
  CHECK(std::string(nbb_records_id(r, 0)).rfind("src=g off=", 0) == 0);
  nbb_records_free(r);
  nbb_string_free(g);
  nbb_model_free(est);

  const nbb_model* ms[3] = {b.m[0], b.m[1], b.m[2]};
  const std::size_t lens[3] = {3000, 3000, 3000};
  REQUIRE(nbb_synthetic_reads(ms, lens, 3, &cfg, 1, &r) == NBB_OK);
  const std::size_t n = nbb_records_count(r);
  CHECK(n == 3 * 178);
  CHECK(nbb_records_source(r, 0) == 0);
  CHECK(nbb_records_source(r, n - 1) == 2);
  nbb_records_free(r);

  double q = 0;
  REQUIRE(nbb_null_quantile(b.m[0], 34125, 20, 0.9, 1, 0, 1, &q) == NBB_OK);
  CHECK(q > 0.0);
  CHECK(q < 0.05);
}

TEST_CASE("classification through the C API") {
  Bundled b;
  const auto reads = random_reads(50, 4);
  const auto p = ptrs(reads);
  std::vector<std::size_t> dec(50);
  std::vector<double> post(150);
  REQUIRE(nbb_classify_batch(b.c, p.data(), 50, 2, dec.data(), post.data()) == NBB_OK);
  for (std::size_t i = 0; i < 50; ++i) {
    std::size_t one = 9;
    REQUIRE(nbb_classify(b.c, p[i], &one) == NBB_OK);
    CHECK(one == dec[i]);
    CHECK(post[3 * i] + post[3 * i + 1] + post[3 * i + 2] == doctest::Approx(1.0));
  }
  CHECK(nbb_classifier_num_classes(b.c) == 3);
  CHECK(std::string(nbb_classifier_class_name(b.c, 2)) == "SARS");
  CHECK(nbb_classifier_has_posterior(b.c) == 1);

  const std::size_t groups[3] = {0, 1, 1};
  const char* names[2] = {"Adeno", "Corona"};
  nbb_classifier* g = nullptr;
  REQUIRE(nbb_classifier_grouped(b.c, groups, names, 2, &g) == NBB_OK);
  double gp[2];
  REQUIRE(nbb_posterior(g, p[0], gp) == NBB_OK);
  CHECK(gp[1] == doctest::Approx(post[1] + post[2]));
  nbb_classifier_free(g);

  std::size_t d = 0;
  CHECK(nbb_classify(b.c, "ACQT", &d) == NBB_E_ILLEGAL_CHARACTER);
}

TEST_CASE("callback classifiers and exploration") {
  const char* names[2] = {"even", "odd"};
  nbb_classifier* c = nullptr;
  REQUIRE(nbb_classifier_callback(names, 2, count_a_parity, nullptr, &c) == NBB_OK);
  CHECK(nbb_classifier_has_posterior(c) == 0);

  nbb_trace* walk = nullptr;
  REQUIRE(nbb_random_walk(c, "ACGTACGT", 100, 5, 0, 0, &walk) == NBB_OK);
  CHECK(nbb_trace_strategy(walk) == NBB_STRATEGY_WALK);
  CHECK(nbb_trace_evaluations(walk) == 101);
  CHECK(nbb_trace_length(walk) == 101);
  CHECK(nbb_trace_seed(walk) == 5);
  for (std::size_t i = 0; i < nbb_trace_pair_count(walk); ++i) {
    const char *a = nullptr, *bb = nullptr;
    std::size_t da = 0, db = 0;
    REQUIRE(nbb_trace_pair(walk, i, &a, &bb, &da, &db) == NBB_OK);
    CHECK(da != db);
  }

  nbb_trace* crawl = nullptr;
  REQUIRE(nbb_boundary_crawl(c, "ACGTACGT", 10, 6, 0, &crawl) == NBB_OK);
  CHECK(nbb_trace_evaluations(crawl) == 24 * nbb_trace_length(crawl));
  CHECK(nbb_trace_n_decisions(crawl, 2) == 2);

  const char* targets[1] = {"CCGTACGT"};
  nbb_trace* ham = nullptr;
  REQUIRE(nbb_hamming_search(c, "ACGTACGT", targets, 1, 1, &ham) == NBB_OK);
  CHECK(nbb_trace_pair_count(ham) == 1);

  const nbb_trace* all[3] = {ham, walk, crawl};
  nbb_efficiency_row rows[3];
  std::size_t n_rows = 0;
  REQUIRE(nbb_efficiency_report(all, 3, rows, &n_rows) == NBB_OK);
  CHECK(n_rows == 3);
  CHECK(rows[2].strategy == NBB_STRATEGY_CRAWL);
  CHECK(rows[2].efficiency == doctest::Approx(1.0 / 24));
  nbb_trace_free(ham);
  nbb_trace_free(walk);
  nbb_trace_free(crawl);

  nbb_classifier* bad = nullptr;
  REQUIRE(nbb_classifier_callback(names, 2, failing, nullptr, &bad) == NBB_OK);
  std::size_t d = 0;
  CHECK(nbb_classify(bad, "ACGT", &d) != NBB_OK);
  nbb_classifier_free(bad);
  nbb_classifier_free(c);
}

TEST_CASE("boundary functions through the C API") {
  Bundled b;
  const auto reads = random_reads(30, 8);
  const auto p = ptrs(reads);
  std::vector<nbb_profile> prof(30);
  std::vector<std::size_t> counts(90);
  REQUIRE(nbb_neighbor_profiles(b.c, p.data(), 30, 1, 1, prof.data(), counts.data()) == NBB_OK);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(counts[3 * i] + counts[3 * i + 1] + counts[3 * i + 2] == 404);
    CHECK((prof[i].ns == 1.0) == (prof[i].boundary_status == 0));
    double ns = 0;
    std::size_t ev = 0;
    REQUIRE(nbb_sampled_ns(b.c, p[i], 404, 1, 1, &ns, &ev) == NBB_OK);
    CHECK(std::abs(ns - prof[i].ns) <= 1e-15);
  }
  nbb_db_bound bound{};
  REQUIRE(nbb_distance_bound(b.c, p[0], nullptr, nullptr, 0, 2000, 0, &bound) == NBB_OK);
  CHECK(bound.budget_used <= 2000);

  const std::size_t ks[3] = {1, 20, 404};
  double rr[3];
  REQUIRE(nbb_ns_sampling_rrmse(b.c, p.data(), 30, ks, 3, 1, 1, 1, rr) == NBB_OK);
  CHECK(rr[2] <= 1e-10);
  CHECK(rr[1] <= rr[0]);

  std::size_t idx = 0;
  while (prof[idx].boundary_status != 0) ++idx;
  nbb_trace* t = nullptr;
  CHECK(nbb_boundary_crawl(b.c, p[idx], 5, 1, 1, &t) == NBB_E_NOT_ON_BOUNDARY);
  CHECK(t == nullptr);
}

TEST_CASE("analysis through the C API") {
  const std::size_t truth[4] = {0, 0, 1, 1}, dec[4] = {0, 1, 1, 1};
  std::size_t counts[4];
  double rate = 0;
  REQUIRE(nbb_confusion_matrix(truth, dec, 4, 2, counts, &rate) == NBB_OK);
  CHECK(rate == 0.75);
  CHECK(counts[1] == 1);

  const std::size_t t[4] = {20, 0, 0, 20};
  double x = 0;
  REQUIRE(nbb_chi_square(t, 2, 2, &x) == NBB_OK);
  CHECK(x == doctest::Approx(40.0));

  const double a[2] = {1, 2}, bb[2] = {1.5, 2.5};
  REQUIRE(nbb_ks_statistic(a, 2, bb, 2, &x) == NBB_OK);
  CHECK(x == doctest::Approx(0.5));

  const double s[4] = {0.9, 0.8, 0.2, 0.1};
  const int ok[4] = {1, 1, 0, 0};
  nbb_roc* roc = nullptr;
  REQUIRE(nbb_roc_curve(s, ok, 4, &roc) == NBB_OK);
  CHECK(nbb_roc_auc(roc) == doctest::Approx(1.0));
  double th, fpr, tpr;
  REQUIRE(nbb_roc_point(roc, nbb_roc_size(roc) - 1, &th, &fpr, &tpr) == NBB_OK);
  CHECK(fpr == 1.0);
  CHECK(nbb_roc_point(roc, 99, &th, &fpr, &tpr) == NBB_E_INVALID_ARGUMENT);
  nbb_roc_free(roc);

  const double ns[4] = {0.1, 0.4, 0.7, 1.0};
  double mp[4];
  for (int i = 0; i < 4; ++i) mp[i] = 2 * ns[i] * ns[i] - 2 * ns[i] + 1;
  const std::size_t cls[4] = {0, 0, 0, 0};
  nbb_quadratic_coef coef[2];
  double r2, ar2, mse;
  REQUIRE(nbb_quadratic_fit(ns, mp, cls, 4, 2, coef, &r2, &ar2, &mse) == NBB_OK);
  CHECK(coef[0].alpha == doctest::Approx(2.0));
  CHECK(coef[1].n == 0);

  const double third[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  double bx, by;
  REQUIRE(nbb_barycentric(third, &bx, &by) == NBB_OK);
  CHECK(by == doctest::Approx(0.2886751));
}
