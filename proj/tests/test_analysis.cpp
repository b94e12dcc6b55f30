#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nbb/analysis.hpp"

using namespace nbb;

namespace {

double chi_square_oracle(const CountTable& t) {
  double total = 0.0;
  std::vector<double> rs(t.size(), 0.0), cs(t[0].size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      rs[i] += t[i][j];
      cs[j] += t[i][j];
      total += t[i][j];
    }
  double x = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      const double e = rs[i] * cs[j] / total;
      x += (t[i][j] - e) * (t[i][j] - e) / e;
    }
  return x;
}

// Probability that a random correct item outscores a random incorrect one.
double auc_oracle(const std::vector<double>& s, const std::vector<bool>& ok) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!ok[i] || ok[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  return wins / pairs;
}

// Least squares by Gaussian elimination on the normal equations.
std::vector<double> normal_equations(const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  const std::size_t p = x[0].size();
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t r = 0; r < x.size(); ++r)
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) a[i][j] += x[r][i] * x[r][j];
      a[i][p] += x[r][i] * y[r];
    }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> b(p);
  for (std::size_t i = 0; i < p; ++i) b[i] = a[i][p] / a[i][i];
  return b;
}

NeighborProfile fake_profile(std::size_t m, Rng& rng) {
  NeighborProfile p;
  std::uniform_int_distribution<std::size_t> cls(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  p.decision = cls(rng);
  const double agree = u(rng);
  p.neighbor_counts.assign(3, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const ClassIndex d = u(rng) < agree ? p.decision : cls(rng);
    p.neighbor_decisions.push_back(d);
    ++p.neighbor_counts[d];
  }
  p.ns = neighbor_similarity(p.decision, p.neighbor_counts);
  return p;
}

}  // namespace

TEST_CASE("confusion matrix") {
  const std::vector<ClassIndex> t = {0, 1, 2, 1, 0};
  const auto same = confusion_matrix(t, t, 3);
  CHECK(same.correct_rate == 1.0);
  CHECK(same.table.counts[1][1] == 2);
  CHECK(same.table.counts[0][1] == 0);

  const std::vector<ClassIndex> zeros(4, 0), ones(4, 1);
  CHECK(confusion_matrix(zeros, ones, 2).correct_rate == 0.0);
  CHECK(confusion_matrix(zeros, ones, 2).table.counts[0][1] == 4);

  CHECK_THROWS_AS(confusion_matrix(zeros, std::vector<ClassIndex>{0}, 2), Error);
  CHECK_THROWS_AS(confusion_matrix(std::vector<ClassIndex>{}, std::vector<ClassIndex>{}, 2), Error);
  CHECK_THROWS_AS(confusion_matrix(zeros, std::vector<ClassIndex>{0, 0, 0, 5}, 2), Error);
}

TEST_CASE("confusion rate on the published matrix") {
  const auto m = confusion_from_counts({{1601, 115, 250}, {64, 1717, 215}, {268, 169, 1470}});
  CHECK(m.table.total == 5869);
  CHECK(m.table.row_sums == std::vector<std::size_t>{1966, 1996, 1907});
  CHECK(m.correct_rate == doctest::Approx(4788.0 / 5869.0).epsilon(1e-15));
  CHECK(std::abs(m.correct_rate - 0.8155) <= 5e-4);
}

TEST_CASE("crosstab") {
  const std::vector<std::size_t> rows = {0, 1, 2, 0, 1};
  const std::vector<std::size_t> zero(5, 0);
  const auto t = crosstab(rows, zero, 3, 3);
  CHECK(t.col_sums == std::vector<std::size_t>{5, 0, 0});
  CHECK(t.row_sums == std::vector<std::size_t>{2, 2, 1});

  const auto published = make_table({{1378, 526, 62}, {1554, 375, 67}, {1146, 700, 61}});
  CHECK(published.row_sums[0] == 1966);
  CHECK(published.col_sums == std::vector<std::size_t>{4078, 1601, 190});
  CHECK(published.total == 5869);

  Rng rng(3);
  std::uniform_int_distribution<std::size_t> u(0, 2);
  std::vector<std::size_t> a(9000), b(9000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
  }
  const auto flat = crosstab(a, b, 3, 3);
  const double e = 1000.0, sd = std::sqrt(9000 * (1.0 / 9) * (8.0 / 9));
  for (const auto& row : flat.counts)
    for (auto c : row) CHECK(std::abs(static_cast<double>(c) - e) < 5 * sd);

  CHECK_THROWS_AS(crosstab(rows, std::vector<std::size_t>{0}, 3, 3), Error);
}

TEST_CASE("chi-square examples") {
  CHECK(chi_square_statistic(make_table({{10, 10}, {10, 10}})) == 0.0);
  CHECK(chi_square_statistic(make_table({{20, 0}, {0, 20}})) == doctest::Approx(40.0));
  const CountTable bottom = {{382, 598, 101}, {3696, 1003, 89}};
  CHECK(chi_square_statistic(make_table(bottom)) == doctest::Approx(chi_square_oracle(bottom)).epsilon(1e-12));
  CHECK_THROWS_AS(chi_square_statistic(make_table({{1, 0}, {2, 0}})), Error);
}

TEST_CASE("chi-square on the published correctness table") {
  const CountTable bottom = {{382, 598, 101}, {3696, 1003, 89}};
  CHECK(std::abs(chi_square_statistic(make_table(bottom)) - 726.65) <= 0.01);
}

TEST_CASE("chi-square invariances") {
  Rng rng(4);
  std::uniform_int_distribution<std::size_t> u(1, 200);
  for (int t = 0; t < 100; ++t) {
    CountTable c(3, std::vector<std::size_t>(4));
    for (auto& row : c)
      for (auto& v : row) v = u(rng);
    const double x = chi_square_statistic(make_table(c));
    CHECK(x == doctest::Approx(chi_square_oracle(c)).epsilon(1e-12));
    auto rows = c;
    std::reverse(rows.begin(), rows.end());
    CHECK(chi_square_statistic(make_table(rows)) == doctest::Approx(x).epsilon(1e-12));
    auto cols = c;
    for (auto& row : cols) std::rotate(row.begin(), row.begin() + 1, row.end());
    CHECK(chi_square_statistic(make_table(cols)) == doctest::Approx(x).epsilon(1e-12));
  }
  // Proportional rows match the independence table exactly.
  CHECK(chi_square_statistic(make_table({{1, 2, 3}, {2, 4, 6}})) == doctest::Approx(0.0));
}

TEST_CASE("ks statistic and ecdf") {
  const std::vector<double> a = {1, 2}, b = {1.5, 2.5};
  CHECK(ks_statistic(a, a) == 0.0);
  CHECK(ks_statistic(a, std::vector<double>{5, 6, 7}) == 1.0);
  CHECK(ks_statistic(a, b) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_statistic(a, std::vector<double>{}), Error);

  Rng rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(30), y(45);
    for (auto& v : x) v = n(rng);
    for (auto& v : y) v = n(rng) + 0.3;
    const double d = ks_statistic(x, y);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(d == ks_statistic(y, x));
  }

  const auto e = ecdf(std::vector<double>{3, 1, 1, 2});
  REQUIRE(e.size() == 3);
  CHECK(e[0] == std::pair<double, double>{1.0, 0.5});
  CHECK(e[1] == std::pair<double, double>{2.0, 0.75});
  CHECK(e[2] == std::pair<double, double>{3.0, 1.0});
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x = {1, 2, 3, 4};
  CHECK(pearson_correlation(x, std::vector<double>{2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(pearson_correlation(x, std::vector<double>{1, 3, 2, 4}) == doctest::Approx(0.8));
  CHECK_THROWS_AS(pearson_correlation(x, std::vector<double>{1, 1, 1, 1}), Error);
}

TEST_CASE("roc examples") {
  const std::vector<bool> ok = {true, true, false, false};
  CHECK(roc_curve(std::vector<double>{0.9, 0.8, 0.2, 0.1}, ok).auc == doctest::Approx(1.0));
  CHECK(roc_curve(std::vector<double>{0.5, 0.5, 0.5, 0.5}, ok).auc == doctest::Approx(0.5));
  CHECK(roc_curve(std::vector<double>{0.1, 0.2, 0.8, 0.9}, ok).auc == doctest::Approx(0.0));
  CHECK_THROWS_AS(roc_curve(std::vector<double>{0.1, 0.2}, std::vector<bool>{true, true}), Error);
  CHECK_THROWS_AS(roc_curve(std::vector<double>{0.1}, ok), Error);

  const auto c = roc_curve(std::vector<double>{0.9, 0.3, 0.6, 0.1}, ok);
  CHECK(c.points.front().fpr == 0.0);
  CHECK(c.points.front().tpr == 0.0);
  CHECK(c.points.back().fpr == 1.0);
  CHECK(c.points.back().tpr == 1.0);
}

TEST_CASE("roc properties") {
  Rng rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(60);
    std::vector<bool> ok(60);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ok[i] = i % 3 != 0;
      s[i] = std::round((u(rng) + (ok[i] ? 0.3 : 0.0)) * 20) / 20;  // ties on purpose
    }
    const auto c = roc_curve(s, ok);
    CHECK(c.auc == doctest::Approx(auc_oracle(s, ok)).epsilon(1e-12));
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      CHECK(c.points[i].fpr >= c.points[i - 1].fpr);
      CHECK(c.points[i].tpr >= c.points[i - 1].tpr);
      CHECK(c.points[i].threshold < c.points[i - 1].threshold);
    }
    std::vector<double> warped(s.size());
    std::transform(s.begin(), s.end(), warped.begin(), [](double v) { return std::exp(3 * v) - 7; });
    CHECK(roc_curve(warped, ok).auc == doctest::Approx(c.auc).epsilon(1e-12));
  }
}

TEST_CASE("quadratic fit recovers exact parabolas") {
  std::vector<double> ns, mp;
  std::vector<ClassIndex> cls;
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    ns.push_back(x);
    mp.push_back(2 * x * x - 2 * x + 1);
    cls.push_back(0);
    ns.push_back(x);
    mp.push_back(-x * x + 0.5 * x + 0.3);
    cls.push_back(1);
  }
  const auto f = quadratic_fit(ns, mp, cls, 3);
  CHECK(std::abs(f.per_class[0].alpha - 2) <= 1e-9);
  CHECK(std::abs(f.per_class[0].beta + 2) <= 1e-9);
  CHECK(std::abs(f.per_class[0].gamma - 1) <= 1e-9);
  CHECK(std::abs(f.per_class[1].alpha + 1) <= 1e-9);
  CHECK(f.per_class[0].n == 21);
  CHECK(f.per_class[2].n == 0);
  CHECK(std::isnan(f.per_class[2].alpha));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.mse <= 1e-20);
  CHECK(f.predict(0.5, 0) == doctest::Approx(0.5));
}

TEST_CASE("three points per class interpolate") {
  const std::vector<double> ns = {0.1, 0.5, 0.9};
  const std::vector<double> mp = {0.7, 0.2, 0.95};
  const std::vector<ClassIndex> cls = {0, 0, 0};
  const auto f = quadratic_fit(ns, mp, cls, 1);
  for (double r : f.residuals) CHECK(std::abs(r) <= 1e-12);
  // Closed-form Lagrange interpolation.
  const double x = 0.3;
  const double lag = 0.7 * (x - 0.5) * (x - 0.9) / ((0.1 - 0.5) * (0.1 - 0.9)) +
                     0.2 * (x - 0.1) * (x - 0.9) / ((0.5 - 0.1) * (0.5 - 0.9)) +
                     0.95 * (x - 0.1) * (x - 0.5) / ((0.9 - 0.1) * (0.9 - 0.5));
  CHECK(f.predict(x, 0) == doctest::Approx(lag).epsilon(1e-10));
}

TEST_CASE("quadratic fit residuals are orthogonal to the design") {
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> ns(300), mp(300);
  std::vector<ClassIndex> cls(300);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    ns[i] = u(rng);
    cls[i] = i % 3;
    mp[i] = 0.4 + 0.5 * ns[i] * ns[i] + 0.1 * u(rng);
  }
  const auto f = quadratic_fit(ns, mp, cls, 3);
  for (ClassIndex k = 0; k < 3; ++k) {
    double d0 = 0, d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (cls[i] != k) continue;
      d0 += f.residuals[i];
      d1 += f.residuals[i] * ns[i];
      d2 += f.residuals[i] * ns[i] * ns[i];
    }
    CHECK(std::abs(d0) <= 1e-8);
    CHECK(std::abs(d1) <= 1e-8);
    CHECK(std::abs(d2) <= 1e-8);
  }
  CHECK(f.r_squared <= 1.0);
  CHECK(f.adjusted_r_squared <= f.r_squared);

  const std::vector<double> flat = {0.5, 0.5, 0.5, 0.5};
  const std::vector<ClassIndex> one(4, 0);
  try {
    quadratic_fit(flat, std::vector<double>{1, 2, 3, 4}, one, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRankDeficient);
  }
}

TEST_CASE("ns sampling rrmse") {
  Rng rng(8);
  std::vector<NeighborProfile> profiles;
  for (int i = 0; i < 120; ++i) profiles.push_back(fake_profile(40, rng));
  const std::vector<std::size_t> ks = {1, 2, 3, 5, 10, 20, 40};
  const auto rows = ns_sampling_rrmse(profiles, ks, 11);
  REQUIRE(rows.size() == ks.size());
  CHECK(rows.back().rrmse <= 1e-10);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].rrmse <= rows[i - 1].rrmse + 1e-12);

  // Independent solve for k = 3.
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  double mean = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    Rng r(11 + i);
    const auto order = random_neighbor_order(40, r);
    std::vector<std::size_t> counts(3, 0);
    std::vector<double> row = {1.0};
    for (std::size_t j = 0; j < 3; ++j) {
      ++counts[p.neighbor_decisions[order[j]]];
      row.push_back(neighbor_similarity(p.decision, counts));
    }
    x.push_back(row);
    y.push_back(p.ns);
    mean += p.ns / profiles.size();
  }
  const auto b = normal_equations(x, y);
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) fit += b[j] * x[i][j];
    sse += (y[i] - fit) * (y[i] - fit);
  }
  CHECK(rows[2].rrmse == doctest::Approx(std::sqrt(sse / y.size()) / mean).epsilon(1e-9));

  CHECK_THROWS_AS(ns_sampling_rrmse(profiles, std::vector<std::size_t>{41}, 1), Error);
  CHECK_THROWS_AS(ns_sampling_rrmse(profiles, std::vector<std::size_t>{5, 2}, 1), Error);
  auto constant = profiles;
  for (auto& p : constant) {
    std::fill(p.neighbor_decisions.begin(), p.neighbor_decisions.end(), p.decision);
    p.ns = 1.0;
  }
  CHECK_THROWS_AS(ns_sampling_rrmse(constant, ks, 1), Error);
}

TEST_CASE("barycentric coordinates") {
  const auto apex = barycentric_coords(std::vector<double>{1, 0, 0});
  CHECK(apex.first == doctest::Approx(0.5));
  CHECK(apex.second == doctest::Approx(0.8660254));
  const auto left = barycentric_coords(std::vector<double>{0, 1, 0});
  CHECK(left.first == 0.0);
  CHECK(left.second == 0.0);
  const auto centroid = barycentric_coords(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(centroid.first == doctest::Approx(0.5));
  CHECK(centroid.second == doctest::Approx(0.2886751));
  CHECK_THROWS_AS(barycentric_coords(std::vector<double>{0.5, 0.5}), Error);
  CHECK_THROWS_AS(barycentric_coords(std::vector<double>{0.5, 0.6, 0}), Error);

  Rng rng(9);
  std::exponential_distribution<double> e(1.0);
  const double h = std::sqrt(3.0) / 2;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> p = {e(rng), e(rng), e(rng)};
    const double s = p[0] + p[1] + p[2];
    for (auto& v : p) v /= s;
    const auto [x, y] = barycentric_coords(p);
    CHECK(y >= -1e-15);
    CHECK(y <= h * 2 * x + 1e-12);
    CHECK(y <= h * 2 * (1 - x) + 1e-12);
  }
}
