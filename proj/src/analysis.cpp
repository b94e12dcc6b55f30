#include "nbb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace nbb {

ContingencyTable make_table(CountTable counts) {
  ContingencyTable t;
  t.counts = std::move(counts);
  require(!t.counts.empty() && !t.counts.front().empty(), ErrorCode::kInvalidArgument,
          "contingency table must be non-empty");
  const std::size_t cols = t.counts.front().size();
  t.col_sums.assign(cols, 0);
  for (const auto& row : t.counts) {
    require(row.size() == cols, ErrorCode::kInvalidArgument, "ragged contingency table");
    std::size_t s = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      s += row[j];
      t.col_sums[j] += row[j];
    }
    t.row_sums.push_back(s);
    t.total += s;
  }
  return t;
}

ConfusionMatrix confusion_from_counts(CountTable counts) {
  ConfusionMatrix m;
  m.table = make_table(std::move(counts));
  require(m.table.counts.size() == m.table.col_sums.size(), ErrorCode::kInvalidArgument,
          "confusion matrix must be square");
  require(m.table.total > 0, ErrorCode::kInvalidArgument, "confusion matrix is empty");
  std::size_t diag = 0;
  for (std::size_t i = 0; i < m.table.counts.size(); ++i) diag += m.table.counts[i][i];
  m.correct_rate = static_cast<double>(diag) / static_cast<double>(m.table.total);
  return m;
}

ConfusionMatrix confusion_matrix(std::span<const ClassIndex> truths, std::span<const ClassIndex> decisions,
                                 std::size_t num_classes) {
  require(truths.size() == decisions.size(), ErrorCode::kLengthMismatch,
          "truths and decisions differ in length");
  require(!truths.empty(), ErrorCode::kInvalidArgument, "confusion matrix needs observations");
  CountTable counts(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < truths.size(); ++i) {
    require(truths[i] < num_classes && decisions[i] < num_classes, ErrorCode::kInvalidArgument,
            "class index out of range");
    ++counts[truths[i]][decisions[i]];
  }
  return confusion_from_counts(std::move(counts));
}

ContingencyTable crosstab(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                          std::size_t n_rows, std::size_t n_cols) {
  require(rows.size() == cols.size(), ErrorCode::kLengthMismatch, "crosstab inputs differ in length");
  CountTable counts(n_rows, std::vector<std::size_t>(n_cols, 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < n_rows && cols[i] < n_cols, ErrorCode::kInvalidArgument,
            "crosstab category out of range");
    ++counts[rows[i]][cols[i]];
  }
  return make_table(std::move(counts));
}

double chi_square_statistic(const ContingencyTable& t) {
  for (auto s : t.row_sums) require(s > 0, ErrorCode::kDomain, "chi-square needs positive row sums");
  for (auto s : t.col_sums) require(s > 0, ErrorCode::kDomain, "chi-square needs positive column sums");
  const double n = static_cast<double>(t.total);
  double stat = 0.0;
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    for (std::size_t j = 0; j < t.col_sums.size(); ++j) {
      const double expected = static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j]) / n;
      const double diff = static_cast<double>(t.counts[i][j]) - expected;
      stat += diff * diff / expected;
    }
  }
  return stat;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::kInvalidArgument, "KS statistic needs non-empty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j >= y.size() || (i < x.size() && x[i] <= y[j])) v = x[i];
    else v = y[j];
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<std::pair<double, double>> ecdf(std::span<const double> sample) {
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;
    out.emplace_back(x[i], static_cast<double>(i + 1) / static_cast<double>(x.size()));
  }
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size() && a.size() >= 2, ErrorCode::kInvalidArgument,
          "correlation needs two equal-length samples of size >= 2");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  require(saa > 0.0 && sbb > 0.0, ErrorCode::kDomain, "correlation of a constant sample");
  return sab / std::sqrt(saa * sbb);
}

RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& correct) {
  require(scores.size() == correct.size(), ErrorCode::kLengthMismatch, "scores and outcomes differ in length");
  const auto positives = static_cast<std::size_t>(std::count(correct.begin(), correct.end(), true));
  const std::size_t negatives = correct.size() - positives;
  require(positives > 0 && negatives > 0, ErrorCode::kDomain,
          "ROC needs both correct and incorrect decisions");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return scores[i] > scores[j]; });

  RocCurve roc;
  roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double thr = scores[order[i]];
    while (i < order.size() && scores[order[i]] == thr) {
      if (correct[order[i]]) ++tp;
      else ++fp;
      ++i;
    }
    roc.points.push_back({thr, static_cast<double>(fp) / static_cast<double>(negatives),
                          static_cast<double>(tp) / static_cast<double>(positives)});
  }
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    const auto& p = roc.points[i - 1];
    const auto& q = roc.points[i];
    roc.auc += (q.fpr - p.fpr) * (q.tpr + p.tpr) / 2.0;
  }
  return roc;
}

namespace {

struct LsqResult {
  Eigen::VectorXd coef;  // for the centered predictors
  double intercept = 0.0;
  Eigen::VectorXd residuals;
  Eigen::Index rank = 0;
};

// Least squares with an intercept: predictors are centered and solved with a
// rank-revealing QR; collinear columns get zero coefficients.
LsqResult centered_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const Eigen::RowVectorXd means = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - means;
  const Eigen::VectorXd yc = y.array() - y_mean;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
  qr.setThreshold(1e-10);
  LsqResult r;
  r.rank = qr.rank();
  r.coef = qr.solve(yc);
  if (r.rank < xc.cols()) {
    // solve() leaves unstable values in the free coordinates; zero them.
    const auto perm = qr.colsPermutation().indices();
    for (Eigen::Index i = r.rank; i < xc.cols(); ++i) r.coef(perm(i)) = 0.0;
    Eigen::MatrixXd kept(xc.rows(), r.rank);
    for (Eigen::Index i = 0; i < r.rank; ++i) kept.col(i) = xc.col(perm(i));
    const Eigen::VectorXd sub = kept.colPivHouseholderQr().solve(yc);
    for (Eigen::Index i = 0; i < r.rank; ++i) r.coef(perm(i)) = sub(i);
  }
  r.intercept = y_mean - means.dot(r.coef);
  r.residuals = yc - xc * r.coef;
  return r;
}

}  // namespace

double QuadraticFit::predict(double ns, ClassIndex cls) const {
  const auto& c = per_class.at(cls);
  return c.alpha * ns * ns + c.beta * ns + c.gamma;
}

QuadraticFit quadratic_fit(std::span<const double> ns, std::span<const double> mp,
                           std::span<const ClassIndex> classes, std::size_t num_classes) {
  require(ns.size() == mp.size() && ns.size() == classes.size(), ErrorCode::kLengthMismatch,
          "quadratic fit inputs differ in length");
  require(!ns.empty(), ErrorCode::kInvalidArgument, "quadratic fit needs observations");
  QuadraticFit fit;
  fit.per_class.resize(num_classes);
  fit.residuals.assign(ns.size(), 0.0);
  std::size_t params = 0;
  double sse = 0.0;
  for (ClassIndex cls = 0; cls < num_classes; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      require(classes[i] < num_classes, ErrorCode::kInvalidArgument, "class index out of range");
      if (classes[i] == cls) idx.push_back(i);
    }
    if (idx.empty()) {
      fit.per_class[cls] = {std::nan(""), std::nan(""), std::nan(""), 0};
      continue;
    }
    std::vector<double> distinct;
    for (auto i : idx) distinct.push_back(ns[i]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    require(distinct.size() >= 3, ErrorCode::kRankDeficient,
            "class " + std::to_string(cls) + " needs at least 3 distinct NS values");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(idx.size()), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const double v = ns[idx[r]];
      x(static_cast<Eigen::Index>(r), 0) = v * v;
      x(static_cast<Eigen::Index>(r), 1) = v;
      y(static_cast<Eigen::Index>(r)) = mp[idx[r]];
    }
    const auto lsq = centered_least_squares(x, y);
    fit.per_class[cls] = {lsq.coef(0), lsq.coef(1), lsq.intercept, idx.size()};
    for (std::size_t r = 0; r < idx.size(); ++r) {
      fit.residuals[idx[r]] = lsq.residuals(static_cast<Eigen::Index>(r));
      sse += lsq.residuals(static_cast<Eigen::Index>(r)) * lsq.residuals(static_cast<Eigen::Index>(r));
    }
    params += 3;
  }
  const double n = static_cast<double>(ns.size());
  const double mean = std::accumulate(mp.begin(), mp.end(), 0.0) / n;
  double sst = 0.0;
  for (double v : mp) sst += (v - mean) * (v - mean);
  fit.mse = sse / n;
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  const double dof = n - static_cast<double>(params);
  fit.adjusted_r_squared = (sst > 0.0 && dof > 0.0)
                               ? 1.0 - (sse / dof) / (sst / (n - 1.0))
                               : fit.r_squared;
  return fit;
}

std::vector<RrmseRow> ns_sampling_rrmse(std::span<const NeighborProfile> profiles,
                                        std::span<const std::size_t> ks, std::uint64_t seed) {
  require(profiles.size() >= 2, ErrorCode::kInvalidArgument, "RRMSE needs at least two profiles");
  require(!ks.empty() && std::is_sorted(ks.begin(), ks.end()) && ks.front() >= 1, ErrorCode::kInvalidArgument,
          "sample sizes must be ascending and positive");
  const std::size_t m = profiles.front().neighbor_decisions.size();
  for (const auto& p : profiles) {
    require(!p.neighbor_decisions.empty(), ErrorCode::kInvalidArgument,
            "profiles must retain per-neighbor decisions");
    require(p.neighbor_decisions.size() == m, ErrorCode::kInvalidArgument,
            "profiles must share one neighbor count");
  }
  const std::size_t kmax = ks.back();
  require(kmax <= m, ErrorCode::kInvalidArgument,
          "sample size " + std::to_string(kmax) + " exceeds the neighbor count " + std::to_string(m));

  const auto n = static_cast<Eigen::Index>(profiles.size());
  Eigen::VectorXd y(n);
  Eigen::MatrixXd partial(n, static_cast<Eigen::Index>(kmax));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = profiles[static_cast<std::size_t>(i)];
    y(i) = p.ns;
    Rng rng(seed + static_cast<std::uint64_t>(i));
    const auto order = random_neighbor_order(m, rng);
    std::vector<std::size_t> counts(p.neighbor_counts.size(), 0);
    for (std::size_t j = 0; j < kmax; ++j) {
      ++counts[p.neighbor_decisions[order[j]]];
      partial(i, static_cast<Eigen::Index>(j)) = neighbor_similarity(p.decision, counts);
    }
  }
  const double y_mean = y.mean();
  require((y.array() - y_mean).abs().maxCoeff() > 0.0, ErrorCode::kDomain,
          "NS is constant across profiles; RRMSE is undefined");
  require(y_mean > 0.0, ErrorCode::kDomain, "mean NS must be positive");

  std::vector<RrmseRow> out;
  for (std::size_t k : ks) {
    const auto lsq = centered_least_squares(partial.leftCols(static_cast<Eigen::Index>(k)), y);
    const double mse = lsq.residuals.squaredNorm() / static_cast<double>(n);
    out.push_back({k, std::sqrt(mse) / y_mean, k - static_cast<std::size_t>(lsq.rank)});
  }
  return out;
}

std::pair<double, double> barycentric_coords(std::span<const double> p) {
  require(p.size() == 3, ErrorCode::kInvalidArgument, "barycentric coordinates need 3 components");
  double s = 0.0;
  for (double v : p) {
    require(v >= 0.0, ErrorCode::kDomain, "barycentric components must be non-negative");
    s += v;
  }
  require(std::abs(s - 1.0) <= 1e-6, ErrorCode::kDomain, "barycentric components must sum to 1");
  const double apex_y = std::sqrt(3.0) / 2.0;
  return {p[0] * 0.5 + p[2] * 1.0, p[0] * apex_y};
}

}  // namespace nbb
