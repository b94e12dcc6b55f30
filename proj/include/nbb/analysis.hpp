#pragma once

// Statistical reductions over classification and boundary results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nbb/bayes.hpp"
#include "nbb/boundary.hpp"

namespace nbb {

using CountTable = std::vector<std::vector<std::size_t>>;

struct ContingencyTable {
  CountTable counts;
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
  std::size_t total = 0;
};

ContingencyTable make_table(CountTable counts);

// Rows are true sources, columns decisions.
struct ConfusionMatrix {
  ContingencyTable table;
  double correct_rate = 0.0;
};

ConfusionMatrix confusion_matrix(std::span<const ClassIndex> truths, std::span<const ClassIndex> decisions,
                                 std::size_t num_classes);
ConfusionMatrix confusion_from_counts(CountTable counts);

// Contingency table of row categories (0..n_rows-1) against column categories.
ContingencyTable crosstab(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                          std::size_t n_rows, std::size_t n_cols);

// Pearson chi-square against the independence table. Every row and column
// sum must be positive.
double chi_square_statistic(const ContingencyTable& table);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// (x, F(x)) at each distinct sample value, ascending.
std::vector<std::pair<double, double>> ecdf(std::span<const double> sample);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct RocPoint {
  double threshold = 0.0;  // accept when score >= threshold
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) to (1,1)
  double auc = 0.0;
};

// Positive class: the decision was correct. Thresholds sweep the distinct
// scores from high to low; AUC by the trapezoidal rule.
RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& correct);

struct QuadraticCoefficients {
  double alpha = 0.0;  // ns^2
  double beta = 0.0;   // ns
  double gamma = 0.0;  // intercept
  std::size_t n = 0;   // observations in this class; 0 means the class is absent
};

struct QuadraticFit {
  std::vector<QuadraticCoefficients> per_class;
  std::vector<double> residuals;  // input order
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double mse = 0.0;

  double predict(double ns, ClassIndex cls) const;
};

// Separate least-squares parabola mp ~ ns per decided class.
QuadraticFit quadratic_fit(std::span<const double> ns, std::span<const double> mp,
                           std::span<const ClassIndex> classes, std::size_t num_classes);

struct RrmseRow {
  std::size_t k = 0;
  double rrmse = 0.0;
  std::size_t dropped_columns = 0;  // collinear predictors removed by the solver
};

// For each k, regresses full NS on the partial estimates NS(., 1..k) (plus an
// intercept), each read's neighbors taken in a random order seeded with
// seed + read index. Profiles must carry neighbor decisions.
std::vector<RrmseRow> ns_sampling_rrmse(std::span<const NeighborProfile> profiles,
                                        std::span<const std::size_t> ks, std::uint64_t seed);

// Class 0 at the apex (0.5, sqrt(3)/2), class 1 at (0, 0), class 2 at (1, 0).
std::pair<double, double> barycentric_coords(std::span<const double> p);

}  // namespace nbb
