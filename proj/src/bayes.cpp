#include "nbb/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace nbb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int read_code(std::string_view r, std::size_t i) {
  const char c = r[i];
  // Lowercase never reaches here from a Sequence, but raw views may carry it.
  const int code = base_code(c);
  if (code < 0) throw IllegalCharacterError("<read>", i + 1, c);
  return code;
}

// Relative weights over the 16 (previous, current) base pairs with a shared
// log scale. Collapses to a single tracked pair whenever only one is live, so
// N-free stretches cost one table lookup per base.
class PairForward {
 public:
  explicit PairForward(const TripletModel& m) : m_(m) {}

  // Returns false once the likelihood is known to be zero.
  bool init(int c0, int c1) {
    if (c0 != 4 && c1 != 4) {
      single_ = static_cast<int>(pair_index(c0, c1));
      log_weight_ = m_.log_p2()[single_];
      return log_weight_ != kNegInf;
    }
    dense_ = true;
    w_.fill(0.0);
    for (int b1 = 0; b1 < 4; ++b1) {
      if (c0 != 4 && b1 != c0) continue;
      for (int b2 = 0; b2 < 4; ++b2) {
        if (c1 != 4 && b2 != c1) continue;
        w_[pair_index(b1, b2)] = m_.p2().probs[pair_index(b1, b2)];
      }
    }
    log_weight_ = 0.0;
    return renormalize();
  }

  bool step(int c) {
    if (!dense_) {
      if (c != 4) {
        log_weight_ += m_.log_t3()[single_][c];
        single_ = (single_ % 4) * 4 + c;
        return log_weight_ != kNegInf;
      }
      // Spread the point mass over the four possible next bases.
      dense_ = true;
      w_.fill(0.0);
      const auto& row = m_.t3().rows[single_];
      const int b2 = single_ % 4;
      for (int b3 = 0; b3 < 4; ++b3) w_[pair_index(b2, b3)] = row[b3];
      return renormalize();
    }
    std::array<double, kNumPairs> next{};
    for (std::size_t p = 0; p < kNumPairs; ++p) {
      if (w_[p] == 0.0) continue;
      const auto& row = m_.t3().rows[p];
      const int b2 = static_cast<int>(p % 4);
      if (c != 4) {
        next[pair_index(b2, c)] += w_[p] * row[c];
      } else {
        for (int b3 = 0; b3 < 4; ++b3) next[pair_index(b2, b3)] += w_[p] * row[b3];
      }
    }
    w_ = next;
    return renormalize();
  }

  double result() const {
    if (!dense_) return log_weight_;
    return log_weight_ + std::log(std::accumulate(w_.begin(), w_.end(), 0.0));
  }

 private:
  bool renormalize() {
    const double mx = *std::max_element(w_.begin(), w_.end());
    if (!(mx > 0.0)) return false;
    log_weight_ += std::log(mx);
    int live = 0, last = -1;
    for (std::size_t p = 0; p < kNumPairs; ++p) {
      w_[p] /= mx;
      if (w_[p] > 0.0) {
        ++live;
        last = static_cast<int>(p);
      }
    }
    if (live == 1) {
      dense_ = false;
      single_ = last;
    }
    return true;
  }

  const TripletModel& m_;
  bool dense_ = false;
  int single_ = 0;
  double log_weight_ = 0.0;
  std::array<double, kNumPairs> w_{};
};

}  // namespace

double log_likelihood(const TripletModel& model, std::string_view r) {
  require(r.size() >= 2, ErrorCode::kDomain, "likelihood needs a read of length >= 2");
  PairForward fwd(model);
  bool alive = fwd.init(read_code(r, 0), read_code(r, 1));
  for (std::size_t i = 2; i < r.size(); ++i) {
    const int c = read_code(r, i);
    if (alive) alive = fwd.step(c);
  }
  return alive ? fwd.result() : kNegInf;
}

ClassIndex argmax_lowest(std::span<const double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "argmax of empty vector");
  ClassIndex best = 0;
  for (ClassIndex i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double max_posterior(const Posterior& p) {
  require(!p.probs.empty(), ErrorCode::kInvalidArgument, "empty posterior");
  return *std::max_element(p.probs.begin(), p.probs.end());
}

double posterior_entropy(const Posterior& p) {
  double h = 0.0;
  for (double x : p.probs) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

Posterior Classifier::posterior(const Sequence&) const {
  fail(ErrorCode::kInvalidArgument, "classifier does not provide posterior probabilities");
}

BayesClassifier::BayesClassifier(std::vector<TripletModel> models, std::vector<double> prior)
    : models_(std::move(models)), prior_(std::move(prior)) {
  require(models_.size() >= 2, ErrorCode::kInvalidArgument, "a classifier needs at least 2 models");
  std::set<std::string> names;
  for (const auto& m : models_) {
    require(names.insert(m.label()).second, ErrorCode::kInvalidArgument,
            "duplicate class name '" + m.label() + "'");
  }
  const double k = static_cast<double>(models_.size());
  if (prior_.empty()) prior_.assign(models_.size(), 1.0 / k);
  require(prior_.size() == models_.size(), ErrorCode::kInvalidArgument,
          "prior has " + std::to_string(prior_.size()) + " weights for " +
              std::to_string(models_.size()) + " classes");
  double sum = 0.0;
  for (double w : prior_) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::kDomain, "prior weights must be non-negative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::kDomain, "prior weights must sum to 1");
  uniform_ = std::all_of(prior_.begin(), prior_.end(),
                         [&](double w) { return w == prior_.front(); });
  for (double w : prior_) log_prior_.push_back(w > 0.0 ? std::log(w) : kNegInf);
}

const std::string& BayesClassifier::class_name(ClassIndex index) const {
  return models_.at(index).label();
}

std::vector<double> BayesClassifier::log_likelihoods(const Sequence& r) const {
  std::vector<double> ll(models_.size());
  for (std::size_t k = 0; k < models_.size(); ++k) ll[k] = log_likelihood(models_[k], r);
  return ll;
}

std::vector<double> BayesClassifier::log_scores(const Sequence& r) const {
  auto s = log_likelihoods(r);
  // A uniform prior cancels; skipping it keeps classify bit-identical to the
  // maximum-likelihood decision.
  if (!uniform_) {
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += log_prior_[k];
  }
  const bool any_finite = std::any_of(s.begin(), s.end(), [](double v) { return v != kNegInf; });
  require(any_finite, ErrorCode::kUndefinedPosterior,
          "every class assigns zero likelihood to read " + r.str());
  return s;
}

ClassIndex BayesClassifier::classify(const Sequence& r) const { return argmax_lowest(log_scores(r)); }

Posterior BayesClassifier::posterior(const Sequence& r) const {
  const auto s = log_scores(r);
  const double mx = *std::max_element(s.begin(), s.end());
  Posterior p;
  p.probs.resize(s.size());
  double z = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    p.probs[k] = std::exp(s[k] - mx);
    z += p.probs[k];
  }
  for (double& x : p.probs) x /= z;
  return p;
}

GroupedClassifier::GroupedClassifier(std::shared_ptr<const Classifier> base,
                                     std::vector<ClassIndex> group_of,
                                     std::vector<std::string> group_names)
    : base_(std::move(base)), group_of_(std::move(group_of)), names_(std::move(group_names)) {
  require(base_ != nullptr && base_->has_posterior(), ErrorCode::kInvalidArgument,
          "grouping needs a classifier with posterior probabilities");
  require(group_of_.size() == base_->num_classes(), ErrorCode::kInvalidArgument,
          "group map must cover every base class");
  require(names_.size() >= 2, ErrorCode::kInvalidArgument, "grouping needs at least 2 groups");
  std::vector<bool> used(names_.size(), false);
  for (ClassIndex g : group_of_) {
    require(g < names_.size(), ErrorCode::kInvalidArgument, "group index out of range");
    used[g] = true;
  }
  require(std::all_of(used.begin(), used.end(), [](bool u) { return u; }),
          ErrorCode::kInvalidArgument, "every group needs at least one class");
}

Posterior GroupedClassifier::posterior(const Sequence& r) const {
  const Posterior inner = base_->posterior(r);
  Posterior p;
  p.probs.assign(names_.size(), 0.0);
  for (std::size_t k = 0; k < inner.probs.size(); ++k) p.probs[group_of_[k]] += inner.probs[k];
  return p;
}

ClassIndex GroupedClassifier::classify(const Sequence& r) const {
  return argmax_lowest(posterior(r).probs);
}

FunctionClassifier::FunctionClassifier(std::vector<std::string> names, Fn fn)
    : names_(std::move(names)), fn_(std::move(fn)) {
  require(names_.size() >= 1, ErrorCode::kInvalidArgument, "classifier needs class names");
  require(static_cast<bool>(fn_), ErrorCode::kInvalidArgument, "classifier function is empty");
}

ClassIndex FunctionClassifier::classify(const Sequence& r) const {
  const ClassIndex c = fn_(r);
  require(c < names_.size(), ErrorCode::kDomain,
          "classifier returned out-of-range class " + std::to_string(c));
  return c;
}

}  // namespace nbb
