#pragma once

// Naive Bayes classification of reads under triplet models, and the
// classifier abstraction the boundary tools operate on.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbb/seqspace.hpp"
#include "nbb/triplet_model.hpp"

namespace nbb {

using ClassIndex = std::size_t;

struct ClassLabel {
  ClassIndex index = 0;
  std::string name;
};

struct Posterior {
  std::vector<double> probs;
};

// A deterministic map from sequences to one of num_classes() labels.
// Implementations must be safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t num_classes() const = 0;
  virtual const std::string& class_name(ClassIndex index) const = 0;
  virtual ClassIndex classify(const Sequence& r) const = 0;

  virtual bool has_posterior() const { return false; }
  virtual Posterior posterior(const Sequence& r) const;

  ClassLabel label(ClassIndex index) const { return {index, class_name(index)}; }
};

// log L(r | model), summing over every completion of the Ns in r. Returns
// -infinity when every completion has probability zero.
double log_likelihood(const TripletModel& model, std::string_view r);
inline double log_likelihood(const TripletModel& model, const Sequence& r) {
  return log_likelihood(model, std::string_view(r.str()));
}

// Largest entry; ties go to the lowest index.
ClassIndex argmax_lowest(std::span<const double> values);

double max_posterior(const Posterior& p);
// Natural-log entropy with 0 log 0 = 0.
double posterior_entropy(const Posterior& p);

class BayesClassifier final : public Classifier {
 public:
  // An empty prior means uniform.
  explicit BayesClassifier(std::vector<TripletModel> models, std::vector<double> prior = {});

  std::size_t num_classes() const override { return models_.size(); }
  const std::string& class_name(ClassIndex index) const override;
  ClassIndex classify(const Sequence& r) const override;
  bool has_posterior() const override { return true; }
  Posterior posterior(const Sequence& r) const override;

  const std::vector<TripletModel>& models() const noexcept { return models_; }
  const std::vector<double>& prior() const noexcept { return prior_; }
  bool uniform_prior() const noexcept { return uniform_; }

  std::vector<double> log_likelihoods(const Sequence& r) const;

 private:
  std::vector<double> log_scores(const Sequence& r) const;

  std::vector<TripletModel> models_;
  std::vector<double> prior_;
  std::vector<double> log_prior_;
  bool uniform_ = true;
};

// Merges the classes of a posterior-capable classifier into groups by summing
// posterior mass, then decides by the grouped MAP.
class GroupedClassifier final : public Classifier {
 public:
  GroupedClassifier(std::shared_ptr<const Classifier> base, std::vector<ClassIndex> group_of,
                    std::vector<std::string> group_names);

  std::size_t num_classes() const override { return names_.size(); }
  const std::string& class_name(ClassIndex index) const override { return names_.at(index); }
  ClassIndex classify(const Sequence& r) const override;
  bool has_posterior() const override { return true; }
  Posterior posterior(const Sequence& r) const override;

 private:
  std::shared_ptr<const Classifier> base_;
  std::vector<ClassIndex> group_of_;
  std::vector<std::string> names_;
};

// Adapts an arbitrary decision function. The function must be deterministic
// and thread-safe.
class FunctionClassifier final : public Classifier {
 public:
  using Fn = std::function<ClassIndex(const Sequence&)>;
  FunctionClassifier(std::vector<std::string> names, Fn fn);

  std::size_t num_classes() const override { return names_.size(); }
  const std::string& class_name(ClassIndex index) const override { return names_.at(index); }
  ClassIndex classify(const Sequence& r) const override;

 private:
  std::vector<std::string> names_;
  Fn fn_;
};

}  // namespace nbb
