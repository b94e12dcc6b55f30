#include "nbb/nbb.h"

#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "nbb/analysis.hpp"
#include "nbb/bayes.hpp"
#include "nbb/boundary.hpp"
#include "nbb/explore.hpp"
#include "nbb/model_io.hpp"
#include "nbb/parallel.hpp"
#include "nbb/readsim.hpp"
#include "nbb/seqspace.hpp"
#include "nbb/triplet_model.hpp"

struct nbb_model {
  nbb::TripletModel model;
};

struct nbb_classifier {
  std::shared_ptr<const nbb::Classifier> impl;
};

struct nbb_records {
  std::vector<std::string> ids;
  std::vector<std::string> sequences;
  std::vector<std::size_t> sources;
  std::vector<const char*> pointers;

  void seal() {
    pointers.clear();
    for (const auto& s : sequences) pointers.push_back(s.c_str());
    if (sources.size() != sequences.size()) sources.assign(sequences.size(), SIZE_MAX);
  }
};

struct nbb_trace {
  nbb::ExplorationTrace trace;
  std::size_t boundary_point_count = 0;
};

struct nbb_roc {
  nbb::RocCurve curve;
};

namespace {

thread_local std::string g_last_error;

nbb_status record(nbb_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <class F>
nbb_status guard(F&& f) noexcept {
  try {
    f();
    return NBB_OK;
  } catch (const nbb::Error& e) {
    return record(static_cast<nbb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(NBB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(NBB_E_INTERNAL, e.what());
  } catch (...) {
    return record(NBB_E_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  nbb::require(p != nullptr, nbb::ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

nbb::Sequence seq(const char* s, const char* name = "sequence") {
  need(s, name);
  return nbb::Sequence(std::string_view(s));
}

std::vector<nbb::Sequence> seqs(const char* const* s, std::size_t n) {
  if (n > 0) need(s, "sequence array");
  std::vector<nbb::Sequence> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    need(s[i], "sequence");
    try {
      out.emplace_back(std::string_view(s[i]));
    } catch (const nbb::Error& e) {
      nbb::fail(e.code(), "sequence " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

nbb::BundledGenome genome_id(int genome) {
  nbb::require(genome >= NBB_GENOME_ADENO && genome <= NBB_GENOME_SARS, nbb::ErrorCode::kInvalidArgument,
               "unknown bundled genome " + std::to_string(genome));
  return static_cast<nbb::BundledGenome>(genome);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nbb::ReadSimConfig read_config(const nbb_read_config* cfg) {
  need(cfg, "read config");
  nbb::ReadSimConfig c;
  c.read_length = cfg->read_length;
  c.coverage = cfg->coverage;
  c.sub_rate = cfg->sub_rate;
  c.n_rate = cfg->n_rate;
  c.seed = cfg->seed;
  return c;
}

template <class T>
void give(T* value, T** out) {
  *out = value;
}

}  // namespace

extern "C" {

const char* nbb_version(void) { return NBB_VERSION_STRING; }

const char* nbb_last_error(void) { return g_last_error.c_str(); }

const char* nbb_status_name(nbb_status status) {
  switch (status) {
    case NBB_OK: return "ok";
    case NBB_E_INVALID_ARGUMENT: return "invalid argument";
    case NBB_E_IO: return "I/O error";
    case NBB_E_PARSE: return "parse error";
    case NBB_E_ILLEGAL_CHARACTER: return "illegal character";
    case NBB_E_LENGTH_MISMATCH: return "length mismatch";
    case NBB_E_DOMAIN: return "domain error";
    case NBB_E_UNDEFINED_POSTERIOR: return "undefined posterior";
    case NBB_E_NOT_ON_BOUNDARY: return "not on boundary";
    case NBB_E_DEGENERATE_MODEL: return "degenerate model";
    case NBB_E_RANK_DEFICIENT: return "rank deficient";
    case NBB_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void nbb_string_free(char* s) { std::free(s); }

/* ---- models ---- */

nbb_status nbb_model_load(const char* path, nbb_model** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    give(new nbb_model{nbb::load_model_file(path)}, out);
  });
}

nbb_status nbb_model_from_json(const char* json, nbb_model** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    give(new nbb_model{nbb::model_from_json(json)}, out);
  });
}

nbb_status nbb_model_from_probs(const char* label, const double* probs, nbb_model** out) {
  return guard([&] {
    need(label, "label");
    need(probs, "probs");
    need(out, "out");
    std::array<double, nbb::kNumTriplets> raw{};
    std::copy(probs, probs + nbb::kNumTriplets, raw.begin());
    give(new nbb_model{nbb::TripletModel(label, nbb::TripletDistribution::normalized(raw, 1e-4))}, out);
  });
}

nbb_status nbb_model_bundled(int genome, nbb_model** out) {
  return guard([&] {
    need(out, "out");
    give(new nbb_model{nbb::bundled_model(genome_id(genome))}, out);
  });
}

size_t nbb_bundled_genome_length(int genome) {
  if (genome < NBB_GENOME_ADENO || genome > NBB_GENOME_SARS) return 0;
  return nbb::bundled_genome_length(static_cast<nbb::BundledGenome>(genome));
}

nbb_status nbb_model_estimate(const char* label, const char* genome, double pseudocount, nbb_model** out) {
  return guard([&] {
    need(label, "label");
    need(out, "out");
    const auto p3 = nbb::estimate_triplet_distribution(seq(genome, "genome"), pseudocount);
    give(new nbb_model{nbb::TripletModel(label, p3)}, out);
  });
}

void nbb_model_free(nbb_model* model) { delete model; }

const char* nbb_model_label(const nbb_model* model) {
  return model == nullptr ? nullptr : model->model.label().c_str();
}

nbb_status nbb_model_triplets(const nbb_model* model, double* out64) {
  return guard([&] {
    need(model, "model");
    need(out64, "out");
    const auto& p = model->model.p3().probs();
    std::copy(p.begin(), p.end(), out64);
  });
}

nbb_status nbb_model_to_json(const nbb_model* model, char** out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = dup_string(nbb::model_to_json(model->model));
  });
}

nbb_status nbb_model_save(const nbb_model* model, const char* path) {
  return guard([&] {
    need(model, "model");
    need(path, "path");
    nbb::save_model_file(model->model, path);
  });
}

nbb_status nbb_hellinger(const nbb_model* a, const nbb_model* b, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = nbb::hellinger(a->model.p3(), b->model.p3());
  });
}

nbb_status nbb_hellinger_probs(const double* p, const double* q, size_t n, double* out) {
  return guard([&] {
    need(p, "p");
    need(q, "q");
    need(out, "out");
    *out = nbb::hellinger(std::span<const double>(p, n), std::span<const double>(q, n));
  });
}

nbb_status nbb_log_likelihood(const nbb_model* model, const char* read, double* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = nbb::log_likelihood(model->model, seq(read, "read"));
  });
}

nbb_status nbb_null_quantile(const nbb_model* model, size_t length, size_t replicates, double q, uint64_t seed,
                             int sampling, unsigned workers, double* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    nbb::require(sampling == NBB_NULL_INDEPENDENT_WINDOWS || sampling == NBB_NULL_MARKOV_CHAIN,
                 nbb::ErrorCode::kInvalidArgument, "unknown null sampling scheme");
    nbb::NullQuantileOptions opt;
    opt.replicates = replicates;
    opt.q = q;
    opt.seed = seed;
    opt.sampling = sampling == NBB_NULL_MARKOV_CHAIN ? nbb::NullSampling::kMarkovChain
                                                     : nbb::NullSampling::kIndependentWindows;
    opt.workers = workers;
    *out = nbb::null_quantile(model->model, length, opt);
  });
}

nbb_status nbb_simulate_genome(const nbb_model* model, size_t length, uint64_t seed, char** out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    nbb::Rng rng(seed);
    *out = dup_string(nbb::simulate_genome(model->model, length, rng).str());
  });
}

/* ---- records ---- */

nbb_status nbb_records_read_file(const char* path, nbb_records** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto r = std::make_unique<nbb_records>();
    for (auto& rec : nbb::read_sequences_file(path)) {
      r->ids.push_back(std::move(rec.id));
      r->sequences.push_back(rec.sequence.str());
    }
    r->seal();
    *out = r.release();
  });
}

nbb_status nbb_records_from_strings(const char* const* sequences, size_t n, nbb_records** out) {
  return guard([&] {
    need(out, "out");
    auto r = std::make_unique<nbb_records>();
    const auto parsed = seqs(sequences, n);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      r->ids.push_back(std::to_string(i));
      r->sequences.push_back(parsed[i].str());
    }
    r->seal();
    *out = r.release();
  });
}

nbb_status nbb_random_sequences(size_t count, size_t length, int include_n, uint64_t seed, nbb_records** out) {
  return guard([&] {
    need(out, "out");
    auto r = std::make_unique<nbb_records>();
    const auto s = nbb::random_sequences(count, length, nbb::Alphabet::dna(include_n != 0), seed);
    for (std::size_t i = 0; i < s.size(); ++i) {
      r->ids.push_back("rand" + std::to_string(i));
      r->sequences.push_back(s[i].str());
    }
    r->seal();
    *out = r.release();
  });
}

nbb_read_config nbb_read_config_default(void) {
  const nbb::ReadSimConfig d;
  return {d.read_length, d.coverage, d.sub_rate, d.n_rate, d.seed};
}

nbb_status nbb_simulate_reads(const char* genome, const char* source_id, const nbb_read_config* cfg,
                              unsigned workers, nbb_records** out) {
  return guard([&] {
    need(out, "out");
    auto r = std::make_unique<nbb_records>();
    const auto reads = nbb::simulate_reads(seq(genome, "genome"), read_config(cfg),
                                           source_id == nullptr ? "genome" : source_id, workers);
    for (const auto& rd : reads) {
      r->ids.push_back(rd.id);
      r->sequences.push_back(rd.sequence.str());
      r->sources.push_back(0);
    }
    r->seal();
    *out = r.release();
  });
}

nbb_status nbb_synthetic_reads(const nbb_model* const* models, const size_t* genome_lengths, size_t n_models,
                               const nbb_read_config* cfg, unsigned workers, nbb_records** out) {
  return guard([&] {
    need(models, "models");
    need(genome_lengths, "genome_lengths");
    need(out, "out");
    std::vector<nbb::SyntheticSource> sources;
    for (std::size_t i = 0; i < n_models; ++i) {
      need(models[i], "model");
      sources.push_back({models[i]->model, genome_lengths[i]});
    }
    auto r = std::make_unique<nbb_records>();
    for (const auto& lr : nbb::synthetic_read_set(sources, read_config(cfg), workers)) {
      r->ids.push_back(lr.read.id);
      r->sequences.push_back(lr.read.sequence.str());
      r->sources.push_back(lr.source);
    }
    r->seal();
    *out = r.release();
  });
}

void nbb_records_free(nbb_records* records) { delete records; }

size_t nbb_records_count(const nbb_records* records) {
  return records == nullptr ? 0 : records->sequences.size();
}

const char* nbb_records_id(const nbb_records* records, size_t i) {
  if (records == nullptr || i >= records->ids.size()) return nullptr;
  return records->ids[i].c_str();
}

const char* nbb_records_sequence(const nbb_records* records, size_t i) {
  if (records == nullptr || i >= records->sequences.size()) return nullptr;
  return records->sequences[i].c_str();
}

size_t nbb_records_source(const nbb_records* records, size_t i) {
  if (records == nullptr || i >= records->sources.size()) return SIZE_MAX;
  return records->sources[i];
}

const char* const* nbb_records_sequences(const nbb_records* records) {
  return records == nullptr ? nullptr : records->pointers.data();
}

/* ---- classifiers ---- */

nbb_status nbb_classifier_bayes(const nbb_model* const* models, size_t n, const double* prior,
                                nbb_classifier** out) {
  return guard([&] {
    need(models, "models");
    need(out, "out");
    std::vector<nbb::TripletModel> ms;
    for (std::size_t i = 0; i < n; ++i) {
      need(models[i], "model");
      ms.push_back(models[i]->model);
    }
    std::vector<double> pr;
    if (prior != nullptr) pr.assign(prior, prior + n);
    give(new nbb_classifier{std::make_shared<nbb::BayesClassifier>(std::move(ms), std::move(pr))}, out);
  });
}

nbb_status nbb_classifier_callback(const char* const* class_names, size_t n_classes, nbb_decide_fn fn,
                                   void* user, nbb_classifier** out) {
  return guard([&] {
    need(class_names, "class_names");
    need(reinterpret_cast<const void*>(fn), "fn");
    need(out, "out");
    nbb::require(n_classes >= 1, nbb::ErrorCode::kInvalidArgument, "need at least one class");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_classes; ++i) {
      need(class_names[i], "class name");
      names.emplace_back(class_names[i]);
    }
    auto impl = std::make_shared<nbb::FunctionClassifier>(
        std::move(names), [fn, user](const nbb::Sequence& s) -> nbb::ClassIndex {
          std::size_t c = 0;
          const int rc = fn(s.str().c_str(), s.size(), user, &c);
          nbb::require(rc == 0, nbb::ErrorCode::kInvalidArgument,
                       "decision callback failed with code " + std::to_string(rc));
          return c;
        });
    give(new nbb_classifier{std::move(impl)}, out);
  });
}

nbb_status nbb_classifier_grouped(const nbb_classifier* base, const size_t* group_of,
                                  const char* const* group_names, size_t n_groups, nbb_classifier** out) {
  return guard([&] {
    need(base, "base");
    need(group_of, "group_of");
    need(group_names, "group_names");
    need(out, "out");
    std::vector<nbb::ClassIndex> g(group_of, group_of + base->impl->num_classes());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_groups; ++i) {
      need(group_names[i], "group name");
      names.emplace_back(group_names[i]);
    }
    give(new nbb_classifier{std::make_shared<nbb::GroupedClassifier>(base->impl, std::move(g), std::move(names))},
         out);
  });
}

void nbb_classifier_free(nbb_classifier* classifier) { delete classifier; }

size_t nbb_classifier_num_classes(const nbb_classifier* classifier) {
  return classifier == nullptr ? 0 : classifier->impl->num_classes();
}

const char* nbb_classifier_class_name(const nbb_classifier* classifier, size_t index) {
  if (classifier == nullptr || index >= classifier->impl->num_classes()) return nullptr;
  return classifier->impl->class_name(index).c_str();
}

int nbb_classifier_has_posterior(const nbb_classifier* classifier) {
  return classifier != nullptr && classifier->impl->has_posterior() ? 1 : 0;
}

nbb_status nbb_classify(const nbb_classifier* classifier, const char* read, size_t* out_class) {
  return guard([&] {
    need(classifier, "classifier");
    need(out_class, "out_class");
    *out_class = classifier->impl->classify(seq(read, "read"));
  });
}

nbb_status nbb_posterior(const nbb_classifier* classifier, const char* read, double* out) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    const auto p = classifier->impl->posterior(seq(read, "read"));
    std::copy(p.probs.begin(), p.probs.end(), out);
  });
}

nbb_status nbb_classify_batch(const nbb_classifier* classifier, const char* const* reads, size_t n,
                              unsigned workers, size_t* decisions, double* posteriors) {
  return guard([&] {
    need(classifier, "classifier");
    need(decisions, "decisions");
    const auto rs = seqs(reads, n);
    const auto& c = *classifier->impl;
    const std::size_t k = c.num_classes();
    nbb::parallel_for(rs.size(), workers, [&](std::size_t i) {
      if (posteriors != nullptr) {
        const auto p = c.posterior(rs[i]);
        std::copy(p.probs.begin(), p.probs.end(), posteriors + i * k);
        decisions[i] = c.classify(rs[i]);
      } else {
        decisions[i] = c.classify(rs[i]);
      }
    });
  });
}

/* ---- boundary ---- */

nbb_status nbb_neighbor_profiles(const nbb_classifier* classifier, const char* const* reads, size_t n,
                                 int include_n, unsigned workers, nbb_profile* out, size_t* neighbor_counts) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    const auto rs = seqs(reads, n);
    nbb::ProfileOptions opt;
    opt.include_n = include_n != 0;
    opt.workers = workers;
    const auto profiles = nbb::neighbor_profiles(*classifier->impl, rs, opt);
    const std::size_t k = classifier->impl->num_classes();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto& p = profiles[i];
      out[i] = {p.decision, p.ns, p.boundary_status, p.evaluations};
      if (neighbor_counts != nullptr) std::copy(p.neighbor_counts.begin(), p.neighbor_counts.end(), neighbor_counts + i * k);
    }
  });
}

nbb_status nbb_sampled_ns(const nbb_classifier* classifier, const char* read, size_t k, uint64_t seed,
                          int include_n, double* ns, size_t* evaluations) {
  return guard([&] {
    need(classifier, "classifier");
    need(ns, "ns");
    nbb::Rng rng(seed);
    const auto s = nbb::sampled_ns(*classifier->impl, seq(read, "read"), k, rng, include_n != 0);
    *ns = s.ns_estimate;
    if (evaluations != nullptr) *evaluations = s.evaluations;
  });
}

nbb_status nbb_distance_bound(const nbb_classifier* classifier, const char* read, const char* const* witnesses,
                              const size_t* witness_decisions, size_t n_witnesses, size_t bfs_budget,
                              int include_n, nbb_db_bound* out) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    if (n_witnesses > 0) need(witness_decisions, "witness_decisions");
    const auto ws = seqs(witnesses, n_witnesses);
    std::vector<nbb::LabeledSequence> labeled;
    for (std::size_t i = 0; i < ws.size(); ++i) labeled.push_back({ws[i], witness_decisions[i]});
    const auto b = nbb::db_bound(*classifier->impl, seq(read, "read"), labeled, bfs_budget, include_n != 0);
    *out = {b.lower, b.upper.value_or(0), b.upper.has_value() ? 1 : 0, b.exhausted_radius, b.budget_used};
  });
}

nbb_status nbb_ns_sampling_rrmse(const nbb_classifier* classifier, const char* const* reads, size_t n,
                                 const size_t* ks, size_t n_ks, uint64_t seed, int include_n, unsigned workers,
                                 double* rrmse) {
  return guard([&] {
    need(classifier, "classifier");
    need(ks, "ks");
    need(rrmse, "rrmse");
    const auto rs = seqs(reads, n);
    nbb::ProfileOptions opt;
    opt.include_n = include_n != 0;
    opt.workers = workers;
    opt.keep_neighbor_decisions = true;
    const auto profiles = nbb::neighbor_profiles(*classifier->impl, rs, opt);
    const auto rows = nbb::ns_sampling_rrmse(profiles, std::span<const std::size_t>(ks, n_ks), seed);
    for (std::size_t i = 0; i < rows.size(); ++i) rrmse[i] = rows[i].rrmse;
  });
}

/* ---- exploration ---- */

namespace {

nbb_trace* wrap(nbb::ExplorationTrace t, std::uint64_t seed) {
  auto* out = new nbb_trace{std::move(t), 0};
  out->trace.seed = seed;
  out->boundary_point_count = out->trace.boundary_points().size();
  return out;
}

}  // namespace

nbb_status nbb_hamming_search(const nbb_classifier* classifier, const char* origin, const char* const* targets,
                              size_t n_targets, int record_paths, nbb_trace** out) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    const auto ts = seqs(targets, n_targets);
    nbb::HammingSearchOptions opt;
    opt.record_paths = record_paths != 0;
    *out = wrap(nbb::hamming_path_search(*classifier->impl, seq(origin, "origin"), ts, opt), 0);
  });
}

nbb_status nbb_random_walk(const nbb_classifier* classifier, const char* origin, size_t steps, uint64_t seed,
                           int include_n, int full_profile, nbb_trace** out) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    nbb::Rng rng(seed);
    nbb::WalkOptions opt;
    opt.include_n = include_n != 0;
    opt.full_profile = full_profile != 0;
    *out = wrap(nbb::random_walk(*classifier->impl, seq(origin, "origin"), steps, rng, opt), seed);
  });
}

nbb_status nbb_boundary_crawl(const nbb_classifier* classifier, const char* start, size_t max_steps,
                              uint64_t seed, int include_n, nbb_trace** out) {
  return guard([&] {
    need(classifier, "classifier");
    need(out, "out");
    nbb::Rng rng(seed);
    *out = wrap(nbb::boundary_crawl(*classifier->impl, seq(start, "start"), max_steps, rng, include_n != 0), seed);
  });
}

void nbb_trace_free(nbb_trace* trace) { delete trace; }

int nbb_trace_strategy(const nbb_trace* trace) {
  return trace == nullptr ? -1 : static_cast<int>(trace->trace.strategy);
}

uint64_t nbb_trace_seed(const nbb_trace* trace) { return trace == nullptr ? 0 : trace->trace.seed; }

size_t nbb_trace_length(const nbb_trace* trace) { return trace == nullptr ? 0 : trace->trace.visited.size(); }

size_t nbb_trace_evaluations(const nbb_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.classifier_evaluations;
}

int nbb_trace_terminated_early(const nbb_trace* trace) {
  return trace != nullptr && trace->trace.terminated_early ? 1 : 0;
}

size_t nbb_trace_boundary_point_count(const nbb_trace* trace) {
  return trace == nullptr ? 0 : trace->boundary_point_count;
}

size_t nbb_trace_n_decisions(const nbb_trace* trace, size_t num_classes) {
  if (trace == nullptr) return 0;
  try {
    return trace->trace.n_decisions(num_classes);
  } catch (const std::exception& e) {
    record(NBB_E_INVALID_ARGUMENT, e.what());
    return 0;
  }
}

nbb_status nbb_trace_visited(const nbb_trace* trace, size_t i, const char** sequence, size_t* decision) {
  return guard([&] {
    need(trace, "trace");
    nbb::require(i < trace->trace.visited.size(), nbb::ErrorCode::kInvalidArgument, "visited index out of range");
    const auto& v = trace->trace.visited[i];
    if (sequence != nullptr) *sequence = v.sequence.str().c_str();
    if (decision != nullptr) *decision = v.decision;
  });
}

size_t nbb_trace_pair_count(const nbb_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.boundary_pairs.size();
}

nbb_status nbb_trace_pair(const nbb_trace* trace, size_t i, const char** a, const char** b, size_t* decision_a,
                          size_t* decision_b) {
  return guard([&] {
    need(trace, "trace");
    nbb::require(i < trace->trace.boundary_pairs.size(), nbb::ErrorCode::kInvalidArgument,
                 "pair index out of range");
    const auto& p = trace->trace.boundary_pairs[i];
    if (a != nullptr) *a = p.a.str().c_str();
    if (b != nullptr) *b = p.b.str().c_str();
    if (decision_a != nullptr) *decision_a = p.decision_a;
    if (decision_b != nullptr) *decision_b = p.decision_b;
  });
}

nbb_status nbb_efficiency_report(const nbb_trace* const* traces, size_t n, nbb_efficiency_row* out,
                                 size_t* n_rows) {
  return guard([&] {
    need(traces, "traces");
    need(out, "out");
    need(n_rows, "n_rows");
    std::vector<nbb::ExplorationTrace> ts;
    for (std::size_t i = 0; i < n; ++i) {
      need(traces[i], "trace");
      ts.push_back(traces[i]->trace);
    }
    const auto rows = nbb::efficiency_report(ts);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[i] = {static_cast<int>(rows[i].strategy), rows[i].traces, rows[i].evaluations, rows[i].boundary_points,
                rows[i].efficiency};
    }
    *n_rows = rows.size();
  });
}

/* ---- analysis ---- */

nbb_status nbb_confusion_matrix(const size_t* truths, const size_t* decisions, size_t n, size_t num_classes,
                                size_t* counts, double* correct_rate) {
  return guard([&] {
    need(truths, "truths");
    need(decisions, "decisions");
    const auto m = nbb::confusion_matrix(std::span<const std::size_t>(truths, n),
                                         std::span<const std::size_t>(decisions, n), num_classes);
    if (counts != nullptr) {
      for (std::size_t i = 0; i < num_classes; ++i) {
        std::copy(m.table.counts[i].begin(), m.table.counts[i].end(), counts + i * num_classes);
      }
    }
    if (correct_rate != nullptr) *correct_rate = m.correct_rate;
  });
}

nbb_status nbb_chi_square(const size_t* counts, size_t rows, size_t cols, double* out) {
  return guard([&] {
    need(counts, "counts");
    need(out, "out");
    nbb::CountTable t(rows);
    for (std::size_t i = 0; i < rows; ++i) t[i].assign(counts + i * cols, counts + (i + 1) * cols);
    *out = nbb::chi_square_statistic(nbb::make_table(std::move(t)));
  });
}

nbb_status nbb_ks_statistic(const double* a, size_t na, const double* b, size_t nb, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = nbb::ks_statistic(std::span<const double>(a, na), std::span<const double>(b, nb));
  });
}

nbb_status nbb_pearson(const double* a, const double* b, size_t n, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = nbb::pearson_correlation(std::span<const double>(a, n), std::span<const double>(b, n));
  });
}

nbb_status nbb_roc_curve(const double* scores, const int* correct, size_t n, nbb_roc** out) {
  return guard([&] {
    need(scores, "scores");
    need(correct, "correct");
    need(out, "out");
    std::vector<bool> c(correct, correct + n);
    *out = new nbb_roc{nbb::roc_curve(std::span<const double>(scores, n), c)};
  });
}

void nbb_roc_free(nbb_roc* roc) { delete roc; }

size_t nbb_roc_size(const nbb_roc* roc) { return roc == nullptr ? 0 : roc->curve.points.size(); }

double nbb_roc_auc(const nbb_roc* roc) {
  return roc == nullptr ? std::numeric_limits<double>::quiet_NaN() : roc->curve.auc;
}

nbb_status nbb_roc_point(const nbb_roc* roc, size_t i, double* threshold, double* fpr, double* tpr) {
  return guard([&] {
    need(roc, "roc");
    nbb::require(i < roc->curve.points.size(), nbb::ErrorCode::kInvalidArgument, "ROC index out of range");
    const auto& p = roc->curve.points[i];
    if (threshold != nullptr) *threshold = p.threshold;
    if (fpr != nullptr) *fpr = p.fpr;
    if (tpr != nullptr) *tpr = p.tpr;
  });
}

nbb_status nbb_quadratic_fit(const double* ns, const double* mp, const size_t* classes, size_t n,
                             size_t num_classes, nbb_quadratic_coef* coefs, double* r_squared,
                             double* adjusted_r_squared, double* mse) {
  return guard([&] {
    need(ns, "ns");
    need(mp, "mp");
    need(classes, "classes");
    const auto fit = nbb::quadratic_fit(std::span<const double>(ns, n), std::span<const double>(mp, n),
                                        std::span<const std::size_t>(classes, n), num_classes);
    if (coefs != nullptr) {
      for (std::size_t i = 0; i < num_classes; ++i) {
        const auto& c = fit.per_class[i];
        coefs[i] = {c.alpha, c.beta, c.gamma, c.n};
      }
    }
    if (r_squared != nullptr) *r_squared = fit.r_squared;
    if (adjusted_r_squared != nullptr) *adjusted_r_squared = fit.adjusted_r_squared;
    if (mse != nullptr) *mse = fit.mse;
  });
}

nbb_status nbb_barycentric(const double* p3, double* x, double* y) {
  return guard([&] {
    need(p3, "p");
    need(x, "x");
    need(y, "y");
    const auto xy = nbb::barycentric_coords(std::span<const double>(p3, 3));
    *x = xy.first;
    *y = xy.second;
  });
}

}  // extern "C"
