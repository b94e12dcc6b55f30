// Named replications of the reference tables and figures. Reference values
// are printed next to measured ones; nothing here asserts them.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>

#include "commands.hpp"
#include "pipeline.hpp"

namespace cli {

namespace {

struct RecipeOptions {
  std::string models;
  std::string genome_lengths;
  nbb_read_config cfg = nbb_read_config_default();
};

void add_read_options(CLI::App* cmd, RecipeOptions& o) {
  cmd->add_option("--models", o.models, "Comma-separated model files or bundled names");
  cmd->add_option("--genome-lengths", o.genome_lengths, "Synthetic genome lengths (default: bundled)");
  cmd->add_option("--coverage", o.cfg.coverage)->capture_default_str();
  cmd->add_option("--read-length", o.cfg.read_length)->capture_default_str();
  cmd->add_option("--sub-rate", o.cfg.sub_rate)->capture_default_str();
  cmd->add_option("--n-rate", o.cfg.n_rate)->capture_default_str();
}

Params read_params(const RecipeOptions& o) {
  return {{"coverage", fmt(o.cfg.coverage)},
          {"read_length", std::to_string(o.cfg.read_length)},
          {"sub_rate", fmt(o.cfg.sub_rate)},
          {"n_rate", fmt(o.cfg.n_rate)}};
}

// The default read set: one synthetic genome per model, reads at the
// configured coverage, all derived from the global seed.
struct ReadSet {
  std::vector<ModelPtr> models;
  ClassifierPtr classifier;
  RecordsPtr records;
  std::vector<const char*> reads;
  std::vector<std::string> names;
  std::vector<std::size_t> truth;
};

ReadSet build_read_set(const Globals& g, const RecipeOptions& o, std::uint64_t seed) {
  ReadSet rs;
  rs.models = load_models(o.models);
  rs.classifier = bayes_classifier(rs.models);
  nbb_read_config cfg = o.cfg;
  cfg.seed = seed;
  rs.records = synthetic_reads(rs.models, default_genome_lengths(rs.models.size(), o.genome_lengths), cfg, g.workers);
  rs.reads = sequence_pointers(rs.records.get());
  rs.names = class_names(rs.classifier.get());
  for (std::size_t i = 0; i < rs.reads.size(); ++i) rs.truth.push_back(nbb_records_source(rs.records.get(), i));
  return rs;
}

std::string pct(double num, double den) { return fmt(den > 0 ? 100.0 * num / den : std::nan("")); }

/* Reference values. */
const std::map<std::string, double> kPaperDistance = {
    {"Adeno/COVID", 0.234}, {"Adeno/SARS", 0.125}, {"COVID/SARS", 0.161}};
const std::map<std::string, double> kPaperNullQuantile = {
    {"Adeno", 0.01941755}, {"COVID", 0.02094808}, {"SARS", 0.02065539}};

void recipe_table4(const Globals& g, const RecipeOptions& o) {
  auto models = load_models(o.models);
  Sink sink(g, "table4.csv", {});
  write_row(sink.os(), {"model_a", "model_b", "hellinger", "reference"});
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      double h = 0.0;
      check(nbb_hellinger(models[i].get(), models[j].get(), &h));
      const std::string a = nbb_model_label(models[i].get()), b = nbb_model_label(models[j].get());
      const auto it = kPaperDistance.find(a + "/" + b);
      write_row(sink.os(), {a, b, fmt(h), it == kPaperDistance.end() ? "" : fmt(it->second)});
    }
  }
}

void recipe_nullq(const Globals& g, const RecipeOptions& o, std::size_t replicates, double q,
                  const std::string& sampling) {
  auto models = load_models(o.models);
  const auto lengths = default_genome_lengths(models.size(), o.genome_lengths);
  Sink sink(g, "nullq.csv", {{"replicates", std::to_string(replicates)}, {"q", fmt(q)}, {"sampling", sampling}});
  write_row(sink.os(), {"model", "length", "quantile", "reference"});
  for (std::size_t i = 0; i < models.size(); ++i) {
    double v = 0.0;
    check(nbb_null_quantile(models[i].get(), lengths[i], replicates, q, g.seed,
                            sampling == "markov" ? NBB_NULL_MARKOV_CHAIN : NBB_NULL_INDEPENDENT_WINDOWS, g.workers, &v));
    const std::string label = nbb_model_label(models[i].get());
    const auto it = kPaperNullQuantile.find(label);
    write_row(sink.os(), {label, std::to_string(lengths[i]), fmt(v), it == kPaperNullQuantile.end() ? "" : fmt(it->second)});
  }
}

void recipe_table1(const Globals& g, const RecipeOptions& o) {
  auto rs = build_read_set(g, o, g.seed);
  const auto cls = classify_all(rs.classifier.get(), rs.reads, g.workers);
  const std::size_t k = rs.names.size();
  std::vector<std::size_t> counts(k * k);
  double rate = 0.0;
  check(nbb_confusion_matrix(rs.truth.data(), cls.decisions.data(), rs.truth.size(), k, counts.data(), &rate));
  {
    Sink sink(g, "table1.csv", read_params(o));
    std::vector<std::string> header = {"source"};
    for (const auto& n : rs.names) header.push_back("decided_" + n);
    header.push_back("total");
    write_row(sink.os(), header);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::string> row = {rs.names[i]};
      std::size_t s = 0;
      for (std::size_t j = 0; j < k; ++j) {
        row.push_back(std::to_string(counts[i * k + j]));
        s += counts[i * k + j];
      }
      row.push_back(std::to_string(s));
      write_row(sink.os(), row);
    }
  }
  Sink sink(g, "table1_summary.csv", read_params(o));
  write_row(sink.os(), {"metric", "value", "reference"});
  write_row(sink.os(), {"reads", std::to_string(rs.reads.size()), "5869"});
  write_row(sink.os(), {"correct_rate", fmt(rate), "0.8155"});
}

void recipe_table2(const Globals& g, const RecipeOptions& o) {
  auto rs = build_read_set(g, o, g.seed);
  const auto cls = classify_all(rs.classifier.get(), rs.reads, g.workers);
  const auto prof = profile_all(rs.classifier.get(), rs.reads, g.include_n(), g.workers);
  const std::size_t k = rs.names.size();
  std::vector<std::size_t> by_source(k * k, 0), by_decision(k * k, 0), by_correct(2 * k, 0);
  std::size_t boundary = 0;
  for (std::size_t i = 0; i < rs.reads.size(); ++i) {
    const std::size_t s = prof.rows[i].boundary_status;
    ++by_source[rs.truth[i] * k + s];
    ++by_decision[cls.decisions[i] * k + s];
    ++by_correct[(rs.truth[i] == cls.decisions[i] ? 1 : 0) * k + s];
    if (s > 0) ++boundary;
  }
  auto emit = [&](const std::string& file, const std::string& label, const std::vector<std::size_t>& counts,
                  const std::vector<std::string>& rows) {
    Sink sink(g, file, read_params(o));
    std::vector<std::string> header = {label};
    for (std::size_t s = 0; s < k; ++s) header.push_back("status_" + std::to_string(s));
    header.push_back("total");
    write_row(sink.os(), header);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<std::string> row = {rows[r]};
      std::size_t sum = 0;
      for (std::size_t s = 0; s < k; ++s) {
        row.push_back(std::to_string(counts[r * k + s]));
        sum += counts[r * k + s];
      }
      row.push_back(std::to_string(sum));
      write_row(sink.os(), row);
    }
  };
  emit("table2_source.csv", "source", by_source, rs.names);
  emit("table2_decision.csv", "decision", by_decision, rs.names);
  emit("table2_correct.csv", "decision", by_correct, {"incorrect", "correct"});

  auto chi = [&](const std::vector<std::size_t>& counts, std::size_t rows) {
    double v = std::nan("");
    if (nbb_chi_square(counts.data(), rows, k, &v) != NBB_OK) v = std::nan("");
    return v;
  };
  Sink sink(g, "table2_summary.csv", read_params(o));
  write_row(sink.os(), {"metric", "value", "reference"});
  write_row(sink.os(), {"boundary_pct", pct(static_cast<double>(boundary), static_cast<double>(rs.reads.size())), "30.52"});
  write_row(sink.os(), {"chi_square_source", fmt(chi(by_source, k)), ""});
  write_row(sink.os(), {"chi_square_decision", fmt(chi(by_decision, k)), ""});
  write_row(sink.os(), {"chi_square_correct", fmt(chi(by_correct, 2)), "726.65"});
}

void recipe_table3(const Globals& g, const RecipeOptions& o) {
  auto rs = build_read_set(g, o, g.seed);
  const auto cls = classify_all(rs.classifier.get(), rs.reads, g.workers);
  const auto prof = profile_all(rs.classifier.get(), rs.reads, g.include_n(), g.workers);
  const std::size_t k = rs.names.size();
  std::vector<double> ns, mp;
  for (std::size_t i = 0; i < rs.reads.size(); ++i) {
    ns.push_back(prof.rows[i].ns);
    mp.push_back(cls.max_posterior(i));
  }
  std::vector<nbb_quadratic_coef> coefs(k);
  double r2 = 0, adj = 0, mse = 0, corr = 0;
  check(nbb_quadratic_fit(ns.data(), mp.data(), cls.decisions.data(), ns.size(), k, coefs.data(), &r2, &adj, &mse));
  check(nbb_pearson(mp.data(), ns.data(), mp.size(), &corr));
  const std::map<std::string, std::array<double, 3>> ref = {{"Adeno", {2.07873, -2.20866, 1.09297}},
                                                            {"COVID", {1.45459, -1.44745, 0.80804}},
                                                            {"SARS", {1.49852, -1.5496, 0.86606}}};
  {
    Sink sink(g, "table3.csv", read_params(o));
    write_row(sink.os(), {"class", "alpha", "beta", "gamma", "n", "ref_alpha", "ref_beta", "ref_gamma"});
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::string> row = {rs.names[i], fmt(coefs[i].alpha), fmt(coefs[i].beta), fmt(coefs[i].gamma),
                                      std::to_string(coefs[i].n)};
      const auto it = ref.find(rs.names[i]);
      for (int j = 0; j < 3; ++j) row.push_back(it == ref.end() ? "" : fmt(it->second[static_cast<std::size_t>(j)]));
      write_row(sink.os(), row);
    }
  }
  Sink sink(g, "table3_summary.csv", read_params(o));
  write_row(sink.os(), {"metric", "value", "reference"});
  write_row(sink.os(), {"adjusted_r_squared", fmt(adj), "0.8341"});
  write_row(sink.os(), {"r_squared", fmt(r2), ""});
  write_row(sink.os(), {"mse", fmt(mse), "0.003794415"});
  write_row(sink.os(), {"pearson_mp_ns", fmt(corr), "0.8488"});
}

void recipe_fig5(const Globals& g, const RecipeOptions& o, const std::string& ks_text) {
  auto rs = build_read_set(g, o, g.seed);
  const auto ks = parse_size_list(ks_text);
  std::vector<double> rr(ks.size());
  check(nbb_ns_sampling_rrmse(rs.classifier.get(), rs.reads.data(), rs.reads.size(), ks.data(), ks.size(), g.seed,
                              g.include_n(), g.workers, rr.data()));
  Params p = read_params(o);
  p.emplace_back("ks", ks_text);
  Sink sink(g, "fig5.csv", p);
  write_row(sink.os(), {"k", "rrmse", "reference"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    write_row(sink.os(), {std::to_string(ks[i]), fmt(rr[i]), ks[i] == 20 ? "0.05" : ""});
  }
}

void recipe_fig9(const Globals& g, const RecipeOptions& o) {
  auto rs = build_read_set(g, o, g.seed);
  const auto cls = classify_all(rs.classifier.get(), rs.reads, g.workers);
  const auto prof = profile_all(rs.classifier.get(), rs.reads, g.include_n(), g.workers);
  std::vector<double> mp, ns;
  std::vector<int> correct;
  for (std::size_t i = 0; i < rs.reads.size(); ++i) {
    mp.push_back(cls.max_posterior(i));
    ns.push_back(prof.rows[i].ns);
    correct.push_back(cls.decisions[i] == rs.truth[i] ? 1 : 0);
  }
  nbb_roc *a = nullptr, *b = nullptr;
  check(nbb_roc_curve(mp.data(), correct.data(), mp.size(), &a));
  RocPtr ra(a);
  check(nbb_roc_curve(ns.data(), correct.data(), ns.size(), &b));
  RocPtr rb(b);
  {
    Sink sink(g, "fig9.csv", read_params(o));
    write_row(sink.os(), {"index", "mp_threshold", "mp_fpr", "mp_tpr", "ns_threshold", "ns_fpr", "ns_tpr"});
    const std::size_t rows = std::max(nbb_roc_size(a), nbb_roc_size(b));
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::string> row = {std::to_string(i)};
      for (const nbb_roc* r : {static_cast<const nbb_roc*>(a), static_cast<const nbb_roc*>(b)}) {
        if (i < nbb_roc_size(r)) {
          double thr = 0, fpr = 0, tpr = 0;
          check(nbb_roc_point(r, i, &thr, &fpr, &tpr));
          row.insert(row.end(), {fmt(thr), fmt(fpr), fmt(tpr)});
        } else {
          row.insert(row.end(), {"", "", ""});
        }
      }
      write_row(sink.os(), row);
    }
  }
  double corr = 0.0;
  check(nbb_pearson(mp.data(), ns.data(), mp.size(), &corr));
  Sink sink(g, "fig9_summary.csv", read_params(o));
  write_row(sink.os(), {"metric", "value", "reference"});
  write_row(sink.os(), {"auc_mp", fmt(nbb_roc_auc(a)), ""});
  write_row(sink.os(), {"auc_ns", fmt(nbb_roc_auc(b)), ""});
  write_row(sink.os(), {"pearson_mp_ns", fmt(corr), "0.8488"});
}

struct Table7Options {
  std::size_t hamming_origins = 25;
  std::size_t walks = 300;
  std::size_t walk_steps = 2000;
  std::size_t crawls = 100;
  std::size_t crawl_steps = 250;
};

void recipe_table7(const Globals& g, const RecipeOptions& o, const Table7Options& t7) {
  auto rs = build_read_set(g, o, g.seed);
  const auto* c = rs.classifier.get();
  const std::size_t k = rs.names.size();
  const auto cls = classify_all(c, rs.reads, g.workers);
  const auto prof = profile_all(c, rs.reads, g.include_n(), g.workers);
  std::vector<std::size_t> boundary_reads;
  for (std::size_t i = 0; i < rs.reads.size(); ++i) {
    if (prof.rows[i].boundary_status > 0) boundary_reads.push_back(i);
  }
  // Origins are chosen by a seeded shuffle of read indices.
  auto pick = [&](std::vector<std::size_t> pool, std::size_t n, std::uint64_t stream) {
    std::uint64_t state = g.seed * 6364136223846793005ULL + stream;
    for (std::size_t i = pool.size(); i > 1; --i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      std::swap(pool[i - 1], pool[(state >> 33) % i]);
    }
    pool.resize(std::min(n, pool.size()));
    return pool;
  };
  std::vector<std::size_t> all(rs.reads.size());
  std::iota(all.begin(), all.end(), std::size_t{0});

  struct Row {
    std::string method;
    std::vector<TracePtr> traces;
  };
  std::vector<Row> rows;

  {
    Row r{"Hamming Paths", {}};
    for (std::size_t oi : pick(all, t7.hamming_origins, 1)) {
      std::vector<const char*> targets;
      for (std::size_t j = 0; j < rs.reads.size(); ++j) {
        if (cls.decisions[j] != cls.decisions[oi]) targets.push_back(rs.reads[j]);
      }
      if (targets.empty()) continue;
      nbb_trace* t = nullptr;
      check(nbb_hamming_search(c, rs.reads[oi], targets.data(), targets.size(), 0, &t));
      r.traces.emplace_back(t);
    }
    rows.push_back(std::move(r));
  }
  auto walks = [&](const std::string& name, const std::vector<std::size_t>& origins, std::uint64_t offset) {
    Row r{name, {}};
    for (std::size_t w = 0; w < origins.size(); ++w) {
      nbb_trace* t = nullptr;
      check(nbb_random_walk(c, rs.reads[origins[w]], t7.walk_steps, g.seed + offset + w, g.include_n(), 0, &t));
      r.traces.emplace_back(t);
    }
    rows.push_back(std::move(r));
  };
  walks("Random Walks, Random Origin", pick(all, t7.walks, 2), 1000000);
  walks("Random Walks, Boundary Origin", pick(boundary_reads, t7.walks, 3), 2000000);
  {
    Row r{"Crawling Boundary", {}};
    const auto starts = pick(boundary_reads, t7.crawls, 4);
    for (std::size_t w = 0; w < starts.size(); ++w) {
      nbb_trace* t = nullptr;
      check(nbb_boundary_crawl(c, rs.reads[starts[w]], t7.crawl_steps, g.seed + 3000000 + w, g.include_n(), &t));
      r.traces.emplace_back(t);
    }
    rows.push_back(std::move(r));
  }

  const std::map<std::string, std::array<std::string, 3>> ref = {
      {"Hamming Paths", {"7425274", "1242162", "16.73"}},
      {"Random Walks, Random Origin", {"600300", "34932", "5.82"}},
      {"Random Walks, Boundary Origin", {"600300", "25238", "5.87"}},
      {"Crawling Boundary", {"8146256", "20164", "0.25"}}};
  Params p = read_params(o);
  p.insert(p.end(), {{"hamming_origins", std::to_string(t7.hamming_origins)},
                     {"walks", std::to_string(t7.walks)},
                     {"walk_steps", std::to_string(t7.walk_steps)},
                     {"crawls", std::to_string(t7.crawls)},
                     {"crawl_steps", std::to_string(t7.crawl_steps)}});
  {
    Sink sink(g, "table7.csv", p);
    write_row(sink.os(), {"method", "traces", "evaluations", "boundary_points", "efficiency_pct", "ref_evaluations",
                          "ref_boundary_points", "ref_efficiency_pct"});
    for (const auto& r : rows) {
      if (r.traces.empty()) continue;
      std::vector<const nbb_trace*> raw;
      for (const auto& t : r.traces) raw.push_back(t.get());
      nbb_efficiency_row er[3];
      std::size_t n = 0;
      check(nbb_efficiency_report(raw.data(), raw.size(), er, &n));
      const auto& rf = ref.at(r.method);
      write_row(sink.os(), {r.method, std::to_string(er[0].traces), std::to_string(er[0].evaluations),
                            std::to_string(er[0].boundary_points), fmt(100.0 * er[0].efficiency), rf[0], rf[1], rf[2]});
    }
  }
  Sink sink(g, "table7_crawls.csv", p);
  write_row(sink.os(), {"crawl", "length", "evaluations", "n_decisions", "terminated_early", "seed"});
  const auto& crawls = rows.back().traces;
  for (std::size_t i = 0; i < crawls.size(); ++i) {
    const nbb_trace* t = crawls[i].get();
    write_row(sink.os(), {std::to_string(i + 1), std::to_string(nbb_trace_length(t)),
                          std::to_string(nbb_trace_evaluations(t)), std::to_string(nbb_trace_n_decisions(t, k)),
                          nbb_trace_terminated_early(t) ? "1" : "0", std::to_string(nbb_trace_seed(t))});
  }
}

struct DatasetRow {
  std::string name;
  std::size_t count = 0;
  std::vector<double> decision_pct;
  double boundary_no = 0.0;
  double boundary_yes = 0.0;
};

DatasetRow summarize(const std::string& name, const nbb_classifier* c, const std::vector<const char*>& reads,
                     const Globals& g) {
  const std::size_t k = nbb_classifier_num_classes(c);
  const auto prof = profile_all(c, reads, g.include_n(), g.workers);
  DatasetRow row{name, reads.size(), std::vector<double>(k, 0.0), 0.0, 0.0};
  std::size_t yes = 0;
  for (const auto& p : prof.rows) {
    row.decision_pct[p.decision] += 1.0;
    if (p.boundary_status > 0) ++yes;
  }
  const double n = static_cast<double>(reads.size());
  for (auto& v : row.decision_pct) v = 100.0 * v / n;
  row.boundary_yes = 100.0 * static_cast<double>(yes) / n;
  row.boundary_no = 100.0 - row.boundary_yes;
  return row;
}

void emit_datasets(const Globals& g, const std::string& file, const std::vector<std::string>& names,
                   const std::vector<DatasetRow>& rows, const Params& params) {
  const std::map<std::string, std::vector<double>> ref = {
      {"ReadsOriginal", {5869, 32.94, 34.09, 32.97, 69.48, 30.52}},
      {"ReadsNew", {6000, 32.43, 33.82, 33.75, 68.7, 31.3}},
      {"Random6K", {6000, 90.8333, 0.3833, 8.7833, 78.75, 21.25}}};
  Sink sink(g, file, params);
  std::vector<std::string> header = {"dataset", "kind", "count"};
  for (const auto& n : names) header.push_back("decision_" + n + "_pct");
  header.insert(header.end(), {"boundary_no_pct", "boundary_yes_pct"});
  write_row(sink.os(), header);
  for (const auto& r : rows) {
    std::vector<std::string> row = {r.name, "measured", std::to_string(r.count)};
    for (double v : r.decision_pct) row.push_back(fmt(v));
    row.insert(row.end(), {fmt(r.boundary_no), fmt(r.boundary_yes)});
    write_row(sink.os(), row);
    const auto it = ref.find(r.name);
    if (it != ref.end() && names.size() == 3) {
      std::vector<std::string> rr = {r.name, "reference"};
      for (double v : it->second) rr.push_back(fmt(v));
      write_row(sink.os(), rr);
    }
  }
}

void recipe_table8(const Globals& g, const RecipeOptions& o, std::size_t random_count, bool random_only) {
  auto models = load_models(o.models);
  auto c = bayes_classifier(models);
  const auto names = class_names(c.get());
  std::vector<DatasetRow> rows;
  if (!random_only) {
    const auto lengths = default_genome_lengths(models.size(), o.genome_lengths);
    nbb_read_config cfg = o.cfg;
    cfg.seed = g.seed;
    auto original = synthetic_reads(models, lengths, cfg, g.workers);
    rows.push_back(summarize("ReadsOriginal", c.get(), sequence_pointers(original.get()), g));
    // 2000 reads per source from independently simulated genomes.
    nbb_read_config cfg_new = o.cfg;
    cfg_new.seed = g.seed + 1;
    std::vector<const char*> new_reads;
    std::vector<RecordsPtr> keep;
    for (std::size_t i = 0; i < models.size(); ++i) {
      nbb_read_config per = cfg_new;
      per.coverage = 2000.0 * static_cast<double>(per.read_length) / static_cast<double>(lengths[i]);
      per.seed = cfg_new.seed + 7919 * i;
      keep.push_back(synthetic_reads(std::vector<const nbb_model*>{models[i].get()}, {lengths[i]}, per, g.workers));
      const auto p = sequence_pointers(keep.back().get());
      new_reads.insert(new_reads.end(), p.begin(), p.end());
    }
    rows.push_back(summarize("ReadsNew", c.get(), new_reads, g));
  }
  nbb_records* r = nullptr;
  check(nbb_random_sequences(random_count, o.cfg.read_length, 0, g.seed, &r));
  RecordsPtr random(r);
  rows.push_back(summarize(random_count == 6000 ? "Random6K" : "Random" + std::to_string(random_count), c.get(),
                           sequence_pointers(random.get()), g));
  Params p = read_params(o);
  p.emplace_back("random_count", std::to_string(random_count));
  emit_datasets(g, random_only ? "random6k.csv" : "table8.csv", names, rows, p);
}

void recipe_vote_split(const Globals& g, const RecipeOptions& o, std::size_t count, const std::string& group,
                       const std::string& group_names) {
  auto models = load_models(o.models);
  auto base = bayes_classifier(models);
  const auto group_of = parse_size_list(group);
  const auto gnames = split(group_names, ',');
  if (group_of.size() != models.size()) throw UsageError("--group needs one entry per model");
  std::vector<const char*> raw;
  for (const auto& n : gnames) raw.push_back(n.c_str());
  nbb_classifier* gc = nullptr;
  check(nbb_classifier_grouped(base.get(), group_of.data(), raw.data(), raw.size(), &gc));
  ClassifierPtr grouped(gc);

  nbb_records* r = nullptr;
  check(nbb_random_sequences(count, o.cfg.read_length, 0, g.seed, &r));
  RecordsPtr recs(r);
  const auto reads = sequence_pointers(recs.get());
  std::vector<std::size_t> full(reads.size()), merged(reads.size());
  check(nbb_classify_batch(base.get(), reads.data(), reads.size(), g.workers, full.data(), nullptr));
  check(nbb_classify_batch(grouped.get(), reads.data(), reads.size(), g.workers, merged.data(), nullptr));

  // Classes that form a group on their own keep their identity; count those
  // decisions that move to another group.
  Sink sink(g, "vote_split.csv", {{"count", std::to_string(count)}, {"group", group}, {"group_names", group_names}});
  write_row(sink.os(), {"class", "decided_full", "moved_after_grouping", "moved_fraction", "ref_decided",
                        "ref_moved"});
  const auto names = class_names(base.get());
  for (std::size_t cidx = 0; cidx < names.size(); ++cidx) {
    if (std::count(group_of.begin(), group_of.end(), group_of[cidx]) != 1) continue;
    std::size_t decided = 0, moved = 0;
    for (std::size_t i = 0; i < reads.size(); ++i) {
      if (full[i] != cidx) continue;
      ++decided;
      if (merged[i] != group_of[cidx]) ++moved;
    }
    const bool ref = names[cidx] == "Adeno" && count == 30000;
    write_row(sink.os(), {names[cidx], std::to_string(decided), std::to_string(moved),
                          fmt(decided ? static_cast<double>(moved) / static_cast<double>(decided) : 0.0),
                          ref ? "27492" : "", ref ? "77" : ""});
  }
}

}  // namespace

void register_replicate_commands(CLI::App& app, Globals& g) {
  auto* rep = app.add_subcommand("replicate", "Named replications of reference tables and figures");
  rep->require_subcommand(1);

  auto make = [&](const char* name, const char* help) {
    auto o = std::make_shared<RecipeOptions>();
    auto* cmd = rep->add_subcommand(name, help);
    add_read_options(cmd, *o);
    return std::make_pair(cmd, o);
  };

  {
    auto [cmd, o] = make("table4", "Hellinger distances between the models");
    cmd->callback([&g, o = o] {
      g.command = "replicate table4";
      recipe_table4(g, *o);
    });
  }
  {
    auto [cmd, o] = make("nullq", "Null quantiles of re-estimation distance at the genome lengths");
    auto extra = std::make_shared<std::tuple<std::size_t, double, std::string>>(1000, 0.999, "windows");
    cmd->add_option("--replicates", std::get<0>(*extra))->capture_default_str();
    cmd->add_option("--q", std::get<1>(*extra))->capture_default_str();
    cmd->add_option("--sampling", std::get<2>(*extra), "windows | markov")
        ->check(CLI::IsMember({"windows", "markov"}))
        ->capture_default_str();
    cmd->callback([&g, o = o, extra] {
      g.command = "replicate nullq";
      recipe_nullq(g, *o, std::get<0>(*extra), std::get<1>(*extra), std::get<2>(*extra));
    });
  }
  {
    auto [cmd, o] = make("table1", "Confusion matrix on synthetic reads");
    cmd->callback([&g, o = o] {
      g.command = "replicate table1";
      recipe_table1(g, *o);
    });
  }
  {
    auto [cmd, o] = make("table2", "Boundary-status cross-tabulations on synthetic reads");
    cmd->callback([&g, o = o] {
      g.command = "replicate table2";
      recipe_table2(g, *o);
    });
  }
  {
    auto [cmd, o] = make("table3", "Quadratic regression of MP on NS by decision");
    cmd->callback([&g, o = o] {
      g.command = "replicate table3";
      recipe_table3(g, *o);
    });
  }
  {
    auto [cmd, o] = make("fig5", "RRMSE of sampled NS against k");
    auto ks = std::make_shared<std::string>("1,2,3,5,10,20,30,40,60,80,100,150,200,300,404");
    cmd->add_option("--ks", *ks, "Ascending sample sizes")->capture_default_str();
    cmd->callback([&g, o = o, ks] {
      g.command = "replicate fig5";
      std::string list = *ks;
      if (g.no_n && list == "1,2,3,5,10,20,30,40,60,80,100,150,200,300,404") list = "1,2,3,5,10,20,30,40,60,80,100,150,200,303";
      recipe_fig5(g, *o, list);
    });
  }
  {
    auto [cmd, o] = make("fig9", "ROC curves of MP- and NS-thresholded acceptance");
    cmd->callback([&g, o = o] {
      g.command = "replicate fig9";
      recipe_fig9(g, *o);
    });
  }
  {
    auto [cmd, o] = make("table7", "Efficiency of Hamming paths, random walks and boundary crawls");
    auto t7 = std::make_shared<Table7Options>();
    cmd->add_option("--hamming-origins", t7->hamming_origins)->capture_default_str();
    cmd->add_option("--walks", t7->walks)->capture_default_str();
    cmd->add_option("--walk-steps", t7->walk_steps)->capture_default_str();
    cmd->add_option("--crawls", t7->crawls)->capture_default_str();
    cmd->add_option("--crawl-steps", t7->crawl_steps)->capture_default_str();
    cmd->callback([&g, o = o, t7] {
      g.command = "replicate table7";
      recipe_table7(g, *o, *t7);
    });
  }
  {
    auto [cmd, o] = make("table8", "Decision and boundary shares for alternative datasets");
    auto count = std::make_shared<std::size_t>(6000);
    cmd->add_option("--random-count", *count)->capture_default_str();
    cmd->callback([&g, o = o, count] {
      g.command = "replicate table8";
      recipe_table8(g, *o, *count, false);
    });
  }
  {
    auto [cmd, o] = make("random6k", "Decision and boundary shares for uniform random sequences");
    auto count = std::make_shared<std::size_t>(6000);
    cmd->add_option("--random-count", *count)->capture_default_str();
    cmd->callback([&g, o = o, count] {
      g.command = "replicate random6k";
      recipe_table8(g, *o, *count, true);
    });
  }
  {
    auto [cmd, o] = make("vote-split", "Decisions that move when classes are merged");
    auto extra = std::make_shared<std::tuple<std::size_t, std::string, std::string>>(30000, "0,1,1", "Adeno,Corona");
    cmd->add_option("--count", std::get<0>(*extra))->capture_default_str();
    cmd->add_option("--group", std::get<1>(*extra), "Group index per model")->capture_default_str();
    cmd->add_option("--group-names", std::get<2>(*extra))->capture_default_str();
    cmd->callback([&g, o = o, extra] {
      g.command = "replicate vote-split";
      recipe_vote_split(g, *o, std::get<0>(*extra), std::get<1>(*extra), std::get<2>(*extra));
    });
  }
}

}  // namespace cli
