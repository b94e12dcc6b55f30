#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>

#include "pipeline.hpp"

namespace cli {

namespace {

void write_fasta(std::ostream& os, const std::string& header, const std::string& seq) {
  os << '>' << header << '\n';
  for (std::size_t i = 0; i < seq.size(); i += 80) os << seq.substr(i, 80) << '\n';
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

// Name-to-index map from classify output columns p_<name>.
std::vector<std::string> names_from_classified(const CsvTable& t) {
  std::vector<std::string> names;
  for (const auto& c : t.columns) {
    if (c.rfind("p_", 0) == 0) names.push_back(c.substr(2));
  }
  if (names.empty()) throw InputError("classification table has no p_<class> columns");
  return names;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("unknown class '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<std::size_t> decisions_from(const CsvTable& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  const std::size_t c = t.col("decision");
  for (const auto& row : t.rows) out.push_back(index_of(names, row[c]));
  return out;
}

std::vector<std::size_t> truths_from(const CsvTable& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  const std::size_t c = t.col("read_id");
  for (const auto& row : t.rows) {
    const std::string label = source_label(row[c]);
    if (label.empty()) throw InputError("read '" + row[c] + "' carries no src=<label>");
    out.push_back(index_of(names, label));
  }
  return out;
}

void require_same_reads(const CsvTable& a, const CsvTable& b) {
  const std::size_t ca = a.col("read_id"), cb = b.col("read_id");
  if (a.rows.size() != b.rows.size()) throw InputError("classification and NS tables differ in row count");
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i][ca] != b.rows[i][cb]) throw InputError("row " + std::to_string(i) + ": read ids differ");
  }
}

}  // namespace

/* ---- model ---- */

void register_model_commands(CLI::App& app, Globals& g) {
  auto* model = app.add_subcommand("model", "Triplet model utilities");
  model->require_subcommand(1);

  {
    auto names = std::make_shared<std::vector<std::string>>();
    auto* cmd = model->add_subcommand("distance", "Pairwise Hellinger distances between models");
    cmd->add_option("models", *names, "Model files or bundled names (adeno, covid, sars)")->required()->expected(2, -1);
    cmd->callback([&g, names] {
      g.command = "model distance";
      std::vector<ModelPtr> models;
      for (const auto& n : *names) models.push_back(load_model(n));
      Sink sink(g, "distance.csv", {});
      write_row(sink.os(), {"model_a", "model_b", "hellinger"});
      for (std::size_t i = 0; i < models.size(); ++i) {
        for (std::size_t j = i + 1; j < models.size(); ++j) {
          double h = 0.0;
          check(nbb_hellinger(models[i].get(), models[j].get(), &h));
          write_row(sink.os(), {nbb_model_label(models[i].get()), nbb_model_label(models[j].get()), fmt(h)});
        }
      }
    });
  }
  {
    struct Opts {
      std::string genome, label;
      double pseudocount = 0.0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = model->add_subcommand("estimate", "Estimate a triplet model from a genome FASTA (JSON output)");
    cmd->add_option("--genome", o->genome, "Genome FASTA (first record is used)")->required();
    cmd->add_option("--label", o->label, "Model label (default: FASTA id)");
    cmd->add_option("--pseudocount", o->pseudocount, "Added to every triplet count")->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "model estimate";
      auto recs = read_records(o->genome);
      if (nbb_records_count(recs.get()) == 0) throw InputError(o->genome + ": no sequences");
      const std::string label = o->label.empty() ? split(nbb_records_id(recs.get(), 0), ' ').at(0) : o->label;
      nbb_model* m = nullptr;
      check(nbb_model_estimate(label.c_str(), nbb_records_sequence(recs.get(), 0), o->pseudocount, &m));
      ModelPtr model_ptr(m);
      OwnedString json;
      check(nbb_model_to_json(m, &json.p));
      if (g.out_dir.empty()) {
        std::cout << json.str() << '\n';
      } else {
        std::filesystem::create_directories(g.out_dir);
        check(nbb_model_save(m, (std::filesystem::path(g.out_dir) / (label + ".json")).string().c_str()));
      }
    });
  }
  {
    auto name = std::make_shared<std::string>();
    auto* cmd = model->add_subcommand("show", "Print a model (file or bundled name) as JSON");
    cmd->add_option("model", *name)->required();
    cmd->callback([&g, name] {
      g.command = "model show";
      auto m = load_model(*name);
      OwnedString json;
      check(nbb_model_to_json(m.get(), &json.p));
      std::cout << json.str() << '\n';
    });
  }
  {
    struct Opts {
      std::vector<std::string> models;
      std::size_t length = 0;
      std::size_t replicates = 1000;
      double q = 0.999;
      std::string sampling = "windows";
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = model->add_subcommand("null-quantile", "Empirical null quantile of the re-estimation distance");
    cmd->add_option("models", o->models)->required()->expected(1, -1);
    cmd->add_option("--length", o->length, "Genome length (default: bundled reference length)");
    cmd->add_option("--replicates", o->replicates)->capture_default_str();
    cmd->add_option("--q", o->q)->capture_default_str();
    cmd->add_option("--sampling", o->sampling, "windows | markov")
        ->check(CLI::IsMember({"windows", "markov"}))
        ->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "model null-quantile";
      Sink sink(g, "null_quantile.csv",
                {{"replicates", std::to_string(o->replicates)}, {"q", fmt(o->q)}, {"sampling", o->sampling}});
      write_row(sink.os(), {"model", "length", "quantile"});
      for (const auto& n : o->models) {
        auto m = load_model(n);
        std::size_t len = o->length;
        if (len == 0) {
          const std::vector<std::string> bundled = {"adeno", "covid", "sars"};
          const auto it = std::find(bundled.begin(), bundled.end(), n);
          if (it == bundled.end()) throw UsageError("--length is required for model " + n);
          len = nbb_bundled_genome_length(static_cast<int>(it - bundled.begin()));
        }
        double v = 0.0;
        check(nbb_null_quantile(m.get(), len, o->replicates, o->q, g.seed,
                                o->sampling == "markov" ? NBB_NULL_MARKOV_CHAIN : NBB_NULL_INDEPENDENT_WINDOWS,
                                g.workers, &v));
        write_row(sink.os(), {nbb_model_label(m.get()), std::to_string(len), fmt(v)});
      }
    });
  }
}

/* ---- classify / ns ---- */

void register_classify_commands(CLI::App& app, Globals& g) {
  {
    struct Opts {
      std::string models, reads, group, group_names;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("classify", "Classify reads (CSV: decision, posteriors, MP, entropy)");
    cmd->add_option("--models", o->models, "Comma-separated model files or bundled names");
    cmd->add_option("--reads", o->reads, "FASTA, FASTQ or one read per line")->required();
    cmd->add_option("--group", o->group, "Merge classes: group index per model, e.g. 0,1,1");
    cmd->add_option("--group-names", o->group_names, "Names of the merged groups, e.g. Adeno,Corona");
    cmd->callback([&g, o] {
      g.command = "classify";
      auto models = load_models(o->models);
      auto base = bayes_classifier(models);
      ClassifierPtr grouped;
      const nbb_classifier* c = base.get();
      if (!o->group.empty()) {
        const auto group_of = parse_size_list(o->group);
        const auto names = split(o->group_names, ',');
        if (group_of.size() != models.size()) throw UsageError("--group needs one entry per model");
        std::vector<const char*> raw;
        for (const auto& n : names) raw.push_back(n.c_str());
        nbb_classifier* gc = nullptr;
        check(nbb_classifier_grouped(base.get(), group_of.data(), raw.data(), raw.size(), &gc));
        grouped.reset(gc);
        c = gc;
      }
      auto recs = read_records(o->reads);
      const auto res = classify_all(c, sequence_pointers(recs.get()), g.workers);
      Sink sink(g, "classify.csv", {{"models", join(class_names(base.get()), ',')}, {"reads", o->reads}});
      std::vector<std::string> header = {"read_id", "decision"};
      for (const auto& n : res.names) header.push_back("p_" + n);
      header.insert(header.end(), {"max_posterior", "entropy"});
      write_row(sink.os(), header);
      for (std::size_t i = 0; i < res.decisions.size(); ++i) {
        std::vector<std::string> row = {nbb_records_id(recs.get(), i), res.names[res.decisions[i]]};
        for (std::size_t j = 0; j < res.k(); ++j) row.push_back(fmt(res.posteriors[i * res.k() + j]));
        row.push_back(fmt(res.max_posterior(i)));
        row.push_back(fmt(res.entropy(i)));
        write_row(sink.os(), row);
      }
    });
  }
  {
    struct Opts {
      std::string models, reads;
      std::size_t sample = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("ns", "Neighbor Similarity and boundary status per read");
    cmd->add_option("--models", o->models, "Comma-separated model files or bundled names");
    cmd->add_option("--reads", o->reads)->required();
    cmd->add_option("--sample", o->sample, "Estimate NS from k random neighbors (read i uses seed + i)");
    cmd->callback([&g, o] {
      g.command = "ns";
      auto models = load_models(o->models);
      auto c = bayes_classifier(models);
      auto recs = read_records(o->reads);
      const auto reads = sequence_pointers(recs.get());
      const auto names = class_names(c.get());
      if (o->sample > 0) {
        Sink sink(g, "ns_sampled.csv", {{"reads", o->reads}, {"k", std::to_string(o->sample)}});
        write_row(sink.os(), {"read_id", "decision", "k", "ns_estimate", "evaluations"});
        for (std::size_t i = 0; i < reads.size(); ++i) {
          std::size_t d = 0, evals = 0;
          double ns = 0.0;
          check(nbb_classify(c.get(), reads[i], &d));
          check(nbb_sampled_ns(c.get(), reads[i], o->sample, g.seed + i, g.include_n(), &ns, &evals));
          write_row(sink.os(), {nbb_records_id(recs.get(), i), names[d], std::to_string(o->sample), fmt(ns),
                                std::to_string(evals)});
        }
        return;
      }
      const auto prof = profile_all(c.get(), reads, g.include_n(), g.workers);
      Sink sink(g, "ns.csv", {{"reads", o->reads}});
      std::vector<std::string> header = {"read_id", "decision"};
      for (const auto& n : names) header.push_back("n_" + n);
      header.insert(header.end(), {"ns", "boundary_status", "evaluations"});
      write_row(sink.os(), header);
      for (std::size_t i = 0; i < reads.size(); ++i) {
        const auto& p = prof.rows[i];
        std::vector<std::string> row = {nbb_records_id(recs.get(), i), names[p.decision]};
        for (std::size_t j = 0; j < names.size(); ++j) row.push_back(std::to_string(prof.counts[i * names.size() + j]));
        row.insert(row.end(), {fmt(p.ns), std::to_string(p.boundary_status), std::to_string(p.evaluations)});
        write_row(sink.os(), row);
      }
    });
  }
}

/* ---- explore ---- */

void register_explore_commands(CLI::App& app, Globals& g) {
  auto* explore = app.add_subcommand("explore", "Boundary exploration (per-trace CSV)");
  explore->require_subcommand(1);

  struct Opts {
    std::string models, origins, targets;
    std::size_t max_targets = 0;
    std::size_t steps = 2000;
    std::size_t max_steps = 250;
    bool full_profile = false;
    bool pairs = false;
  };

  auto run = [&g](const Opts& o, int strategy) {
    auto models = load_models(o.models);
    auto c = bayes_classifier(models);
    const std::size_t k = nbb_classifier_num_classes(c.get());
    auto origins = read_records(o.origins);
    const auto origin_seqs = sequence_pointers(origins.get());

    RecordsPtr targets;
    std::vector<std::size_t> target_decisions;
    std::vector<std::size_t> origin_decisions(origin_seqs.size());
    if (strategy == NBB_STRATEGY_HAMMING) {
      targets = o.targets.empty() ? read_records(o.origins) : read_records(o.targets);
      const auto ts = sequence_pointers(targets.get());
      target_decisions.resize(ts.size());
      check(nbb_classify_batch(c.get(), ts.data(), ts.size(), g.workers, target_decisions.data(), nullptr));
      check(nbb_classify_batch(c.get(), origin_seqs.data(), origin_seqs.size(), g.workers, origin_decisions.data(),
                               nullptr));
    }

    std::vector<TracePtr> traces;
    std::vector<std::string> trace_ids;
    for (std::size_t i = 0; i < origin_seqs.size(); ++i) {
      nbb_trace* t = nullptr;
      nbb_status st = NBB_OK;
      if (strategy == NBB_STRATEGY_HAMMING) {
        std::vector<const char*> chosen;
        for (std::size_t j = 0; j < target_decisions.size(); ++j) {
          if (target_decisions[j] == origin_decisions[i]) continue;
          chosen.push_back(nbb_records_sequence(targets.get(), j));
          if (o.max_targets > 0 && chosen.size() >= o.max_targets) break;
        }
        if (chosen.empty()) {
          std::cerr << "warning: origin " << nbb_records_id(origins.get(), i)
                    << " has no differently classified target; skipped\n";
          continue;
        }
        st = nbb_hamming_search(c.get(), origin_seqs[i], chosen.data(), chosen.size(), 1, &t);
      } else if (strategy == NBB_STRATEGY_WALK) {
        st = nbb_random_walk(c.get(), origin_seqs[i], o.steps, g.seed + i, g.include_n(), o.full_profile ? 1 : 0, &t);
      } else {
        st = nbb_boundary_crawl(c.get(), origin_seqs[i], o.max_steps, g.seed + i, g.include_n(), &t);
        if (st == NBB_E_NOT_ON_BOUNDARY) {
          std::cerr << "warning: origin " << nbb_records_id(origins.get(), i) << " is not a boundary point; skipped\n";
          continue;
        }
      }
      check(st);
      traces.emplace_back(t);
      trace_ids.emplace_back(nbb_records_id(origins.get(), i));
    }

    const std::string strategy_name = strategy == NBB_STRATEGY_HAMMING ? "hamming"
                                      : strategy == NBB_STRATEGY_WALK  ? "walk"
                                                                       : "crawl";
    Params params = {{"strategy", strategy_name}, {"origins", o.origins}};
    if (strategy == NBB_STRATEGY_WALK) params.emplace_back("steps", std::to_string(o.steps));
    if (strategy == NBB_STRATEGY_CRAWL) params.emplace_back("max_steps", std::to_string(o.max_steps));
    {
      Sink sink(g, "traces.csv", params);
      write_row(sink.os(), {"origin_id", "strategy", "length", "evaluations", "boundary_points", "n_decisions",
                            "terminated_early", "seed"});
      for (std::size_t i = 0; i < traces.size(); ++i) {
        const nbb_trace* t = traces[i].get();
        write_row(sink.os(), {trace_ids[i], strategy_name, std::to_string(nbb_trace_length(t)),
                              std::to_string(nbb_trace_evaluations(t)),
                              std::to_string(nbb_trace_boundary_point_count(t)),
                              std::to_string(nbb_trace_n_decisions(t, k)),
                              nbb_trace_terminated_early(t) ? "1" : "0", std::to_string(nbb_trace_seed(t))});
      }
    }
    if (traces.empty()) return;
    {
      std::vector<const nbb_trace*> raw;
      for (const auto& t : traces) raw.push_back(t.get());
      nbb_efficiency_row rows[3];
      std::size_t n_rows = 0;
      check(nbb_efficiency_report(raw.data(), raw.size(), rows, &n_rows));
      Sink sink(g, "efficiency.csv", params);
      write_row(sink.os(), {"strategy", "traces", "evaluations", "boundary_points", "efficiency"});
      for (std::size_t r = 0; r < n_rows; ++r) {
        write_row(sink.os(), {strategy_name, std::to_string(rows[r].traces), std::to_string(rows[r].evaluations),
                              std::to_string(rows[r].boundary_points), fmt(rows[r].efficiency)});
      }
    }
    if (o.pairs) {
      const auto names = class_names(c.get());
      Sink sink(g, "pairs.csv", params);
      write_row(sink.os(), {"origin_id", "a", "b", "decision_a", "decision_b"});
      for (std::size_t i = 0; i < traces.size(); ++i) {
        for (std::size_t p = 0; p < nbb_trace_pair_count(traces[i].get()); ++p) {
          const char *a = nullptr, *b = nullptr;
          std::size_t da = 0, db = 0;
          check(nbb_trace_pair(traces[i].get(), p, &a, &b, &da, &db));
          write_row(sink.os(), {trace_ids[i], a, b, names[da], names[db]});
        }
      }
    }
  };

  auto add = [&](const char* name, const char* help, int strategy) {
    auto o = std::make_shared<Opts>();
    auto* cmd = explore->add_subcommand(name, help);
    cmd->add_option("--models", o->models, "Comma-separated model files or bundled names");
    cmd->add_option("--origins", o->origins, "Origin sequences (trace i uses seed + i)")->required();
    cmd->add_flag("--pairs", o->pairs, "Also emit every boundary pair");
    if (strategy == NBB_STRATEGY_HAMMING) {
      cmd->add_option("--targets", o->targets, "Target sequences (default: the origins)");
      cmd->add_option("--max-targets", o->max_targets, "Cap on targets per origin (0 = all)");
    } else if (strategy == NBB_STRATEGY_WALK) {
      cmd->add_option("--steps", o->steps)->capture_default_str();
      cmd->add_flag("--full-profile", o->full_profile, "Profile every visited point");
    } else {
      cmd->add_option("--max-steps", o->max_steps)->capture_default_str();
    }
    cmd->callback([&g, o, run, name, strategy] {
      g.command = std::string("explore ") + name;
      run(*o, strategy);
    });
  };
  add("hamming", "Left-to-right Hamming paths to differently classified targets", NBB_STRATEGY_HAMMING);
  add("walk", "Random walks with predecessor comparison", NBB_STRATEGY_WALK);
  add("crawl", "Boundary crawls from boundary points", NBB_STRATEGY_CRAWL);
}

/* ---- simulate ---- */

void register_simulate_commands(CLI::App& app, Globals& g) {
  auto* sim = app.add_subcommand("simulate", "Synthetic genomes, reads and random sequences (FASTA)");
  sim->require_subcommand(1);

  {
    struct Opts {
      std::string model;
      std::size_t length = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = sim->add_subcommand("genome", "Simulate a genome from a triplet model");
    cmd->add_option("--model", o->model, "Model file or bundled name")->required();
    cmd->add_option("--length", o->length, "Genome length (default: bundled reference length)");
    cmd->callback([&g, o] {
      g.command = "simulate genome";
      auto m = load_model(o->model);
      std::size_t len = o->length;
      if (len == 0) {
        const std::vector<std::string> bundled = {"adeno", "covid", "sars"};
        const auto it = std::find(bundled.begin(), bundled.end(), o->model);
        if (it == bundled.end()) throw UsageError("--length is required for a model file");
        len = nbb_bundled_genome_length(static_cast<int>(it - bundled.begin()));
      }
      OwnedString genome;
      check(nbb_simulate_genome(m.get(), len, g.seed, &genome.p));
      Sink sink(g, "genome.fa", {{"model", o->model}, {"length", std::to_string(len)}});
      write_fasta(sink.os(), std::string(nbb_model_label(m.get())) + " seed=" + std::to_string(g.seed) +
                                 " length=" + std::to_string(len),
                  genome.str());
    });
  }
  {
    struct Opts {
      std::string genome, source_id;
      nbb_read_config cfg = nbb_read_config_default();
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = sim->add_subcommand("reads", "Simulate reads from a genome FASTA");
    cmd->add_option("--genome", o->genome)->required();
    cmd->add_option("--source-id", o->source_id, "Label for read ids (default: first word of the FASTA id)");
    cmd->add_option("--coverage", o->cfg.coverage)->capture_default_str();
    cmd->add_option("--length", o->cfg.read_length, "Read length")->capture_default_str();
    cmd->add_option("--sub-rate", o->cfg.sub_rate)->capture_default_str();
    cmd->add_option("--n-rate", o->cfg.n_rate)->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "simulate reads";
      auto genome = read_records(o->genome);
      if (nbb_records_count(genome.get()) == 0) throw InputError(o->genome + ": no sequences");
      const std::string id =
          o->source_id.empty() ? split(nbb_records_id(genome.get(), 0), ' ').at(0) : o->source_id;
      nbb_read_config cfg = o->cfg;
      cfg.seed = g.seed;
      nbb_records* r = nullptr;
      check(nbb_simulate_reads(nbb_records_sequence(genome.get(), 0), id.c_str(), &cfg, g.workers, &r));
      RecordsPtr reads(r);
      Sink sink(g, "reads.fa",
                {{"genome", o->genome}, {"coverage", fmt(cfg.coverage)}, {"read_length", std::to_string(cfg.read_length)},
                 {"sub_rate", fmt(cfg.sub_rate)}, {"n_rate", fmt(cfg.n_rate)}});
      for (std::size_t i = 0; i < nbb_records_count(r); ++i) {
        write_fasta(sink.os(), nbb_records_id(r, i), nbb_records_sequence(r, i));
      }
    });
  }
  {
    struct Opts {
      std::size_t count = 6000;
      std::size_t length = 101;
      bool with_n = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = sim->add_subcommand("random", "Uniform random sequences over ACGT");
    cmd->add_option("--count", o->count)->capture_default_str();
    cmd->add_option("--length", o->length)->capture_default_str();
    cmd->add_flag("--with-n", o->with_n, "Draw from ACGTN instead");
    cmd->callback([&g, o] {
      g.command = "simulate random";
      nbb_records* r = nullptr;
      check(nbb_random_sequences(o->count, o->length, o->with_n ? 1 : 0, g.seed, &r));
      RecordsPtr recs(r);
      Sink sink(g, "random.fa", {{"count", std::to_string(o->count)}, {"length", std::to_string(o->length)}});
      for (std::size_t i = 0; i < nbb_records_count(r); ++i) write_fasta(sink.os(), nbb_records_id(r, i), nbb_records_sequence(r, i));
    });
  }
  {
    struct Opts {
      std::string models, genome_lengths;
      nbb_read_config cfg = nbb_read_config_default();
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = sim->add_subcommand("synthetic", "Genomes from each model, then reads from each genome");
    cmd->add_option("--models", o->models, "Comma-separated model files or bundled names");
    cmd->add_option("--genome-lengths", o->genome_lengths, "Comma-separated; default: bundled reference lengths");
    cmd->add_option("--coverage", o->cfg.coverage)->capture_default_str();
    cmd->add_option("--length", o->cfg.read_length, "Read length")->capture_default_str();
    cmd->add_option("--sub-rate", o->cfg.sub_rate)->capture_default_str();
    cmd->add_option("--n-rate", o->cfg.n_rate)->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "simulate synthetic";
      auto models = load_models(o->models);
      nbb_read_config cfg = o->cfg;
      cfg.seed = g.seed;
      auto reads = synthetic_reads(models, default_genome_lengths(models.size(), o->genome_lengths), cfg, g.workers);
      Sink sink(g, "synthetic.fa",
                {{"coverage", fmt(cfg.coverage)}, {"read_length", std::to_string(cfg.read_length)},
                 {"sub_rate", fmt(cfg.sub_rate)}, {"n_rate", fmt(cfg.n_rate)}});
      for (std::size_t i = 0; i < nbb_records_count(reads.get()); ++i) {
        write_fasta(sink.os(), nbb_records_id(reads.get(), i), nbb_records_sequence(reads.get(), i));
      }
    });
  }
}

/* ---- analyze ---- */

void register_analyze_commands(CLI::App& app, Globals& g) {
  auto* an = app.add_subcommand("analyze", "Statistics over classify / ns outputs");
  an->require_subcommand(1);

  struct Opts {
    std::string classified, ns, ns_b, models, reads, ks = "1,2,5,10,20,50,100,200,404", from = "posterior";
  };

  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("confusion", "Confusion matrix (truth from src= read ids)");
    cmd->add_option("--classified", o->classified, "Output of classify")->required();
    cmd->callback([&g, o] {
      g.command = "analyze confusion";
      const auto t = read_csv(o->classified);
      const auto names = names_from_classified(t);
      const auto truth = truths_from(t, names);
      const auto dec = decisions_from(t, names);
      const std::size_t k = names.size();
      std::vector<std::size_t> counts(k * k);
      double rate = 0.0;
      check(nbb_confusion_matrix(truth.data(), dec.data(), truth.size(), k, counts.data(), &rate));
      {
        Sink sink(g, "confusion.csv", {{"classified", o->classified}});
        std::vector<std::string> header = {"truth"};
        for (const auto& n : names) header.push_back("decided_" + n);
        header.push_back("total");
        write_row(sink.os(), header);
        for (std::size_t i = 0; i < k; ++i) {
          std::vector<std::string> row = {names[i]};
          std::size_t s = 0;
          for (std::size_t j = 0; j < k; ++j) {
            row.push_back(std::to_string(counts[i * k + j]));
            s += counts[i * k + j];
          }
          row.push_back(std::to_string(s));
          write_row(sink.os(), row);
        }
      }
      Sink sink(g, "confusion_summary.csv", {{"classified", o->classified}});
      write_row(sink.os(), {"metric", "value"});
      write_row(sink.os(), {"reads", std::to_string(truth.size())});
      write_row(sink.os(), {"correct_rate", fmt(rate)});
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("crosstab", "Boundary status by source and by correctness, with chi-square");
    cmd->add_option("--classified", o->classified, "Output of classify")->required();
    cmd->add_option("--ns", o->ns, "Output of ns for the same reads")->required();
    cmd->callback([&g, o] {
      g.command = "analyze crosstab";
      const auto t = read_csv(o->classified);
      const auto n = read_csv(o->ns);
      require_same_reads(t, n);
      const auto names = names_from_classified(t);
      const auto truth = truths_from(t, names);
      const auto dec = decisions_from(t, names);
      const std::size_t k = names.size();
      const std::size_t sc = n.col("boundary_status");
      std::vector<std::size_t> by_source(k * k, 0), by_decision(k * k, 0), by_correct(2 * k, 0);
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const std::size_t s = std::stoul(n.rows[i][sc]);
        if (s >= k) throw InputError("boundary status out of range");
        ++by_source[truth[i] * k + s];
        ++by_decision[dec[i] * k + s];
        ++by_correct[(truth[i] == dec[i] ? 1 : 0) * k + s];
      }
      auto emit = [&](Sink& sink, const std::string& label, const std::vector<std::size_t>& counts,
                      const std::vector<std::string>& rows) {
        std::vector<std::string> header = {label};
        for (std::size_t s = 0; s < k; ++s) header.push_back("status_" + std::to_string(s));
        header.push_back("total");
        write_row(sink.os(), header);
        std::vector<std::size_t> col(k, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          std::vector<std::string> row = {rows[r]};
          std::size_t sum = 0;
          for (std::size_t s = 0; s < k; ++s) {
            row.push_back(std::to_string(counts[r * k + s]));
            sum += counts[r * k + s];
            col[s] += counts[r * k + s];
          }
          row.push_back(std::to_string(sum));
          write_row(sink.os(), row);
        }
        std::vector<std::string> total = {"total"};
        std::size_t all = 0;
        for (auto c : col) {
          total.push_back(std::to_string(c));
          all += c;
        }
        total.push_back(std::to_string(all));
        write_row(sink.os(), total);
      };
      // Chi-square on the columns that are populated.
      auto chi = [&](const std::vector<std::size_t>& counts, std::size_t rows) {
        std::vector<std::size_t> keep_cols, keep_rows;
        for (std::size_t s = 0; s < k; ++s) {
          std::size_t c = 0;
          for (std::size_t r = 0; r < rows; ++r) c += counts[r * k + s];
          if (c > 0) keep_cols.push_back(s);
        }
        for (std::size_t r = 0; r < rows; ++r) {
          std::size_t c = 0;
          for (std::size_t s = 0; s < k; ++s) c += counts[r * k + s];
          if (c > 0) keep_rows.push_back(r);
        }
        if (keep_cols.size() < 2 || keep_rows.size() < 2) return std::nan("");
        std::vector<std::size_t> sub;
        for (auto r : keep_rows) {
          for (auto s : keep_cols) sub.push_back(counts[r * k + s]);
        }
        double v = 0.0;
        check(nbb_chi_square(sub.data(), keep_rows.size(), keep_cols.size(), &v));
        return v;
      };
      {
        Sink sink(g, "crosstab_source.csv", {{"classified", o->classified}, {"ns", o->ns}});
        emit(sink, "source", by_source, names);
      }
      {
        Sink sink(g, "crosstab_decision.csv", {{"classified", o->classified}, {"ns", o->ns}});
        emit(sink, "decision", by_decision, names);
      }
      {
        Sink sink(g, "crosstab_correct.csv", {{"classified", o->classified}, {"ns", o->ns}});
        emit(sink, "decision", by_correct, {"incorrect", "correct"});
      }
      Sink sink(g, "crosstab_summary.csv", {{"classified", o->classified}, {"ns", o->ns}});
      write_row(sink.os(), {"metric", "value"});
      write_row(sink.os(), {"chi_square_source", fmt(chi(by_source, k))});
      write_row(sink.os(), {"chi_square_decision", fmt(chi(by_decision, k))});
      write_row(sink.os(), {"chi_square_correct", fmt(chi(by_correct, 2))});
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("roc", "ROC curves of MP- and NS-thresholded acceptance, side by side");
    cmd->add_option("--classified", o->classified)->required();
    cmd->add_option("--ns", o->ns)->required();
    cmd->callback([&g, o] {
      g.command = "analyze roc";
      const auto t = read_csv(o->classified);
      const auto n = read_csv(o->ns);
      require_same_reads(t, n);
      const auto names = names_from_classified(t);
      const auto truth = truths_from(t, names);
      const auto dec = decisions_from(t, names);
      std::vector<int> correct;
      for (std::size_t i = 0; i < truth.size(); ++i) correct.push_back(truth[i] == dec[i] ? 1 : 0);
      const auto mp = column_doubles(t, "max_posterior");
      const auto ns = column_doubles(n, "ns");
      nbb_roc *a = nullptr, *b = nullptr;
      check(nbb_roc_curve(mp.data(), correct.data(), mp.size(), &a));
      RocPtr ra(a);
      check(nbb_roc_curve(ns.data(), correct.data(), ns.size(), &b));
      RocPtr rb(b);
      {
        Sink sink(g, "roc.csv", {{"classified", o->classified}, {"ns", o->ns}});
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
      Sink sink(g, "roc_summary.csv", {{"classified", o->classified}, {"ns", o->ns}});
      write_row(sink.os(), {"metric", "value"});
      write_row(sink.os(), {"auc_mp", fmt(nbb_roc_auc(a))});
      write_row(sink.os(), {"auc_ns", fmt(nbb_roc_auc(b))});
      write_row(sink.os(), {"pearson_mp_ns", fmt(corr)});
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("barycentric", "Per-read triangle coordinates for three classes");
    cmd->add_option("--classified", o->classified, "Output of classify (posterior coordinates)");
    cmd->add_option("--ns", o->ns, "Output of ns (neighbor-decision coordinates)");
    cmd->add_option("--from", o->from, "posterior | neighbors")
        ->check(CLI::IsMember({"posterior", "neighbors"}))
        ->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "analyze barycentric";
      const bool neighbors = o->from == "neighbors";
      const std::string path = neighbors ? o->ns : o->classified;
      if (path.empty()) throw UsageError(neighbors ? "--ns is required" : "--classified is required");
      const auto t = read_csv(path);
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c].rfind(neighbors ? "n_" : "p_", 0) == 0) cols.push_back(c);
      }
      if (cols.size() != 3) throw InputError("barycentric coordinates need exactly three classes");
      const std::size_t id = t.col("read_id"), dc = t.col("decision");
      Sink sink(g, "barycentric.csv", {{"input", path}, {"from", o->from}});
      write_row(sink.os(), {"read_id", "source", "decision", "x", "y"});
      for (const auto& row : t.rows) {
        double p[3];
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
          p[j] = std::stod(row[cols[static_cast<std::size_t>(j)]]);
          s += p[j];
        }
        if (neighbors || std::abs(s - 1.0) > 1e-6) {
          for (double& v : p) v /= s;
        }
        double x = 0, y = 0;
        check(nbb_barycentric(p, &x, &y));
        write_row(sink.os(), {row[id], source_label(row[id]), row[dc], fmt(x), fmt(y)});
      }
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("quadfit", "Per-class quadratic regression of MP on NS");
    cmd->add_option("--classified", o->classified)->required();
    cmd->add_option("--ns", o->ns)->required();
    cmd->callback([&g, o] {
      g.command = "analyze quadfit";
      const auto t = read_csv(o->classified);
      const auto n = read_csv(o->ns);
      require_same_reads(t, n);
      const auto names = names_from_classified(t);
      const auto dec = decisions_from(t, names);
      const auto mp = column_doubles(t, "max_posterior");
      const auto ns = column_doubles(n, "ns");
      std::vector<nbb_quadratic_coef> coefs(names.size());
      double r2 = 0, adj = 0, mse = 0;
      check(nbb_quadratic_fit(ns.data(), mp.data(), dec.data(), ns.size(), names.size(), coefs.data(), &r2, &adj,
                              &mse));
      {
        Sink sink(g, "quadfit.csv", {{"classified", o->classified}, {"ns", o->ns}});
        write_row(sink.os(), {"class", "alpha", "beta", "gamma", "n"});
        for (std::size_t i = 0; i < names.size(); ++i) {
          write_row(sink.os(), {names[i], fmt(coefs[i].alpha), fmt(coefs[i].beta), fmt(coefs[i].gamma),
                                std::to_string(coefs[i].n)});
        }
      }
      Sink sink(g, "quadfit_summary.csv", {{"classified", o->classified}, {"ns", o->ns}});
      write_row(sink.os(), {"metric", "value"});
      write_row(sink.os(), {"r_squared", fmt(r2)});
      write_row(sink.os(), {"adjusted_r_squared", fmt(adj)});
      write_row(sink.os(), {"mse", fmt(mse)});
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("rrmse", "RRMSE of sampled-neighbor NS estimates as a function of k");
    cmd->add_option("--models", o->models, "Comma-separated model files or bundled names");
    cmd->add_option("--reads", o->reads)->required();
    cmd->add_option("--ks", o->ks, "Ascending sample sizes")->capture_default_str();
    cmd->callback([&g, o] {
      g.command = "analyze rrmse";
      auto models = load_models(o->models);
      auto c = bayes_classifier(models);
      auto recs = read_records(o->reads);
      const auto reads = sequence_pointers(recs.get());
      const auto ks = parse_size_list(o->ks);
      std::vector<double> rr(ks.size());
      check(nbb_ns_sampling_rrmse(c.get(), reads.data(), reads.size(), ks.data(), ks.size(), g.seed, g.include_n(),
                                  g.workers, rr.data()));
      Sink sink(g, "rrmse.csv", {{"reads", o->reads}, {"ks", o->ks}});
      write_row(sink.os(), {"k", "rrmse"});
      for (std::size_t i = 0; i < ks.size(); ++i) write_row(sink.os(), {std::to_string(ks[i]), fmt(rr[i])});
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* cmd = an->add_subcommand("ks", "Two-sample KS statistic between NS columns of two ns outputs");
    cmd->add_option("--ns", o->ns)->required();
    cmd->add_option("--ns-b", o->ns_b)->required();
    cmd->callback([&g, o] {
      g.command = "analyze ks";
      const auto a = column_doubles(read_csv(o->ns), "ns");
      const auto b = column_doubles(read_csv(o->ns_b), "ns");
      double d = 0.0;
      check(nbb_ks_statistic(a.data(), a.size(), b.data(), b.size(), &d));
      Sink sink(g, "ks.csv", {{"a", o->ns}, {"b", o->ns_b}});
      write_row(sink.os(), {"n_a", "n_b", "ks"});
      write_row(sink.os(), {std::to_string(a.size()), std::to_string(b.size()), fmt(d)});
    });
  }
}

}  // namespace cli
