#ifndef NBB_NBB_H
#define NBB_NBB_H

/*
 * C interface to the nbb library: triplet-model naive Bayes classification of
 * DNA reads and decision-boundary analysis over the Hamming graph.
 *
 * Conventions:
 *   - Functions return nbb_status; NBB_OK is 0. On failure, nbb_last_error()
 *     returns a message for the calling thread until its next failing call.
 *   - Objects are opaque handles created by nbb_*_create-style functions and
 *     released with the matching nbb_*_free (NULL is accepted).
 *   - Sequences are NUL-terminated strings over A, C, G, T, N (lowercase is
 *     folded). Class indices are size_t.
 *   - Strings returned as const char* are owned by the handle they came from.
 *     Strings returned through char** are owned by the caller and released
 *     with nbb_string_free.
 *   - Every handle may be used concurrently for reading.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NBB_BUILDING_LIBRARY)
#    define NBB_API __declspec(dllexport)
#  else
#    define NBB_API __declspec(dllimport)
#  endif
#else
#  define NBB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nbb_status {
  NBB_OK = 0,
  NBB_E_INVALID_ARGUMENT = 1,
  NBB_E_IO = 2,
  NBB_E_PARSE = 3,
  NBB_E_ILLEGAL_CHARACTER = 4,
  NBB_E_LENGTH_MISMATCH = 5,
  NBB_E_DOMAIN = 6,
  NBB_E_UNDEFINED_POSTERIOR = 7,
  NBB_E_NOT_ON_BOUNDARY = 8,
  NBB_E_DEGENERATE_MODEL = 9,
  NBB_E_RANK_DEFICIENT = 10,
  NBB_E_INTERNAL = 99
} nbb_status;

NBB_API const char* nbb_version(void);
NBB_API const char* nbb_last_error(void);
NBB_API const char* nbb_status_name(nbb_status status);
NBB_API void nbb_string_free(char* s);

/* ---- Triplet models ---------------------------------------------------- */

typedef struct nbb_model nbb_model;

enum { NBB_GENOME_ADENO = 0, NBB_GENOME_COVID = 1, NBB_GENOME_SARS = 2 };

NBB_API nbb_status nbb_model_load(const char* path, nbb_model** out);
NBB_API nbb_status nbb_model_from_json(const char* json, nbb_model** out);
/* probs: 64 triplet probabilities, index b1*16 + b2*4 + b3 with A,C,G,T = 0..3. */
NBB_API nbb_status nbb_model_from_probs(const char* label, const double* probs, nbb_model** out);
NBB_API nbb_status nbb_model_bundled(int genome, nbb_model** out);
NBB_API size_t nbb_bundled_genome_length(int genome);
NBB_API nbb_status nbb_model_estimate(const char* label, const char* genome, double pseudocount,
                                      nbb_model** out);
NBB_API void nbb_model_free(nbb_model* model);

NBB_API const char* nbb_model_label(const nbb_model* model);
NBB_API nbb_status nbb_model_triplets(const nbb_model* model, double* out64);
NBB_API nbb_status nbb_model_to_json(const nbb_model* model, char** out);
NBB_API nbb_status nbb_model_save(const nbb_model* model, const char* path);

NBB_API nbb_status nbb_hellinger(const nbb_model* a, const nbb_model* b, double* out);
NBB_API nbb_status nbb_hellinger_probs(const double* p, const double* q, size_t n, double* out);
NBB_API nbb_status nbb_log_likelihood(const nbb_model* model, const char* read, double* out);

enum { NBB_NULL_INDEPENDENT_WINDOWS = 0, NBB_NULL_MARKOV_CHAIN = 1 };

/* q-quantile of the Hellinger distance between the model and re-estimates
 * from `replicates` simulated genomes of `length` bases. */
NBB_API nbb_status nbb_null_quantile(const nbb_model* model, size_t length, size_t replicates, double q,
                                     uint64_t seed, int sampling, unsigned workers, double* out);

NBB_API nbb_status nbb_simulate_genome(const nbb_model* model, size_t length, uint64_t seed, char** out);

/* ---- Sequence collections ---------------------------------------------- */

typedef struct nbb_records nbb_records;

/* FASTA, FASTQ or one-sequence-per-line, detected from the content. */
NBB_API nbb_status nbb_records_read_file(const char* path, nbb_records** out);
NBB_API nbb_status nbb_records_from_strings(const char* const* sequences, size_t n, nbb_records** out);
NBB_API nbb_status nbb_random_sequences(size_t count, size_t length, int include_n, uint64_t seed,
                                        nbb_records** out);

typedef struct nbb_read_config {
  size_t read_length;
  double coverage;
  double sub_rate;
  double n_rate;
  uint64_t seed;
} nbb_read_config;

NBB_API nbb_read_config nbb_read_config_default(void);

NBB_API nbb_status nbb_simulate_reads(const char* genome, const char* source_id, const nbb_read_config* cfg,
                                      unsigned workers, nbb_records** out);
/* One genome per model at the given lengths, then reads from each; record
 * sources are model indices. */
NBB_API nbb_status nbb_synthetic_reads(const nbb_model* const* models, const size_t* genome_lengths,
                                       size_t n_models, const nbb_read_config* cfg, unsigned workers,
                                       nbb_records** out);
NBB_API void nbb_records_free(nbb_records* records);

NBB_API size_t nbb_records_count(const nbb_records* records);
NBB_API const char* nbb_records_id(const nbb_records* records, size_t i);
NBB_API const char* nbb_records_sequence(const nbb_records* records, size_t i);
/* Source index of a simulated record, or SIZE_MAX. */
NBB_API size_t nbb_records_source(const nbb_records* records, size_t i);
/* Pointers to all sequences, valid for the lifetime of the records. */
NBB_API const char* const* nbb_records_sequences(const nbb_records* records);

/* ---- Classifiers -------------------------------------------------------- */

typedef struct nbb_classifier nbb_classifier;

/* prior may be NULL for uniform. Models are copied. */
NBB_API nbb_status nbb_classifier_bayes(const nbb_model* const* models, size_t n, const double* prior,
                                        nbb_classifier** out);

/* Must be deterministic and thread-safe; return 0 on success. */
typedef int (*nbb_decide_fn)(const char* sequence, size_t length, void* user, size_t* out_class);

NBB_API nbb_status nbb_classifier_callback(const char* const* class_names, size_t n_classes, nbb_decide_fn fn,
                                           void* user, nbb_classifier** out);

/* Merges the classes of a posterior-capable classifier: group_of[i] is the
 * group of base class i. Grouped posteriors are sums of base posteriors. */
NBB_API nbb_status nbb_classifier_grouped(const nbb_classifier* base, const size_t* group_of,
                                          const char* const* group_names, size_t n_groups,
                                          nbb_classifier** out);
NBB_API void nbb_classifier_free(nbb_classifier* classifier);

NBB_API size_t nbb_classifier_num_classes(const nbb_classifier* classifier);
NBB_API const char* nbb_classifier_class_name(const nbb_classifier* classifier, size_t index);
NBB_API int nbb_classifier_has_posterior(const nbb_classifier* classifier);

NBB_API nbb_status nbb_classify(const nbb_classifier* classifier, const char* read, size_t* out_class);
/* out: num_classes entries. */
NBB_API nbb_status nbb_posterior(const nbb_classifier* classifier, const char* read, double* out);
/* decisions: n entries; posteriors (optional): n * num_classes, row-major. */
NBB_API nbb_status nbb_classify_batch(const nbb_classifier* classifier, const char* const* reads, size_t n,
                                      unsigned workers, size_t* decisions, double* posteriors);

/* ---- Boundary ------------------------------------------------------------ */

typedef struct nbb_profile {
  size_t decision;
  double ns;
  size_t boundary_status;
  size_t evaluations;
} nbb_profile;

/* neighbor_counts (optional): n * num_classes, row-major. */
NBB_API nbb_status nbb_neighbor_profiles(const nbb_classifier* classifier, const char* const* reads, size_t n,
                                         int include_n, unsigned workers, nbb_profile* out,
                                         size_t* neighbor_counts);

NBB_API nbb_status nbb_sampled_ns(const nbb_classifier* classifier, const char* read, size_t k, uint64_t seed,
                                  int include_n, double* ns, size_t* evaluations);

typedef struct nbb_db_bound {
  size_t lower;
  size_t upper;
  int has_upper;
  size_t exhausted_radius;
  size_t budget_used;
} nbb_db_bound;

NBB_API nbb_status nbb_distance_bound(const nbb_classifier* classifier, const char* read,
                                      const char* const* witnesses, const size_t* witness_decisions,
                                      size_t n_witnesses, size_t bfs_budget, int include_n, nbb_db_bound* out);

/* RRMSE of full NS regressed on sampled NS(., 1..k) for each k in ks
 * (ascending); read i's neighbor order is seeded with seed + i. */
NBB_API nbb_status nbb_ns_sampling_rrmse(const nbb_classifier* classifier, const char* const* reads, size_t n,
                                         const size_t* ks, size_t n_ks, uint64_t seed, int include_n,
                                         unsigned workers, double* rrmse);

/* ---- Exploration --------------------------------------------------------- */

typedef struct nbb_trace nbb_trace;

enum { NBB_STRATEGY_HAMMING = 0, NBB_STRATEGY_WALK = 1, NBB_STRATEGY_CRAWL = 2 };

NBB_API nbb_status nbb_hamming_search(const nbb_classifier* classifier, const char* origin,
                                      const char* const* targets, size_t n_targets, int record_paths,
                                      nbb_trace** out);
NBB_API nbb_status nbb_random_walk(const nbb_classifier* classifier, const char* origin, size_t steps,
                                   uint64_t seed, int include_n, int full_profile, nbb_trace** out);
NBB_API nbb_status nbb_boundary_crawl(const nbb_classifier* classifier, const char* start, size_t max_steps,
                                      uint64_t seed, int include_n, nbb_trace** out);
NBB_API void nbb_trace_free(nbb_trace* trace);

NBB_API int nbb_trace_strategy(const nbb_trace* trace);
NBB_API uint64_t nbb_trace_seed(const nbb_trace* trace);
NBB_API size_t nbb_trace_length(const nbb_trace* trace);
NBB_API size_t nbb_trace_evaluations(const nbb_trace* trace);
NBB_API int nbb_trace_terminated_early(const nbb_trace* trace);
NBB_API size_t nbb_trace_boundary_point_count(const nbb_trace* trace);
NBB_API size_t nbb_trace_n_decisions(const nbb_trace* trace, size_t num_classes);
NBB_API nbb_status nbb_trace_visited(const nbb_trace* trace, size_t i, const char** sequence, size_t* decision);
NBB_API size_t nbb_trace_pair_count(const nbb_trace* trace);
NBB_API nbb_status nbb_trace_pair(const nbb_trace* trace, size_t i, const char** a, const char** b,
                                  size_t* decision_a, size_t* decision_b);

typedef struct nbb_efficiency_row {
  int strategy;
  size_t traces;
  size_t evaluations;
  size_t boundary_points;
  double efficiency;
} nbb_efficiency_row;

/* out must hold 3 rows; *n_rows receives the number written. */
NBB_API nbb_status nbb_efficiency_report(const nbb_trace* const* traces, size_t n, nbb_efficiency_row* out,
                                         size_t* n_rows);

/* ---- Analysis ------------------------------------------------------------ */

/* counts: num_classes^2, row = truth, column = decision. */
NBB_API nbb_status nbb_confusion_matrix(const size_t* truths, const size_t* decisions, size_t n,
                                        size_t num_classes, size_t* counts, double* correct_rate);
/* counts: rows * cols, row-major. */
NBB_API nbb_status nbb_chi_square(const size_t* counts, size_t rows, size_t cols, double* out);
NBB_API nbb_status nbb_ks_statistic(const double* a, size_t na, const double* b, size_t nb, double* out);
NBB_API nbb_status nbb_pearson(const double* a, const double* b, size_t n, double* out);

typedef struct nbb_roc nbb_roc;

NBB_API nbb_status nbb_roc_curve(const double* scores, const int* correct, size_t n, nbb_roc** out);
NBB_API void nbb_roc_free(nbb_roc* roc);
NBB_API size_t nbb_roc_size(const nbb_roc* roc);
NBB_API double nbb_roc_auc(const nbb_roc* roc);
NBB_API nbb_status nbb_roc_point(const nbb_roc* roc, size_t i, double* threshold, double* fpr, double* tpr);

typedef struct nbb_quadratic_coef {
  double alpha;
  double beta;
  double gamma;
  size_t n;
} nbb_quadratic_coef;

/* coefs: num_classes entries; classes without observations get n = 0. */
NBB_API nbb_status nbb_quadratic_fit(const double* ns, const double* mp, const size_t* classes, size_t n,
                                     size_t num_classes, nbb_quadratic_coef* coefs, double* r_squared,
                                     double* adjusted_r_squared, double* mse);

NBB_API nbb_status nbb_barycentric(const double* p3, double* x, double* y);

#ifdef __cplusplus
}
#endif

#endif /* NBB_NBB_H */
