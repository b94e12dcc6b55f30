#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbb/nbb.h"

namespace cli {

// Exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(nbb_status status);

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};

using ModelPtr = std::unique_ptr<nbb_model, Deleter<nbb_model, nbb_model_free>>;
using ClassifierPtr = std::unique_ptr<nbb_classifier, Deleter<nbb_classifier, nbb_classifier_free>>;
using RecordsPtr = std::unique_ptr<nbb_records, Deleter<nbb_records, nbb_records_free>>;
using TracePtr = std::unique_ptr<nbb_trace, Deleter<nbb_trace, nbb_trace_free>>;
using RocPtr = std::unique_ptr<nbb_roc, Deleter<nbb_roc, nbb_roc_free>>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { nbb_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct Globals {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool no_n = false;
  std::string out_dir;
  std::string command;  // e.g. "classify" or "replicate table8"

  int include_n() const { return no_n ? 0 : 1; }
};

using Params = std::vector<std::pair<std::string, std::string>>;

// One output table: a file under --out, or stdout (tables separated by a
// blank line). Starts with a '#' header naming version, seed and parameters.
class Sink {
 public:
  Sink(const Globals& g, const std::string& file_name, const Params& params);
  std::ostream& os() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

// Shared by every '#' header line.
std::string header_line(const Globals& g, const Params& params);

std::string fmt(double v);
std::string csv_field(const std::string& s);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Index of a column; throws InputError when absent.
  std::size_t col(const std::string& name) const;
  bool has(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

// Comma-separated list of model files or bundled names (adeno, covid, sars,
// bundled). An empty spec loads adeno/covid/sars JSON files from
// $NBB_MODEL_DIR when set, otherwise the bundled models.
std::vector<ModelPtr> load_models(const std::string& spec);
ModelPtr load_model(const std::string& name_or_path);
ClassifierPtr bayes_classifier(const std::vector<ModelPtr>& models);
std::vector<std::string> class_names(const nbb_classifier* c);

RecordsPtr read_records(const std::string& path);
std::vector<const char*> sequence_pointers(const nbb_records* r);

// Source label from a simulated read id ("src=<label> ..."), or "".
std::string source_label(const std::string& read_id);

std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);

}  // namespace cli
