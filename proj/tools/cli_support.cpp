#include "cli_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace cli {

void check(nbb_status status) {
  if (status != NBB_OK) throw InputError(std::string(nbb_status_name(status)) + ": " + nbb_last_error());
}

std::string header_line(const Globals& g, const Params& params) {
  std::ostringstream os;
  os << "# nbb " << nbb_version() << " command=" << g.command << " seed=" << g.seed << " workers=" << g.workers
     << " include_n=" << g.include_n();
  for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
  return os.str();
}

Sink::Sink(const Globals& g, const std::string& file_name, const Params& params) : out_(&std::cout) {
  if (!g.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(g.out_dir, ec);
    const auto path = std::filesystem::path(g.out_dir) / file_name;
    file_.open(path);
    if (!file_) throw InputError("cannot write " + path.string());
    out_ = &file_;
  } else {
    static bool first = true;
    if (!first) std::cout << '\n';
    first = false;
  }
  *out_ << header_line(g, params) << '\n';
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

namespace {

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::size_t CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InputError("missing CSV column '" + name + "'");
}

bool CsvTable::has(const std::string& name) const {
  for (const auto& c : columns) {
    if (c == name) return true;
  }
  return false;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = parse_csv_line(line);
    if (t.columns.empty()) {
      t.columns = std::move(fields);
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(t.columns.size()) +
                       " fields");
    }
    t.rows.push_back(std::move(fields));
  }
  if (t.columns.empty()) throw InputError(path + ": no CSV header");
  return t;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) throw UsageError("not a non-negative integer: '" + s + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

namespace {

int bundled_id(const std::string& name) {
  if (name == "adeno") return NBB_GENOME_ADENO;
  if (name == "covid") return NBB_GENOME_COVID;
  if (name == "sars") return NBB_GENOME_SARS;
  return -1;
}

std::string model_dir() {
  const char* d = std::getenv("NBB_MODEL_DIR");
  return d == nullptr ? std::string() : std::string(d);
}

}  // namespace

ModelPtr load_model(const std::string& name_or_path) {
  nbb_model* m = nullptr;
  const int id = bundled_id(name_or_path);
  if (id >= 0 && !std::filesystem::exists(name_or_path)) {
    check(nbb_model_bundled(id, &m));
    return ModelPtr(m);
  }
  std::string path = name_or_path;
  const std::string dir = model_dir();
  if (!std::filesystem::exists(path) && !dir.empty() && std::filesystem::exists(std::filesystem::path(dir) / path)) {
    path = (std::filesystem::path(dir) / path).string();
  }
  check(nbb_model_load(path.c_str(), &m));
  return ModelPtr(m);
}

std::vector<ModelPtr> load_models(const std::string& spec) {
  std::vector<std::string> names = split(spec, ',');
  if (names.empty()) {
    const std::string dir = model_dir();
    if (!dir.empty()) {
      for (const char* f : {"adeno.json", "covid.json", "sars.json"}) {
        names.push_back((std::filesystem::path(dir) / f).string());
      }
    } else {
      names = {"adeno", "covid", "sars"};
    }
  }
  std::vector<ModelPtr> out;
  for (const auto& n : names) {
    if (n == "bundled") {
      for (const char* b : {"adeno", "covid", "sars"}) out.push_back(load_model(b));
    } else {
      out.push_back(load_model(n));
    }
  }
  return out;
}

ClassifierPtr bayes_classifier(const std::vector<ModelPtr>& models) {
  std::vector<const nbb_model*> raw;
  for (const auto& m : models) raw.push_back(m.get());
  nbb_classifier* c = nullptr;
  check(nbb_classifier_bayes(raw.data(), raw.size(), nullptr, &c));
  return ClassifierPtr(c);
}

std::vector<std::string> class_names(const nbb_classifier* c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < nbb_classifier_num_classes(c); ++i) out.emplace_back(nbb_classifier_class_name(c, i));
  return out;
}

RecordsPtr read_records(const std::string& path) {
  nbb_records* r = nullptr;
  check(nbb_records_read_file(path.c_str(), &r));
  return RecordsPtr(r);
}

std::vector<const char*> sequence_pointers(const nbb_records* r) {
  const char* const* p = nbb_records_sequences(r);
  return std::vector<const char*>(p, p + nbb_records_count(r));
}

std::string source_label(const std::string& read_id) {
  const auto pos = read_id.find("src=");
  if (pos == std::string::npos) return {};
  const auto start = pos + 4;
  const auto end = read_id.find(' ', start);
  return read_id.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace cli
