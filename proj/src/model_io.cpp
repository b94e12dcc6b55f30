#include "nbb/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nbb {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, source + ": " + e.what());
  }
}

}  // namespace

TripletModel model_from_json(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  require(doc.is_object(), ErrorCode::kParse, source + ": model must be a JSON object");
  require(doc.contains("label") && doc["label"].is_string(), ErrorCode::kParse,
          source + ": missing string field 'label'");
  if (doc.contains("alphabet")) {
    require(doc["alphabet"] == "ACGT", ErrorCode::kParse,
            source + ": model alphabet must be \"ACGT\"");
  }
  require(doc.contains("triplets") && doc["triplets"].is_object(), ErrorCode::kParse,
          source + ": missing object field 'triplets'");
  const json& t = doc["triplets"];
  require(t.size() == kNumTriplets, ErrorCode::kParse,
          source + ": expected 64 triplet entries, found " + std::to_string(t.size()));
  std::array<double, kNumTriplets> raw{};
  for (std::size_t i = 0; i < kNumTriplets; ++i) {
    const std::string key = triplet_name(i);
    require(t.contains(key) && t[key].is_number(), ErrorCode::kParse,
            source + ": missing numeric triplet '" + key + "'");
    raw[i] = t[key].get<double>();
  }
  try {
    return TripletModel(doc["label"].get<std::string>(), TripletDistribution::normalized(raw, 1e-4));
  } catch (const Error& e) {
    fail(e.code(), source + ": " + e.what());
  }
}

std::string model_to_json(const TripletModel& model) {
  json triplets = json::object();
  for (std::size_t i = 0; i < kNumTriplets; ++i) triplets[triplet_name(i)] = model.p3()[i];
  json doc = {{"label", model.label()}, {"alphabet", "ACGT"}, {"triplets", triplets}};
  return doc.dump(2) + "\n";
}

TripletModel load_model_file(const std::string& path) { return model_from_json(slurp(path), path); }

void save_model_file(const TripletModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  out << model_to_json(model);
}

ClassifierBundle load_bundle_file(const std::string& path) {
  const json doc = parse_json(slurp(path), path);
  require(doc.is_object() && doc.contains("models") && doc["models"].is_array(),
          ErrorCode::kParse, path + ": bundle needs a 'models' array");
  const auto base = std::filesystem::path(path).parent_path();
  ClassifierBundle bundle;
  for (const auto& entry : doc["models"]) {
    require(entry.is_string(), ErrorCode::kParse, path + ": model entries must be paths");
    std::filesystem::path p = entry.get<std::string>();
    if (p.is_relative()) p = base / p;
    bundle.models.push_back(load_model_file(p.string()));
  }
  if (doc.contains("prior")) {
    require(doc["prior"].is_array(), ErrorCode::kParse, path + ": 'prior' must be an array");
    for (const auto& w : doc["prior"]) {
      require(w.is_number(), ErrorCode::kParse, path + ": prior weights must be numbers");
      bundle.prior.push_back(w.get<double>());
    }
  }
  return bundle;
}

}  // namespace nbb
