#include "siabf/model_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "siabf-model";
constexpr int kVersion = 1;

json vector_to_json(const std::vector<double>& v) { return json(v); }

std::vector<double> json_to_vector(const json& j, const char* what) {
  if (!j.is_array()) {
    throw Error(Errc::MalformedFile, std::string(what) + " must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) {
      throw Error(Errc::MalformedFile, std::string(what) + " must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

Suitability suitability_from_name(const std::string& name) {
  if (name == "model_based_favored") return Suitability::ModelBasedFavored;
  if (name == "contested") return Suitability::Contested;
  if (name == "data_driven_favored") return Suitability::DataDrivenFavored;
  throw Error(Errc::MalformedFile, "unknown suitability '" + name + "'");
}

}  // namespace

std::string model_to_json(const SparseModel& model) {
  json basis = {
      {"fourier_periods", vector_to_json(model.spec.fourier_periods)},
      {"include_intercept", model.spec.include_intercept},
      {"trend_degree", model.spec.trend_degree},
      {"column_labels", model.spec.column_labels},
  };
  if (model.spec.trend_window) {
    basis["trend_window"] = {model.spec.trend_window->first,
                             model.spec.trend_window->second};
  } else {
    basis["trend_window"] = nullptr;
  }

  std::vector<double> xi(model.coefficients.xi.data(),
                         model.coefficients.xi.data() + model.coefficients.xi.size());
  json doc = {
      {"format", kFormat},
      {"version", kVersion},
      {"basis", basis},
      {"coefficients",
       {{"xi", vector_to_json(xi)},
        {"nonzero_count", model.coefficients.nonzero_count},
        {"lambda_used", model.coefficients.lambda_used},
        {"solver", solver_name(model.coefficients.solver_id)},
        {"converged", model.coefficients.converged},
        {"underdetermined", model.coefficients.underdetermined},
        {"singular_active_set", model.coefficients.singular_active_set}}},
      {"standardization", {{"mean", model.stats.mean}, {"std", model.stats.std}}},
      {"training",
       {{"start_time", model.train_start},
        {"end_time", model.train_end},
        {"sample_interval", model.sample_interval},
        {"top_period_count", model.top_period_count}}},
      {"spectrum",
       {{"quasi_periodic_index", model.spectrum.quasi_periodic_index},
        {"suitability", suitability_name(model.spectrum.suitability)},
        {"top_periods", vector_to_json(model.spectrum.top_periods)},
        {"top_amplitudes", vector_to_json(model.spectrum.top_amplitudes)}}},
  };
  return doc.dump(2) + "\n";
}

SparseModel model_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedFile, std::string("invalid model JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      throw Error(Errc::MalformedFile, "not a siabf model file");
    }
    if (doc.at("version").get<int>() != kVersion) {
      throw Error(Errc::MalformedFile, "unsupported model file version");
    }

    SparseModel model;
    const json& basis = doc.at("basis");
    model.spec.fourier_periods =
        json_to_vector(basis.at("fourier_periods"), "fourier_periods");
    model.spec.include_intercept = basis.at("include_intercept").get<bool>();
    model.spec.trend_degree = basis.at("trend_degree").get<int>();
    model.spec.column_labels =
        basis.at("column_labels").get<std::vector<std::string>>();
    if (!basis.at("trend_window").is_null()) {
      const auto window = json_to_vector(basis.at("trend_window"), "trend_window");
      if (window.size() != 2) {
        throw Error(Errc::MalformedFile, "trend_window must have 2 entries");
      }
      model.spec.trend_window = {window[0], window[1]};
    }
    if (model.spec.trend_degree != 0 && model.spec.trend_degree != 1) {
      throw Error(Errc::MalformedFile, "trend_degree must be 0 or 1");
    }
    if (model.spec.column_labels.size() != model.spec.column_count()) {
      throw Error(Errc::MalformedFile, "column labels do not match the spec");
    }

    const json& coef = doc.at("coefficients");
    const auto xi = json_to_vector(coef.at("xi"), "xi");
    if (xi.size() != model.spec.column_count()) {
      throw Error(Errc::MalformedFile,
                  "coefficient length does not match the basis spec");
    }
    model.coefficients.xi =
        Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
    model.coefficients.nonzero_count = coef.at("nonzero_count").get<int>();
    model.coefficients.lambda_used = coef.at("lambda_used").get<double>();
    model.coefficients.solver_id =
        solver_from_name(coef.at("solver").get<std::string>());
    model.coefficients.converged = coef.at("converged").get<bool>();
    model.coefficients.underdetermined = coef.at("underdetermined").get<bool>();
    model.coefficients.singular_active_set =
        coef.at("singular_active_set").get<bool>();

    const json& st = doc.at("standardization");
    model.stats.mean = st.at("mean").get<double>();
    model.stats.std = st.at("std").get<double>();
    if (!(model.stats.std > 0.0)) {
      throw Error(Errc::MalformedFile, "standardization std must be positive");
    }

    const json& tr = doc.at("training");
    model.train_start = tr.at("start_time").get<double>();
    model.train_end = tr.at("end_time").get<double>();
    model.sample_interval = tr.at("sample_interval").get<double>();
    model.top_period_count = tr.at("top_period_count").get<int>();
    if (!(model.sample_interval > 0.0) || !(model.train_end >= model.train_start)) {
      throw Error(Errc::MalformedFile, "training span is inconsistent");
    }

    const json& sp = doc.at("spectrum");
    model.spectrum.quasi_periodic_index =
        sp.at("quasi_periodic_index").get<double>();
    model.spectrum.suitability =
        suitability_from_name(sp.at("suitability").get<std::string>());
    model.spectrum.top_periods =
        json_to_vector(sp.at("top_periods"), "top_periods");
    model.spectrum.top_amplitudes =
        json_to_vector(sp.at("top_amplitudes"), "top_amplitudes");
    return model;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedFile, std::string("model schema error: ") + e.what());
  }
}

void save_model(const std::string& path, const SparseModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << model_to_json(model);
}

SparseModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace siabf
