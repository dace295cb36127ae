#pragma once

#include <string>

#include "siabf/forecast.hpp"

namespace siabf {

/// JSON model file, schema "siabf-model" v1. Doubles are emitted with
/// shortest-round-trip precision, so load(save(m)) predicts bit-identically.
std::string model_to_json(const SparseModel& model);

SparseModel model_from_json(const std::string& json_text);

void save_model(const std::string& path, const SparseModel& model);
SparseModel load_model(const std::string& path);

}  // namespace siabf
