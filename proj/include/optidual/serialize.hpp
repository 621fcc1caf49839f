#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "optidual/frames.hpp"
#include "optidual/sensing.hpp"
#include "optidual/solver.hpp"

namespace optidual {

// Binary container: "ODL1" magic, version, kind tag, n, d, lattice params,
// then row-major interleaved (re, im) doubles.
void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

// CSV for inspection: alternating re/im columns with a header row.
void save_matrix_csv(const CMatrix& matrix, const std::filesystem::path& path);

void save_sensing(const SensingEnsemble& phi, const std::filesystem::path& binary_path,
                  const std::filesystem::path& meta_path);
SensingEnsemble load_sensing(const std::filesystem::path& binary_path,
                             const std::filesystem::path& meta_path);

nlohmann::json ground_truth_to_json(const GroundTruth& gt);
nlohmann::json recovery_result_to_json(const RecoveryResult& result);

// vectors as arrays of [re, im] pairs
nlohmann::json cvector_to_json(const CVector& v);
CVector cvector_from_json(const nlohmann::json& j);

}  // namespace optidual
