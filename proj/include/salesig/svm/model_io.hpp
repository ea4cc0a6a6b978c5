#pragma once

#include <string>

#include "json.hpp"
#include "salesig/svm/multiclass.hpp"

namespace salesig::svm {

inline constexpr int kModelVersion = 1;

// {"format": "salesig-model", "version": 1, "class_names": [...],
//  "scaler": {"means", "sds", "flags"}, "bands": [...]?,
//  "binaries": [{"kernel", "c", "class_weights", "bias", "dual_coefs",
//                "support_vectors"}]}
// Doubles are written in shortest round-trip form.
nlohmann::json model_to_json(const MulticlassSvmModel& m);

// PersistenceError on version mismatch or any schema violation.
MulticlassSvmModel model_from_json(const nlohmann::json& j);

void save_model(const MulticlassSvmModel& m, const std::string& path);
MulticlassSvmModel load_model(const std::string& path);

nlohmann::json kernel_to_json(const KernelConfig& k);

}  // namespace salesig::svm
