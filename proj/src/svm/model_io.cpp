#include "salesig/svm/model_io.hpp"

#include <cmath>

#include "salesig/errors.hpp"
#include "salesig/text.hpp"

namespace salesig::svm {

using nlohmann::json;

json kernel_to_json(const KernelConfig& k) {
  return {{"kind", to_string(k.kind)}, {"gamma", k.gamma}, {"degree", k.degree}, {"coef0", k.coef0}};
}

json model_to_json(const MulticlassSvmModel& m) {
  json flags = json::array();
  for (bool b : m.scaler.substituted) flags.push_back(b);

  json binaries = json::array();
  for (const auto& b : m.binaries) {
    binaries.push_back({{"kernel", kernel_to_json(b.kernel)},
                        {"c", b.c},
                        {"class_weights", {{"positive", b.positive_weight}, {"negative", b.negative_weight}}},
                        {"bias", b.bias},
                        {"dual_coefs", b.dual_coefs},
                        {"support_vectors", b.support_vectors}});
  }

  json j = {{"format", "salesig-model"},
            {"version", kModelVersion},
            {"class_names", m.class_names},
            {"scaler", {{"means", m.scaler.means}, {"sds", m.scaler.sds}, {"flags", flags}}},
            {"binaries", binaries}};
  if (m.bands) j["bands"] = band_spec_to_json(*m.bands);
  return j;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PersistenceError("model schema violation: " + what);
}

std::vector<double> finite_array(const json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number(), what + " must hold numbers");
    out.push_back(v.get<double>());
    require(std::isfinite(out.back()), what + " holds a non-finite value");
  }
  return out;
}

}  // namespace

MulticlassSvmModel model_from_json(const json& j) {
  try {
    require(j.is_object(), "document must be an object");
    require(j.value("format", "") == "salesig-model", "format tag missing");
    require(j.contains("version") && j.at("version").is_number_integer(), "version missing");
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw PersistenceError("unsupported model version " + std::to_string(version) +
                             " (expected " + std::to_string(kModelVersion) + ")");
    }

    MulticlassSvmModel m;
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    require(m.class_names.size() >= 2, "at least two classes required");

    const auto& sc = j.at("scaler");
    m.scaler.means = finite_array(sc.at("means"), "scaler.means");
    m.scaler.sds = finite_array(sc.at("sds"), "scaler.sds");
    for (const auto& f : sc.at("flags")) {
      require(f.is_boolean(), "scaler.flags must hold booleans");
      m.scaler.substituted.push_back(f.get<bool>());
    }
    const std::size_t dims = m.scaler.means.size();
    require(m.scaler.sds.size() == dims && m.scaler.substituted.size() == dims,
            "scaler arrays differ in length");
    for (double sd : m.scaler.sds) require(sd > 0.0, "scaler sd must be positive");

    const auto& bins = j.at("binaries");
    require(bins.is_array() && bins.size() == m.class_names.size(),
            "one binary model per class required");
    for (const auto& b : bins) {
      BinarySvmModel bm;
      const auto& k = b.at("kernel");
      bm.kernel.kind = parse_kernel_kind(k.at("kind").get<std::string>());
      bm.kernel.gamma = k.at("gamma").get<double>();
      bm.kernel.degree = k.at("degree").get<int>();
      bm.kernel.coef0 = k.at("coef0").get<double>();
      bm.kernel.validate();
      bm.c = b.at("c").get<double>();
      require(bm.c > 0.0, "c must be positive");
      if (b.contains("class_weights")) {
        bm.positive_weight = b.at("class_weights").at("positive").get<double>();
        bm.negative_weight = b.at("class_weights").at("negative").get<double>();
      }
      bm.bias = b.at("bias").get<double>();
      require(std::isfinite(bm.bias), "bias must be finite");
      bm.dual_coefs = finite_array(b.at("dual_coefs"), "dual_coefs");
      const auto& svs = b.at("support_vectors");
      require(svs.is_array() && svs.size() == bm.dual_coefs.size(),
              "support vector count must match dual coefficient count");
      for (const auto& sv : svs) {
        bm.support_vectors.push_back(finite_array(sv, "support vector"));
        require(bm.support_vectors.back().size() == dims, "support vector dimension mismatch");
      }
      m.binaries.push_back(std::move(bm));
    }
    if (j.contains("bands")) {
      m.bands = band_spec_from_json(j.at("bands"));
      require(m.bands->names() == m.class_names, "bands do not match class_names");
    }
    return m;
  } catch (const json::exception& e) {
    throw PersistenceError(std::string("malformed model document: ") + e.what());
  } catch (const ConfigError& e) {
    throw PersistenceError(std::string("invalid model configuration: ") + e.what());
  }
}

void save_model(const MulticlassSvmModel& m, const std::string& path) {
  write_file(path, model_to_json(m).dump(1) + "\n");
}

MulticlassSvmModel load_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw PersistenceError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace salesig::svm
