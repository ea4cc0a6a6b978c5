// JSON documents cross the boundary as strings; the Python side decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "json.hpp"
#include "salesig/catalog.hpp"
#include "salesig/errors.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/report.hpp"
#include "salesig/significance.hpp"
#include "salesig/svm/model_io.hpp"
#include "salesig/svm/multiclass.hpp"
#include "salesig/synth.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using namespace salesig;

PriceBandSpec bands_from(const std::optional<std::string>& text) {
  return text ? band_spec_from_json(json::parse(*text)) : default_band_spec();
}

std::string band_spec(const std::optional<std::string>& bands) {
  return band_spec_to_json(bands_from(bands)).dump();
}

std::string assign(double price, const std::optional<std::string>& bands) {
  return assign_band(bands_from(bands), price);
}

std::string clean_report(const std::string& catalog) {
  return clean_report_to_json(clean(load_catalog_csv(catalog)).report).dump();
}

std::string stats(const std::string& catalog, const std::optional<std::string>& bands) {
  const auto spec = bands_from(bands);
  const auto cleaned = clean(load_catalog_csv(catalog));
  auto j = stats_to_json(spec, band_stats(spec, cleaned.dataset));
  j["clean"] = clean_report_to_json(cleaned.report);
  return j.dump();
}

std::string train(const std::string& catalog, const std::string& model_path,
                  const std::string& kernel, double c, double train_fraction,
                  std::uint64_t seed) {
  const auto spec = default_band_spec();
  svm::TrainOptions opts;
  opts.kernel.kind = svm::parse_kernel_kind(kernel);
  opts.c = c;
  const auto cleaned = clean(load_catalog_csv(catalog));
  const auto split = stratified_split(cleaned.dataset, spec, train_fraction, seed);
  const auto model = svm::train_multiclass(split.train, spec, opts);
  svm::save_model(model, model_path);
  return json{{"train_size", split.train.size()},
              {"holdout_size", split.test.size()},
              {"train_accuracy", svm::accuracy(model, spec, split.train)},
              {"holdout_accuracy", svm::accuracy(model, spec, split.test)}}
      .dump();
}

std::string analyze(const std::string& model_path, const std::string& sale,
                    const std::string& catalog, double k) {
  const auto model = svm::load_model(model_path);
  const auto spec = model.bands ? *model.bands : default_band_spec();
  SignificancePolicy policy;
  policy.k = k;
  policy.validate();
  const auto cleaned = clean(load_catalog_csv(catalog));
  const auto st = band_stats(spec, cleaned.dataset);
  const auto sale_ds = clean(load_catalog_csv(sale)).dataset;
  auto report = build_report(spec, st, policy, classify_dataset(policy, spec, st, model, sale_ds));
  report.clean = cleaned.report;
  return report_to_json(report).dump();
}

py::tuple synth_csv(std::uint64_t seed) {
  SynthOptions opts;
  opts.seed = seed;
  const auto out = synthesize(opts);
  return py::make_tuple(format_catalog_csv(out.nonsale), format_catalog_csv(out.sale),
                        format_catalog_csv(out.raw));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "salesig core bindings";

  static py::handle base = py::exception<Error>(m, "SalesigError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(base)(e.what());
      err.attr("exit_code") = exit_code_for(e.kind());
      PyErr_SetObject(base.ptr(), err.ptr());
    } catch (const json::exception& e) {
      py::object err = py::reinterpret_borrow<py::object>(base)(e.what());
      err.attr("exit_code") = 2;
      PyErr_SetObject(base.ptr(), err.ptr());
    }
  });

  m.def("band_spec", &band_spec, py::arg("bands") = py::none());
  m.def("assign_band", &assign, py::arg("price"), py::arg("bands") = py::none());
  m.def("fold_index", &fold_index, py::arg("discount"), py::arg("width"));
  m.def("clean_report", &clean_report, py::arg("catalog"));
  m.def("stats", &stats, py::arg("catalog"), py::arg("bands") = py::none());
  m.def("train", &train, py::arg("catalog"), py::arg("model"), py::arg("kernel") = "rbf",
        py::arg("c") = 1.0, py::arg("train_fraction") = 0.8, py::arg("seed") = 42,
        py::call_guard<py::gil_scoped_release>());
  m.def("analyze", &analyze, py::arg("model"), py::arg("sale"), py::arg("catalog"),
        py::arg("k") = 0.5, py::call_guard<py::gil_scoped_release>());
  m.def("synth_csv", &synth_csv, py::arg("seed") = 42);
}
