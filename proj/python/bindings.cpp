// Copyright 2026 The rsmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rsm/budget.hpp"
#include "rsm/canonical.hpp"
#include "rsm/data_io.hpp"
#include "rsm/error.hpp"
#include "rsm/linalg.hpp"
#include "rsm/regions.hpp"
#include "rsm/regression.hpp"
#include "rsm/report.hpp"
#include "rsm/serialize.hpp"

namespace py = pybind11;

namespace {

py::object to_py(const rsm::io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

rsm::regression::QuadraticModel load_model(const std::string& text) {
  return rsm::io::model_from_json(rsm::io::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rsmkit native core";

  py::register_exception<rsm::Error>(m, "Error", PyExc_RuntimeError);

  py::class_<rsm::linalg::EigenSystem>(m, "EigenSystem")
      .def_readonly("eigenvalues", &rsm::linalg::EigenSystem::eigenvalues)
      .def_readonly("eigenvectors", &rsm::linalg::EigenSystem::eigenvectors)
      .def_readonly("sweeps", &rsm::linalg::EigenSystem::sweeps);

  m.def(
      "jacobi_eigen",
      [](const Eigen::MatrixXd& a, double tol) {
        return rsm::linalg::jacobi_eigen(rsm::linalg::SymmetricMatrix(a), tol);
      },
      py::arg("matrix"), py::arg("zero_tolerance") = rsm::linalg::kDefaultZeroTolerance);

  py::class_<rsm::regression::QuadraticModel>(m, "QuadraticModel")
      .def_property_readonly("names", &rsm::regression::QuadraticModel::names)
      .def_property_readonly("intercept", &rsm::regression::QuadraticModel::intercept)
      .def_property_readonly("linear", &rsm::regression::QuadraticModel::linear)
      .def_property_readonly("interaction", &rsm::regression::QuadraticModel::interaction)
      .def("evaluate", [](const rsm::regression::QuadraticModel& q, const Eigen::VectorXd& x) {
        return q.evaluate(x);
      })
      .def("to_json", [](const rsm::regression::QuadraticModel& q) {
        return to_py(rsm::io::model_to_json(q));
      });

  m.def("load_model", &load_model, py::arg("text"));

  py::class_<rsm::canonical::CanonicalModel>(m, "CanonicalModel")
      .def_property_readonly("model", &rsm::canonical::CanonicalModel::model)
      .def_property_readonly("eigenvalues", &rsm::canonical::CanonicalModel::eigenvalues)
      .def_property_readonly("eigenvectors", &rsm::canonical::CanonicalModel::eigenvectors)
      .def_property_readonly("shift", &rsm::canonical::CanonicalModel::shift)
      .def_property_readonly("stationary_point",
                             &rsm::canonical::CanonicalModel::stationary_point)
      .def_property_readonly("shifted_intercept",
                             &rsm::canonical::CanonicalModel::shifted_intercept)
      .def_property_readonly("null_directions",
                             [](const rsm::canonical::CanonicalModel& cm) {
                               return std::vector<Eigen::Index>(cm.null_directions());
                             })
      .def_property_readonly("null_coefficients",
                             &rsm::canonical::CanonicalModel::null_coefficients)
      .def_property_readonly("classification",
                             [](const rsm::canonical::CanonicalModel& cm) {
                               return rsm::canonical::to_string(cm.classification());
                             })
      .def("to_canonical",
           [](const rsm::canonical::CanonicalModel& cm, const Eigen::VectorXd& x) {
             return rsm::canonical::to_canonical(cm, x).z;
           })
      .def("evaluate_canonical", [](const rsm::canonical::CanonicalModel& cm,
                                    const Eigen::VectorXd& z) {
        return rsm::canonical::evaluate_canonical(cm, z);
      })
      .def("summary", &rsm::report::canonical_summary)
      .def("to_json", [](const rsm::canonical::CanonicalModel& cm) {
        return to_py(rsm::io::canonical_to_json(cm));
      });

  m.def("decompose", &rsm::canonical::decompose, py::arg("model"),
        py::arg("zero_tolerance") = rsm::linalg::kDefaultZeroTolerance);

  m.def(
      "regions",
      [](const rsm::canonical::CanonicalModel& cm, double threshold) {
        py::list out;
        for (const auto& r : rsm::regions::classify_all(cm, threshold))
          out.append(to_py(rsm::io::region_to_json(r)));
        return out;
      },
      py::arg("canonical"), py::arg("threshold"));

  m.def(
      "region_points",
      [](const rsm::canonical::CanonicalModel& cm, Eigen::Index i, Eigen::Index j,
         double threshold) {
        const auto r = rsm::regions::classify_pair(cm, i - 1, j - 1, threshold);
        const auto pts =
            rsm::regions::sample_region(r, {}, rsm::regions::default_window(r));
        Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), 2);
        for (std::size_t k = 0; k < pts.size(); ++k)
          out.row(static_cast<Eigen::Index>(k)) = pts[k].transpose();
        return out;
      },
      py::arg("canonical"), py::arg("i"), py::arg("j"), py::arg("threshold"));

  m.def(
      "magnitude_report",
      [](const rsm::canonical::CanonicalModel& cm, double threshold, double factor) {
        return to_py(rsm::io::magnitude_to_json(rsm::budget::magnitude_report(cm, threshold, factor)));
      },
      py::arg("canonical"), py::arg("threshold"),
      py::arg("free_factor") = rsm::budget::kDefaultFreeFactor);

  m.def(
      "crossover",
      [](const rsm::canonical::CanonicalModel& cm, std::optional<double> ref) {
        return to_py(rsm::io::crossover_to_json(rsm::budget::crossover_threshold(cm, ref)));
      },
      py::arg("canonical"), py::arg("reference_level") = py::none());

  m.def(
      "trade",
      [](const rsm::canonical::CanonicalModel& cm, double threshold, std::size_t pair,
         const std::string& factor, Eigen::Index drive, double delta) {
        const auto uv = rsm::budget::uv_system(cm);
        rsm::budget::PinSpec pin{pair - 1, factor == "v" ? rsm::budget::Factor::kV
                                                        : rsm::budget::Factor::kU};
        return to_py(rsm::io::trade_to_json(
            rsm::budget::trade_analysis(cm, uv, threshold, pin, drive - 1, delta)));
      },
      py::arg("canonical"), py::arg("threshold"), py::arg("pair") = 1,
      py::arg("factor") = "u", py::arg("drive") = 3, py::arg("delta") = 1000.0);

  m.def(
      "box_cox",
      [](const std::vector<double>& y, double exponent, bool shifted) {
        rsm::data::TransformSpec t{exponent,
                                   shifted ? rsm::data::BoxCoxConvention::kShiftedPower
                                           : rsm::data::BoxCoxConvention::kPower,
                                   true};
        return rsm::data::box_cox(y, t);
      },
      py::arg("series"), py::arg("exponent"), py::arg("shifted") = false);

  m.def(
      "normality_test",
      [](const std::vector<double>& y, double alpha) {
        return to_py(rsm::io::normality_to_json(rsm::data::normality_test(y, alpha)));
      },
      py::arg("series"), py::arg("alpha") = 0.05);
}
