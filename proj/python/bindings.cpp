// Copyright 2026 The sobolev-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sobolev/certify.hpp"
#include "sobolev/doi.hpp"
#include "sobolev/entropy.hpp"
#include "sobolev/experiment.hpp"
#include "sobolev/models.hpp"
#include "sobolev/suite.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sobolev;

namespace {

// Dicts cross the boundary as JSON text; the Python side does the dumps/loads.
json parse(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

AlgebraElement as_element(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw ContractError("expected a nonempty square matrix");
    return AlgebraElement(matrix_algebra(static_cast<int>(m.rows())), {m});
}

}  // namespace

PYBIND11_MODULE(_sobolev_lab, m) {
    m.doc() = "Sobolev-constant laboratory: native core";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.def("format_double", &format_double);

    m.def("canonical_model", [](const std::string& spec) { return canonical_model_spec(parse(spec)).dump(); });

    m.def("spectral_gap", [](const std::string& spec, int k) {
        return spectral_gap(ampliate_generator(build_model(parse(spec)), k));
    }, py::arg("model"), py::arg("k") = 1);

    m.def("estimate", [](const std::string& model, const std::string& f, int k, int restarts, int iters,
                         std::uint64_t seed) {
        Budget b{restarts, iters, seed};
        py::gil_scoped_release release;
        return to_json(estimate_constant(build_model(parse(model)), build_function(parse(f)), k, b)).dump();
    }, py::arg("model"), py::arg("f"), py::arg("k") = 1, py::arg("restarts") = 32, py::arg("iters") = 2000,
       py::arg("seed") = 0);

    m.def("check_ids", [](bool default_only) {
        std::vector<std::string> ids;
        for (const auto& s : check_registry())
            if (!default_only || s.in_default_suite) ids.push_back(s.id);
        return ids;
    }, py::arg("default_only") = false);

    m.def("run_check", [](const std::string& id, std::uint64_t seed, int trials) {
        CheckOptions o;
        o.seed = seed;
        o.trials = trials;
        py::gil_scoped_release release;
        return to_json(run_check(id, o)).dump();
    }, py::arg("id"), py::arg("seed") = 0, py::arg("trials") = 0);

    m.def("run", [](const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_dir,
                    const std::vector<std::string>& checks) {
        RunResult r;
        {
            py::gil_scoped_release release;
            r = run_cli(parse(config), seed, out_dir, checks);
        }
        return py::make_tuple(r.exit_code, r.report.dump(), r.csv, r.summary);
    }, py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = "",
       py::arg("checks") = std::vector<std::string>{});

    m.def("bregman", [](const std::string& f, const Matrix& rho, const Matrix& sigma, double eps) {
        return bregman(build_function(parse(f)), as_element(rho), as_element(sigma), eps).value;
    }, py::arg("f"), py::arg("rho"), py::arg("sigma"), py::arg("epsilon") = 0.0);

    m.def("schur_q", [](const std::string& kernel, const Matrix& rho, const Matrix& a) {
        auto r = as_element(rho);
        return Matrix(schur_q(build_kernel(parse(kernel)), eigh(r.hermitian_part()), as_element(a)).block(0));
    }, py::arg("kernel"), py::arg("rho"), py::arg("a"));
}
