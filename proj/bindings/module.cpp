// SPDX-License-Identifier: Apache-2.0
//
// kronsbl — sparse Bayesian estimators over Kronecker-structured dictionaries
// Copyright (C) 2026 kronsbl contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Python bindings. Complex matrices/vectors cross the boundary as numpy
// arrays (complex128); all heavy lifting stays in the C++ core.

#include "kronsbl/channel.hpp"
#include "kronsbl/config.hpp"
#include "kronsbl/dictionary.hpp"
#include "kronsbl/estimators.hpp"
#include "kronsbl/gram.hpp"
#include "kronsbl/rng.hpp"
#include "kronsbl/selftest.hpp"
#include "kronsbl/sweep.hpp"
#include "kronsbl/types.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

namespace py = pybind11;
using namespace kronsbl;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "sparse Bayesian estimators over Kronecker-structured dictionaries";
    m.attr("__version__") = version_string;

    // --- RNG -------------------------------------------------------------
    py::class_<Rng>(m, "Rng", "deterministic splittable random stream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static(
            "derive",
            [](std::uint64_t seed, const std::vector<std::uint64_t> &path) {
                return Rng::derive(seed, path);
            },
            py::arg("seed"), py::arg("path"))
        .def("raw", &Rng::raw)
        .def("uniform", py::overload_cast<>(&Rng::uniform))
        .def("uniform", py::overload_cast<double, double>(&Rng::uniform), py::arg("lo"),
             py::arg("hi"))
        .def("gaussian", &Rng::gaussian)
        .def("cgaussian", &Rng::cgaussian, py::arg("variance"));

    // --- dictionary -------------------------------------------------------
    py::class_<KronDictionary>(m, "KronDictionary",
                               "implicit measurement operator: pilot-transpose Kronecker "
                               "transform")
        .def(py::init<CMat, CMat>(), py::arg("pilot"), py::arg("transform"))
        .def_property_readonly("num_users", &KronDictionary::num_users)
        .def_property_readonly("pilot_length", &KronDictionary::pilot_length)
        .def_property_readonly("num_antennas", &KronDictionary::num_antennas)
        .def_property_readonly("transform_size", &KronDictionary::transform_size)
        .def_property_readonly("rows", &KronDictionary::rows)
        .def_property_readonly("cols", &KronDictionary::cols)
        .def_property_readonly("pilot", &KronDictionary::pilot,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("transform", &KronDictionary::transform,
                               py::return_value_policy::reference_internal)
        .def("apply", &KronDictionary::apply, py::arg("x"))
        .def("apply_adjoint", &KronDictionary::apply_adjoint, py::arg("y"))
        .def("dense", &KronDictionary::dense);

    // --- channel simulation ------------------------------------------------
    py::class_<ChannelScenario>(m, "ChannelScenario")
        .def(py::init<>())
        .def_readwrite("num_antennas", &ChannelScenario::num_antennas)
        .def_readwrite("num_users", &ChannelScenario::num_users)
        .def_readwrite("pilot_length", &ChannelScenario::pilot_length)
        .def_readwrite("transform_size", &ChannelScenario::transform_size)
        .def_readwrite("snr_db", &ChannelScenario::snr_db)
        .def_readwrite("num_scatterers", &ChannelScenario::num_scatterers)
        .def_readwrite("carrier_freq", &ChannelScenario::carrier_freq)
        .def_readwrite("range_min", &ChannelScenario::range_min)
        .def_readwrite("range_max", &ChannelScenario::range_max)
        .def_readwrite("angular_spread", &ChannelScenario::angular_spread)
        .def_readwrite("seed", &ChannelScenario::seed)
        .def("q", &ChannelScenario::q)
        .def("validate", &ChannelScenario::validate);

    py::class_<Scatterer>(m, "Scatterer")
        .def_readonly("range", &Scatterer::range)
        .def_readonly("angle", &Scatterer::angle)
        .def_readonly("gain", &Scatterer::gain);

    py::class_<Observation>(m, "Observation")
        .def_readonly("Z", &Observation::Z)
        .def_readonly("z", &Observation::z);

    m.def("dft_pilot", &dft_pilot, py::arg("K"), py::arg("N"));
    m.def("dft_transform", &dft_transform, py::arg("M"));
    m.def("array_response", &array_response, py::arg("M"), py::arg("angle"));
    m.def("noise_variance_from_snr_db", &noise_variance_from_snr_db, py::arg("snr_db"));
    m.def("generate_channel", &generate_channel, py::arg("scenario"), py::arg("rng"),
          "returns (H, per-user scatterer lists)");
    m.def("observe", &observe, py::arg("H"), py::arg("pilot"), py::arg("snr_db"), py::arg("rng"));
    m.def("reconstruct_channel", &reconstruct_channel, py::arg("u_hat"), py::arg("transform"),
          py::arg("num_users"));
    m.def("make_dictionary", &make_dictionary, py::arg("scenario"));

    // --- estimators ---------------------------------------------------------
    py::class_<SblHyper>(m, "SblHyper")
        .def(py::init<>())
        .def_readwrite("alpha", &SblHyper::alpha)
        .def_readwrite("beta", &SblHyper::beta);

    py::class_<ESblHyper>(m, "ESblHyper")
        .def(py::init<>())
        .def_readwrite("nu", &ESblHyper::nu)
        .def_readwrite("theta", &ESblHyper::theta)
        .def_readwrite("phi", &ESblHyper::phi);

    py::class_<ConvergencePolicy>(m, "ConvergencePolicy")
        .def(py::init<>())
        .def_readwrite("tol", &ConvergencePolicy::tol)
        .def_readwrite("max_iter", &ConvergencePolicy::max_iter)
        .def_readwrite("record_objective", &ConvergencePolicy::record_objective);

    py::class_<PosteriorStats>(m, "PosteriorStats")
        .def_readonly("mean", &PosteriorStats::mean)
        .def_readonly("cov_diag", &PosteriorStats::cov_diag);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("u_hat", &EstimateReport::u_hat)
        .def_readonly("iterations", &EstimateReport::iterations)
        .def_readonly("objective_trace", &EstimateReport::objective_trace)
        .def_readonly("converged", &EstimateReport::converged)
        .def_readonly("wall_time", &EstimateReport::wall_time);

    m.def("sbl_posterior_stats", &sbl_posterior_stats, py::arg("dict"), py::arg("weights"),
          py::arg("sigma2"), py::arg("z"));
    m.def("sbl_update_weights", &sbl_update_weights, py::arg("stats"));
    m.def("eval_sbl_marginal_objective", &eval_sbl_marginal_objective, py::arg("dict"),
          py::arg("weights"), py::arg("sigma2"), py::arg("z"), py::arg("hyper") = SblHyper{});
    m.def("run_sbl", &run_sbl, py::arg("dict"), py::arg("z"), py::arg("sigma2"),
          py::arg("hyper") = SblHyper{}, py::arg("policy") = ConvergencePolicy{});

    m.def("esbl_posterior_stats", &esbl_posterior_stats, py::arg("dict"), py::arg("weights"),
          py::arg("scales"), py::arg("sigma2"), py::arg("z"));
    m.def("esbl_update_weights_scales", &esbl_update_weights_scales, py::arg("stats"),
          py::arg("scales"), py::arg("hyper"));
    m.def("eval_esbl_marginal_objective", &eval_esbl_marginal_objective, py::arg("dict"),
          py::arg("weights"), py::arg("scales"), py::arg("sigma2"), py::arg("z"),
          py::arg("hyper"));
    m.def("run_esbl", &run_esbl, py::arg("dict"), py::arg("z"), py::arg("sigma2"),
          py::arg("hyper") = ESblHyper{}, py::arg("policy") = ConvergencePolicy{});

    m.def("mesbl_update_u", &mesbl_update_u, py::arg("dict"), py::arg("weights"),
          py::arg("scales"), py::arg("sigma2"), py::arg("z"));
    m.def("mesbl_update_w", &mesbl_update_w, py::arg("u"), py::arg("scales"), py::arg("hyper"));
    m.def("mesbl_update_tau", &mesbl_update_tau, py::arg("u"), py::arg("weights"),
          py::arg("hyper"));
    m.def("eval_mesbl_joint_objective", &eval_mesbl_joint_objective, py::arg("dict"),
          py::arg("u"), py::arg("weights"), py::arg("scales"), py::arg("sigma2"), py::arg("z"),
          py::arg("hyper"));
    m.def("run_mesbl", &run_mesbl, py::arg("dict"), py::arg("z"), py::arg("sigma2"),
          py::arg("hyper") = ESblHyper{}, py::arg("policy") = ConvergencePolicy{});

    m.def("run_least_squares", &run_least_squares, py::arg("dict"), py::arg("z"),
          py::arg("sigma2"));

    m.def("gauss_logdet_quadform", &gauss_logdet_quadform, py::arg("dict"),
          py::arg("effective_weights"), py::arg("sigma2"), py::arg("z"),
          "returns (logdet V, z^H V^-1 z)");

    // --- experiments ----------------------------------------------------------
    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("snr_db", SweepVariable::snr_db)
        .value("pilot_length", SweepVariable::pilot_length)
        .value("num_antennas", SweepVariable::num_antennas)
        .value("num_scatterers", SweepVariable::num_scatterers);

    py::enum_<EstimatorKind>(m, "EstimatorKind")
        .value("esbl", EstimatorKind::esbl)
        .value("ls", EstimatorKind::ls)
        .value("mesbl", EstimatorKind::mesbl)
        .value("sbl", EstimatorKind::sbl);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("variable", &SweepSpec::variable)
        .def_readwrite("values", &SweepSpec::values)
        .def_readwrite("estimators", &SweepSpec::estimators)
        .def_readwrite("num_trials", &SweepSpec::num_trials)
        .def_readwrite("sbl_hyper", &SweepSpec::sbl_hyper)
        .def_readwrite("esbl_hyper", &SweepSpec::esbl_hyper)
        .def_readwrite("policy", &SweepSpec::policy)
        .def_readwrite("emit_walltime", &SweepSpec::emit_walltime)
        .def_readwrite("nmse_mean_of_ratios", &SweepSpec::nmse_mean_of_ratios)
        .def("validate", &SweepSpec::validate);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("value", &SweepCell::value)
        .def_readonly("estimator", &SweepCell::estimator)
        .def_readonly("nmse_mean", &SweepCell::nmse_mean)
        .def_readonly("nmse_stderr", &SweepCell::nmse_stderr)
        .def_readonly("iters_mean", &SweepCell::iters_mean)
        .def_readonly("walltime_mean", &SweepCell::walltime_mean)
        .def_readonly("trials", &SweepCell::trials)
        .def_readonly("failures", &SweepCell::failures);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("variable", &SweepResult::variable)
        .def_readonly("cells", &SweepResult::cells)
        .def_readonly("emit_walltime", &SweepResult::emit_walltime);

    m.def("nmse", &nmse, py::arg("estimates"), py::arg("truths"));
    m.def("run_sweep", &run_sweep, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("format_csv", &format_csv, py::arg("result"));
    m.def("parse_csv", &parse_csv, py::arg("text"));
    m.def("emit_csv", &emit_csv, py::arg("result"), py::arg("path"));

    // --- config / selftest -------------------------------------------------
    py::class_<ParsedConfig>(m, "ParsedConfig")
        .def_readwrite("spec", &ParsedConfig::spec)
        .def_readwrite("has_sweep", &ParsedConfig::has_sweep);

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("serialize_config", &serialize_config, py::arg("config"));

    m.def(
        "selftest",
        []() {
            std::ostringstream out;
            const bool ok = selftest(out);
            return py::make_tuple(ok, out.str());
        },
        "runs the built-in invariant suite; returns (ok, report_text)");
}
