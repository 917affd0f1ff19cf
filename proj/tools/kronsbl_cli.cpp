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

// kronsbl command-line front end.
//
//   kronsbl estimate --config cfg.ini [--out file.csv] [--seed S]
//   kronsbl sweep    --config cfg.ini --out file.csv [--seed S] [--trials T]
//   kronsbl selftest
//
// Exit codes: 0 success, 1 validation error (bad flags or config),
// 2 runtime failure (numerical failure, unwritable output, selftest
// failure).

#include "kronsbl/config.hpp"
#include "kronsbl/selftest.hpp"
#include "kronsbl/sweep.hpp"
#include "kronsbl/types.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_runtime = 2;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fmt(const char *format, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, x);
    return buf;
}

void print_summary(const kronsbl::SweepResult &result)
{
    std::printf("%-14s %-10s %-13s %-9s %-13s %-8s %s\n", kronsbl::to_string(result.variable).c_str(),
                "estimator", "nmse", "nmse_db", "stderr", "iters", "trials");
    for (const kronsbl::SweepCell &cell : result.cells)
    {
        const double db = cell.nmse_mean > 0.0 ? 10.0 * std::log10(cell.nmse_mean)
                                               : -std::numeric_limits<double>::infinity();
        std::printf("%-14s %-10s %-13s %-9s %-13s %-8s %d\n", fmt("%.6g", cell.value).c_str(),
                    kronsbl::to_string(cell.estimator).c_str(), fmt("%.6g", cell.nmse_mean).c_str(),
                    fmt("%.2f", db).c_str(), fmt("%.3g", cell.nmse_stderr).c_str(),
                    fmt("%.1f", cell.iters_mean).c_str(), cell.trials);
        if (cell.failures > 0)
            std::fprintf(stderr, "warning: %d trial(s) failed for %s at %s = %s and were excluded\n",
                         cell.failures, kronsbl::to_string(cell.estimator).c_str(),
                         kronsbl::to_string(result.variable).c_str(),
                         fmt("%.6g", cell.value).c_str());
    }
}

struct CommonOptions
{
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool verbose = false;
};

int run_experiment(const CommonOptions &opts, bool is_sweep)
{
    kronsbl::ParsedConfig config = kronsbl::parse_config(read_file(opts.config_path));
    kronsbl::SweepSpec &spec = config.spec;

    if (is_sweep && !config.has_sweep)
        throw std::invalid_argument("config has no [sweep] section; add one or use `estimate`");
    if (!is_sweep)
    {
        // A single estimation run regardless of any [sweep] section: one
        // trial at the scenario's own operating point.
        spec.variable = kronsbl::SweepVariable::snr_db;
        spec.values = {spec.base.snr_db};
        spec.num_trials = 1;
    }
    if (opts.seed)
        spec.base.seed = *opts.seed;
    if (opts.trials)
        spec.num_trials = *opts.trials;
    spec.validate();

    if (opts.verbose)
        std::cerr << "-- effective configuration --\n"
                  << kronsbl::serialize_config(config) << "-----------------------------\n";

    const kronsbl::SweepResult result = kronsbl::run_sweep(spec);
    if (!opts.out_path.empty())
    {
        kronsbl::emit_csv(result, opts.out_path);
        std::cout << "wrote " << opts.out_path << "\n";
    }
    print_summary(result);
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sparse Bayesian channel estimation over Kronecker-structured dictionaries"};
    app.set_version_flag("--version", std::string("kronsbl ") + kronsbl::version_string);
    app.require_subcommand(1);

    CommonOptions est_opts, sweep_opts;

    CLI::App *estimate = app.add_subcommand("estimate", "run one estimation at the configured "
                                                        "operating point and print a summary");
    estimate->add_option("--config", est_opts.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    estimate->add_option("--out", est_opts.out_path, "optional CSV output path");
    estimate->add_option("--seed", est_opts.seed, "override scenario.seed");
    estimate->add_flag("-v,--verbose", est_opts.verbose, "print the effective configuration");

    CLI::App *sweep = app.add_subcommand("sweep", "run the configured Monte Carlo sweep and "
                                                  "write a CSV");
    sweep->add_option("--config", sweep_opts.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_opts.out_path, "CSV output path")->required();
    sweep->add_option("--seed", sweep_opts.seed, "override scenario.seed");
    sweep->add_option("--trials", sweep_opts.trials, "override sweep.trials")
        ->check(CLI::PositiveNumber);
    sweep->add_flag("-v,--verbose", sweep_opts.verbose, "print the effective configuration");

    CLI::App *selftest_cmd =
        app.add_subcommand("selftest", "run the built-in invariant suite and report pass/fail");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e); // prints help, exits 0
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }

    try
    {
        if (selftest_cmd->parsed())
        {
            const bool ok = kronsbl::selftest(std::cout);
            std::cout << (ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
            return ok ? exit_ok : exit_runtime;
        }
        if (estimate->parsed())
            return run_experiment(est_opts, /*is_sweep=*/false);
        return run_experiment(sweep_opts, /*is_sweep=*/true);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    catch (const std::exception &e)
    {
        std::cerr << "runtime error: " << e.what() << "\n";
        return exit_runtime;
    }
}
