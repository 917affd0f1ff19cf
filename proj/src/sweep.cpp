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

#include "kronsbl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kronsbl
{

namespace
{

// Numerical stand-in for a noiseless observation: the posterior covariance
// needs σ² > 0, and this is far below any interesting signal scale.
constexpr double noiseless_sigma2 = 1e-10;

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

ChannelScenario scenario_at(const ChannelScenario &base, SweepVariable variable, double value)
{
    ChannelScenario s = base;
    auto as_count = [&](const char *what) {
        const double rounded = std::round(value);
        if (!std::isfinite(value) || std::abs(value - rounded) > 1e-9 || rounded < 1.0)
            throw std::invalid_argument(std::string("sweep value for ") + what +
                                        " must be a positive integer, got " + fmt(value));
        return static_cast<int>(rounded);
    };
    switch (variable)
    {
    case SweepVariable::snr_db:
        s.snr_db = value;
        break;
    case SweepVariable::pilot_length:
        s.pilot_length = as_count("pilot_length");
        break;
    case SweepVariable::num_antennas:
        s.num_antennas = as_count("num_antennas");
        break;
    case SweepVariable::num_scatterers:
        s.num_scatterers = as_count("num_scatterers");
        break;
    }
    s.validate();
    return s;
}

EstimateReport run_one(EstimatorKind kind, const KronDictionary &dict, const CVec &z,
                       double sigma2, const SweepSpec &spec)
{
    switch (kind)
    {
    case EstimatorKind::sbl:
        return run_sbl(dict, z, sigma2, spec.sbl_hyper, spec.policy);
    case EstimatorKind::esbl:
        return run_esbl(dict, z, sigma2, spec.esbl_hyper, spec.policy);
    case EstimatorKind::mesbl:
        return run_mesbl(dict, z, sigma2, spec.esbl_hyper, spec.policy);
    case EstimatorKind::ls:
        return run_least_squares(dict, z, sigma2);
    }
    throw std::logic_error("unreachable estimator kind");
}

} // namespace

std::string to_string(SweepVariable variable)
{
    switch (variable)
    {
    case SweepVariable::snr_db:
        return "snr_db";
    case SweepVariable::pilot_length:
        return "pilot_length";
    case SweepVariable::num_antennas:
        return "num_antennas";
    case SweepVariable::num_scatterers:
        return "num_scatterers";
    }
    throw std::logic_error("unreachable sweep variable");
}

std::string to_string(EstimatorKind kind)
{
    switch (kind)
    {
    case EstimatorKind::esbl:
        return "esbl";
    case EstimatorKind::ls:
        return "ls";
    case EstimatorKind::mesbl:
        return "mesbl";
    case EstimatorKind::sbl:
        return "sbl";
    }
    throw std::logic_error("unreachable estimator kind");
}

SweepVariable sweep_variable_from_name(const std::string &name)
{
    for (auto v : {SweepVariable::snr_db, SweepVariable::pilot_length, SweepVariable::num_antennas,
                   SweepVariable::num_scatterers})
        if (to_string(v) == name)
            return v;
    throw std::invalid_argument("unknown sweep variable \"" + name +
                                "\" (expected snr_db, pilot_length, num_antennas, or "
                                "num_scatterers)");
}

EstimatorKind estimator_from_name(const std::string &name)
{
    for (auto e : {EstimatorKind::esbl, EstimatorKind::ls, EstimatorKind::mesbl, EstimatorKind::sbl})
        if (to_string(e) == name)
            return e;
    throw std::invalid_argument("unknown estimator \"" + name +
                                "\" (expected sbl, esbl, mesbl, or ls)");
}

void SweepSpec::validate() const
{
    base.validate();
    if (values.empty())
        throw std::invalid_argument("sweep values must be nonempty");
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (std::isnan(values[i]))
            throw std::invalid_argument("sweep values must not be NaN");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly increasing, got " +
                                        fmt(values[i - 1]) + " before " + fmt(values[i]));
    }
    if (num_trials < 1)
        throw std::invalid_argument("number of trials must be at least 1, got " +
                                    std::to_string(num_trials));
    std::vector<EstimatorKind> sorted = estimators;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("estimator list contains duplicates");
    // Integer sweep variables must have integral grids; checked up front so
    // the failure happens before any trials run.
    for (double v : values)
        (void)scenario_at(base, variable, v);
}

double nmse(const std::vector<CMat> &estimates, const std::vector<CMat> &truths)
{
    if (estimates.empty() || truths.empty())
        throw std::invalid_argument("NMSE batch must be nonempty");
    if (estimates.size() != truths.size())
        throw std::invalid_argument("NMSE batch size mismatch: " +
                                    std::to_string(estimates.size()) + " estimates vs " +
                                    std::to_string(truths.size()) + " references");
    double err = 0.0, energy = 0.0;
    for (std::size_t t = 0; t < truths.size(); ++t)
    {
        if (estimates[t].rows() != truths[t].rows() || estimates[t].cols() != truths[t].cols())
            throw std::invalid_argument("NMSE shape mismatch at batch index " + std::to_string(t));
        err += (estimates[t] - truths[t]).squaredNorm();
        energy += truths[t].squaredNorm();
    }
    if (!(energy > 0.0))
        throw std::invalid_argument("NMSE reference batch has zero energy");
    return err / energy;
}

SweepResult run_sweep(const SweepSpec &spec)
{
    spec.validate();

    // Canonical estimator order (alphabetical) regardless of the order in
    // the spec; every estimator sees the same observation per trial, so
    // the execution order carries no statistical meaning.
    std::vector<EstimatorKind> estimators = spec.estimators;
    std::sort(estimators.begin(), estimators.end());

    SweepResult result;
    result.variable = spec.variable;
    result.emit_walltime = spec.emit_walltime;

    struct Acc
    {
        std::vector<double> ratios; // per-trial ‖Ĥ−H‖²/‖H‖²
        double err_sum = 0.0;
        double energy_sum = 0.0;
        double iter_sum = 0.0;
        double time_sum = 0.0;
        int failures = 0;
    };

    for (std::size_t vi = 0; vi < spec.values.size(); ++vi)
    {
        const ChannelScenario scenario = scenario_at(spec.base, spec.variable, spec.values[vi]);
        const KronDictionary dict = make_dictionary(scenario);
        const double sigma2 = noise_variance_from_snr_db(scenario.snr_db);
        const double est_sigma2 = sigma2 > 0.0 ? sigma2 : noiseless_sigma2;

        std::vector<Acc> accs(estimators.size());
        for (int t = 0; t < spec.num_trials; ++t)
        {
            // The channel stream is keyed by trial alone so sweeps whose
            // variable doesn't enter channel generation (SNR, pilot
            // length) compare estimators on identical channels at every
            // sweep value. The noise stream is keyed by (value, trial):
            // observation shape and scale change across values.
            Rng channel_rng =
                Rng::derive(scenario.seed, {1, static_cast<std::uint64_t>(t)});
            auto [H, paths] = generate_channel(scenario, channel_rng);
            Rng noise_rng = Rng::derive(
                scenario.seed,
                {2, static_cast<std::uint64_t>(vi), static_cast<std::uint64_t>(t)});
            const Observation obs = observe(H, dict.pilot(), scenario.snr_db, noise_rng);
            const double energy = H.squaredNorm();

            for (std::size_t ei = 0; ei < estimators.size(); ++ei)
            {
                try
                {
                    const EstimateReport report =
                        run_one(estimators[ei], dict, obs.z, est_sigma2, spec);
                    const CMat H_hat =
                        reconstruct_channel(report.u_hat, dict.transform(), scenario.num_users);
                    const double err = (H_hat - H).squaredNorm();
                    Acc &acc = accs[ei];
                    acc.ratios.push_back(err / energy);
                    acc.err_sum += err;
                    acc.energy_sum += energy;
                    acc.iter_sum += static_cast<double>(report.iterations);
                    acc.time_sum += report.wall_time;
                }
                catch (const std::exception &)
                {
                    // Excluded from the aggregates but never silently: the
                    // cell's failure count records it and the CLI warns.
                    ++accs[ei].failures;
                }
            }
        }

        for (std::size_t ei = 0; ei < estimators.size(); ++ei)
        {
            const Acc &acc = accs[ei];
            SweepCell cell;
            cell.value = spec.values[vi];
            cell.estimator = estimators[ei];
            cell.trials = static_cast<int>(acc.ratios.size());
            cell.failures = acc.failures;
            if (cell.trials > 0)
            {
                const double n = static_cast<double>(cell.trials);
                cell.nmse_mean = spec.nmse_mean_of_ratios
                                     ? std::accumulate(acc.ratios.begin(), acc.ratios.end(), 0.0) / n
                                     : acc.err_sum / acc.energy_sum;
                // Standard error of the per-trial ratios around the
                // reported mean. Generated channels all carry identical
                // energy, so this is exact for both aggregation modes.
                if (cell.trials > 1)
                {
                    double ss = 0.0;
                    for (double r : acc.ratios)
                        ss += (r - cell.nmse_mean) * (r - cell.nmse_mean);
                    cell.nmse_stderr = std::sqrt(ss / (n * (n - 1.0)));
                }
                cell.iters_mean = acc.iter_sum / n;
                cell.walltime_mean = acc.time_sum / n;
            }
            result.cells.push_back(cell);
        }
    }
    return result;
}

std::string format_csv(const SweepResult &result)
{
    std::string out = "sweep_var,value,estimator,nmse_mean,nmse_stderr,iters_mean,walltime_mean,"
                      "trials\n";
    const std::string var = to_string(result.variable);
    for (const SweepCell &cell : result.cells)
    {
        out += var;
        out += ',';
        out += fmt(cell.value);
        out += ',';
        out += to_string(cell.estimator);
        out += ',';
        out += fmt(cell.nmse_mean);
        out += ',';
        out += fmt(cell.nmse_stderr);
        out += ',';
        out += fmt(cell.iters_mean);
        out += ',';
        out += fmt(result.emit_walltime ? cell.walltime_mean : 0.0);
        out += ',';
        out += std::to_string(cell.trials);
        out += '\n';
    }
    return out;
}

SweepResult parse_csv(const std::string &text)
{
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line))
        throw std::invalid_argument("CSV is empty");
    if (line == "sweep_var,value,estimator,nmse_mean,nmse_stderr,iters_mean,walltime_mean,trials\r")
        line.pop_back();
    if (line != "sweep_var,value,estimator,nmse_mean,nmse_stderr,iters_mean,walltime_mean,trials")
        throw std::invalid_argument("unexpected CSV header: \"" + line + "\"");

    SweepResult result;
    bool have_variable = false;
    int row = 1;
    while (std::getline(stream, line))
    {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 8)
            throw std::invalid_argument("CSV row " + std::to_string(row) + " has " +
                                        std::to_string(fields.size()) + " fields, expected 8");
        auto to_double = [&](const std::string &s, const char *what) {
            try
            {
                std::size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos != s.size())
                    throw std::invalid_argument(s);
                return v;
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("CSV row " + std::to_string(row) + ": cannot parse " +
                                            what + " \"" + s + "\"");
            }
        };

        const SweepVariable variable = sweep_variable_from_name(fields[0]);
        if (!have_variable)
        {
            result.variable = variable;
            have_variable = true;
        }
        else if (variable != result.variable)
            throw std::invalid_argument("CSV row " + std::to_string(row) +
                                        " changes the sweep variable");

        SweepCell cell;
        cell.value = to_double(fields[1], "value");
        cell.estimator = estimator_from_name(fields[2]);
        cell.nmse_mean = to_double(fields[3], "nmse_mean");
        cell.nmse_stderr = to_double(fields[4], "nmse_stderr");
        cell.iters_mean = to_double(fields[5], "iters_mean");
        cell.walltime_mean = to_double(fields[6], "walltime_mean");
        cell.trials = static_cast<int>(to_double(fields[7], "trials"));
        if (cell.walltime_mean != 0.0)
            result.emit_walltime = true;
        result.cells.push_back(cell);
    }
    return result;
}

void emit_csv(const SweepResult &result, const std::string &path)
{
    const std::string text = format_csv(result);
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open \"" + temp + "\" for writing");
        out << text;
        out.flush();
        if (!out)
        {
            out.close();
            std::error_code ec;
            std::filesystem::remove(temp, ec);
            throw std::runtime_error("failed writing CSV to \"" + temp + "\"");
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec)
    {
        std::error_code ec2;
        std::filesystem::remove(temp, ec2);
        throw std::runtime_error("cannot move CSV into place at \"" + path + "\": " + ec.message());
    }
}

} // namespace kronsbl
