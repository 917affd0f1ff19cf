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

#include "kronsbl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kronsbl
{

namespace
{

std::string trim(const std::string &s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::string full_precision(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Flat view of the parsed text: "section.key" -> raw value string.
class KeyTable
{
  public:
    void insert(const std::string &section, const std::string &key, const std::string &value)
    {
        const std::string name = section + "." + key;
        if (!values_.emplace(name, value).second)
            throw std::invalid_argument("duplicate key \"" + name + "\"");
    }

    bool has(const std::string &name) const { return values_.count(name) != 0; }

    // Returns the raw value and marks the key as consumed.
    const std::string &raw(const std::string &name) const
    {
        auto it = values_.find(name);
        if (it == values_.end())
            throw std::invalid_argument("missing required key \"" + name + "\"");
        consumed_.insert(name);
        return it->second;
    }

    double get_double(const std::string &name) const
    {
        const std::string &text = raw(name);
        try
        {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size())
                throw std::invalid_argument(text);
            return v;
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("cannot parse number for \"" + name + "\": \"" + text +
                                        "\"");
        }
    }

    long long get_int(const std::string &name) const
    {
        const std::string &text = raw(name);
        try
        {
            std::size_t pos = 0;
            const long long v = std::stoll(text, &pos);
            if (pos != text.size())
                throw std::invalid_argument(text);
            return v;
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("cannot parse integer for \"" + name + "\": \"" + text +
                                        "\"");
        }
    }

    std::uint64_t get_uint64(const std::string &name) const
    {
        const std::string &text = raw(name);
        try
        {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(text, &pos);
            if (pos != text.size() || (!text.empty() && text[0] == '-'))
                throw std::invalid_argument(text);
            return v;
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("cannot parse unsigned integer for \"" + name + "\": \"" +
                                        text + "\"");
        }
    }

    bool get_bool(const std::string &name) const
    {
        const std::string &text = raw(name);
        if (text == "true" || text == "1")
            return true;
        if (text == "false" || text == "0")
            return false;
        throw std::invalid_argument("cannot parse boolean for \"" + name + "\": \"" + text +
                                    "\" (expected true/false)");
    }

    // Comma-separated list of tokens.
    std::vector<std::string> get_list(const std::string &name) const
    {
        const std::string &text = raw(name);
        std::vector<std::string> items;
        std::istringstream stream(text);
        std::string item;
        while (std::getline(stream, item, ','))
        {
            item = trim(item);
            if (item.empty())
                throw std::invalid_argument("empty entry in list \"" + name + "\": \"" + text +
                                            "\"");
            items.push_back(item);
        }
        if (items.empty())
            throw std::invalid_argument("list \"" + name + "\" is empty");
        return items;
    }

    // Anything inserted but never consumed is an unknown key.
    void reject_unconsumed() const
    {
        for (const auto &[name, value] : values_)
            if (!consumed_.count(name))
                throw std::invalid_argument("unknown key \"" + name + "\"");
    }

  private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

} // namespace

ParsedConfig parse_config(const std::string &text)
{
    static const std::set<std::string> known_sections = {"scenario", "hyper", "policy", "sweep"};

    KeyTable table;
    std::set<std::string> seen_sections;
    std::string section;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line))
    {
        ++line_no;
        // Comments run from the first '#' or ';' to the end of the line,
        // whether the line starts with one or carries it after a value.
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line.erase(comment);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t.front() == '[')
        {
            if (t.back() != ']')
                throw std::invalid_argument("malformed section header on line " +
                                            std::to_string(line_no) + ": \"" + t + "\"");
            section = trim(t.substr(1, t.size() - 2));
            if (!known_sections.count(section))
                throw std::invalid_argument("unknown config section \"" + section + "\"");
            if (!seen_sections.insert(section).second)
                throw std::invalid_argument("duplicate config section \"" + section + "\"");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("cannot parse config line " + std::to_string(line_no) +
                                        ": \"" + t + "\" (expected key = value)");
        if (section.empty())
            throw std::invalid_argument("key on line " + std::to_string(line_no) +
                                        " appears before any [section] header");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("empty key on config line " + std::to_string(line_no));
        if (value.empty())
            throw std::invalid_argument("empty value for key \"" + section + "." + key + "\"");
        table.insert(section, key, value);
    }

    ParsedConfig config;
    SweepSpec &spec = config.spec;

    auto count_from = [&](const std::string &name) {
        const long long v = table.get_int(name);
        if (v < 1 || v > 1'000'000)
            throw std::invalid_argument("value of \"" + name + "\" out of range: " +
                                        std::to_string(v));
        return static_cast<int>(v);
    };

    // [scenario] — M, N, K, snr_db required; the rest default.
    spec.base.num_antennas = count_from("scenario.M");
    spec.base.pilot_length = count_from("scenario.N");
    spec.base.num_users = count_from("scenario.K");
    spec.base.snr_db = table.get_double("scenario.snr_db");
    if (table.has("scenario.scatterers"))
        spec.base.num_scatterers = count_from("scenario.scatterers");
    if (table.has("scenario.seed"))
        spec.base.seed = table.get_uint64("scenario.seed");
    if (table.has("scenario.Q"))
        spec.base.transform_size = count_from("scenario.Q");
    if (table.has("scenario.angular_spread"))
        spec.base.angular_spread = table.get_double("scenario.angular_spread");
    if (table.has("scenario.carrier_freq"))
        spec.base.carrier_freq = table.get_double("scenario.carrier_freq");
    if (table.has("scenario.range_min"))
        spec.base.range_min = table.get_double("scenario.range_min");
    if (table.has("scenario.range_max"))
        spec.base.range_max = table.get_double("scenario.range_max");
    spec.base.validate();

    // [hyper]
    if (table.has("hyper.nu"))
        spec.esbl_hyper.nu = table.get_double("hyper.nu");
    if (table.has("hyper.theta"))
        spec.esbl_hyper.theta = table.get_double("hyper.theta");
    if (table.has("hyper.phi"))
        spec.esbl_hyper.phi = table.get_double("hyper.phi");
    if (table.has("hyper.alpha"))
        spec.sbl_hyper.alpha = table.get_double("hyper.alpha");
    if (table.has("hyper.beta"))
        spec.sbl_hyper.beta = table.get_double("hyper.beta");

    // [policy]
    if (table.has("policy.tol"))
        spec.policy.tol = table.get_double("policy.tol");
    if (table.has("policy.max_iter"))
    {
        const long long v = table.get_int("policy.max_iter");
        if (v < 1 || v > 10'000'000)
            throw std::invalid_argument("value of \"policy.max_iter\" out of range: " +
                                        std::to_string(v));
        spec.policy.max_iter = static_cast<int>(v);
    }
    if (table.has("policy.record_objective"))
        spec.policy.record_objective = table.get_bool("policy.record_objective");

    // [sweep] — optional; absent means a single estimation run.
    config.has_sweep = seen_sections.count("sweep") != 0;
    if (config.has_sweep)
    {
        spec.variable = sweep_variable_from_name(table.raw("sweep.variable"));
        spec.values.clear();
        for (const std::string &item : table.get_list("sweep.values"))
        {
            try
            {
                std::size_t pos = 0;
                const double v = std::stod(item, &pos);
                if (pos != item.size())
                    throw std::invalid_argument(item);
                spec.values.push_back(v);
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("cannot parse number in \"sweep.values\": \"" + item +
                                            "\"");
            }
        }
        if (table.has("sweep.trials"))
        {
            const long long v = table.get_int("sweep.trials");
            if (v < 1 || v > 100'000'000)
                throw std::invalid_argument("value of \"sweep.trials\" out of range: " +
                                            std::to_string(v));
            spec.num_trials = static_cast<int>(v);
        }
        if (table.has("sweep.estimators"))
        {
            spec.estimators.clear();
            for (const std::string &item : table.get_list("sweep.estimators"))
                spec.estimators.push_back(estimator_from_name(item));
        }
        if (table.has("sweep.emit_walltime"))
            spec.emit_walltime = table.get_bool("sweep.emit_walltime");
        if (table.has("sweep.nmse_mode"))
        {
            const std::string &mode = table.raw("sweep.nmse_mode");
            if (mode == "ratio_of_sums")
                spec.nmse_mean_of_ratios = false;
            else if (mode == "mean_of_ratios")
                spec.nmse_mean_of_ratios = true;
            else
                throw std::invalid_argument("cannot parse \"sweep.nmse_mode\": \"" + mode +
                                            "\" (expected ratio_of_sums or mean_of_ratios)");
        }
    }
    else
    {
        // Estimate-only config: degenerate single-cell sweep at the
        // scenario's own SNR.
        spec.variable = SweepVariable::snr_db;
        spec.values = {spec.base.snr_db};
        spec.num_trials = 1;
    }

    table.reject_unconsumed();
    spec.validate();
    return config;
}

std::string serialize_config(const ParsedConfig &config)
{
    const SweepSpec &spec = config.spec;
    std::ostringstream out;
    out << "[scenario]\n";
    out << "M = " << spec.base.num_antennas << "\n";
    out << "N = " << spec.base.pilot_length << "\n";
    out << "K = " << spec.base.num_users << "\n";
    out << "snr_db = " << full_precision(spec.base.snr_db) << "\n";
    out << "scatterers = " << spec.base.num_scatterers << "\n";
    out << "seed = " << spec.base.seed << "\n";
    if (spec.base.transform_size > 0)
        out << "Q = " << spec.base.transform_size << "\n";
    out << "angular_spread = " << full_precision(spec.base.angular_spread) << "\n";
    out << "carrier_freq = " << full_precision(spec.base.carrier_freq) << "\n";
    out << "range_min = " << full_precision(spec.base.range_min) << "\n";
    out << "range_max = " << full_precision(spec.base.range_max) << "\n";
    out << "\n[hyper]\n";
    out << "nu = " << full_precision(spec.esbl_hyper.nu) << "\n";
    out << "theta = " << full_precision(spec.esbl_hyper.theta) << "\n";
    out << "phi = " << full_precision(spec.esbl_hyper.phi) << "\n";
    out << "alpha = " << full_precision(spec.sbl_hyper.alpha) << "\n";
    out << "beta = " << full_precision(spec.sbl_hyper.beta) << "\n";
    out << "\n[policy]\n";
    out << "tol = " << full_precision(spec.policy.tol) << "\n";
    out << "max_iter = " << spec.policy.max_iter << "\n";
    out << "record_objective = " << (spec.policy.record_objective ? "true" : "false") << "\n";
    if (config.has_sweep)
    {
        out << "\n[sweep]\n";
        out << "variable = " << to_string(spec.variable) << "\n";
        out << "values = ";
        for (std::size_t i = 0; i < spec.values.size(); ++i)
            out << (i ? ", " : "") << full_precision(spec.values[i]);
        out << "\n";
        out << "trials = " << spec.num_trials << "\n";
        out << "estimators = ";
        for (std::size_t i = 0; i < spec.estimators.size(); ++i)
            out << (i ? ", " : "") << to_string(spec.estimators[i]);
        out << "\n";
        out << "emit_walltime = " << (spec.emit_walltime ? "true" : "false") << "\n";
        out << "nmse_mode = " << (spec.nmse_mean_of_ratios ? "mean_of_ratios" : "ratio_of_sums")
            << "\n";
    }
    return out.str();
}

} // namespace kronsbl
