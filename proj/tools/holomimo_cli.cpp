// SPDX-License-Identifier: Apache-2.0
//
// holomimo: holographic MIMO channel and capacity simulation library
// Copyright (C) 2026 The holomimo Authors
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

// holomimo command line: scenario sweeps to CSV, plus a `compare` helper that
// derives gains and SNR shifts from previously written CSVs.

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "holomimo.hpp"
#include "run_manifest.hpp"

namespace fs = std::filesystem;
using namespace holomimo;

namespace
{
    int exit_code(error_category c)
    {
        switch (c)
        {
        case error_category::singularity:
            return 3;
        case error_category::geometry:
            return 4;
        case error_category::input:
            return 5;
        case error_category::no_channel:
            return 6;
        case error_category::insufficient_dof:
            return 7;
        case error_category::ensemble_too_large:
            return 8;
        case error_category::config:
            return 9;
        case error_category::io:
            return 10;
        }
        return 1;
    }

    void report_error(const std::string &category, const std::string &message)
    {
        std::cerr << nlohmann::json{{"error", category}, {"message", message}}.dump() << "\n";
    }

    struct run_options
    {
        std::string config;
        std::string out = ".";
        std::optional<std::uint64_t> seed;
        unsigned threads = 1;
    };

    using sweep_fn = std::function<sweep_output(const scenario_config &)>;

    int run_sweep(const std::string &command, const run_options &opt, const sweep_fn &sweep)
    {
        const fs::path out_dir(opt.out);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec)
        {
            report_error("io", "cannot create output directory " + out_dir.string() + ": " + ec.message());
            return exit_code(error_category::io);
        }

        tools::run_manifest manifest(command, out_dir);
        try
        {
            scenario_config cfg = load_scenario(opt.config);
            if (opt.seed)
                cfg.seed = *opt.seed;
            cfg.threads = opt.threads;
            manifest.set_config(cfg, opt.config);

            const auto result = sweep(cfg);
            for (const auto &[stem, table] : result.tables)
            {
                const std::string name = stem + ".csv";
                const std::string content = table.to_string();
                write_file_atomic(out_dir / name, content);
                manifest.add_output(name, content, table.rows.size());
                std::cout << (out_dir / name).string() << "\n";
            }
            for (const auto &w : result.warnings)
            {
                manifest.warn(w);
                std::cerr << "warning: " << w << "\n";
            }
            manifest.write();
            return 0;
        }
        catch (const error &e)
        {
            report_error(std::string(category_name(e.category())), e.what());
            manifest.set_status("error", std::string(category_name(e.category())) + ": " + e.what());
            try
            {
                manifest.write();
            }
            catch (...)
            {
            }
            return exit_code(e.category());
        }
    }

    // ---------------------------------------------------------------------------
    // compare

    void emit(const csv_table &t, const std::string &out)
    {
        if (out.empty())
            std::cout << t.to_string();
        else
            write_file_atomic(out, t.to_string());
    }

    // Percentage change of every value column between two key rows
    csv_table compare_gain(const csv_table &in, const std::string &key, double from, double to,
                           std::vector<std::string> columns)
    {
        const std::size_t kc = in.column(key);
        auto find_row = [&](double v)
        {
            for (std::size_t r = 0; r < in.rows.size(); ++r)
                if (std::abs(in.number(r, kc) - v) <= 1e-9 * std::max(1.0, std::abs(v)))
                    return r;
            fail(error_category::input, "compare gain: no row with " + key + " = " + format_number(v));
        };
        const std::size_t ra = find_row(from), rb = find_row(to);
        if (columns.empty())
            for (const auto &h : in.header)
                if (h != key)
                    columns.push_back(h);

        csv_table out{{"column", "from", "to", "value_from", "value_to", "gain_percent"}, {}};
        for (const auto &c : columns)
        {
            const std::size_t ci = in.column(c);
            const double a = in.number(ra, ci), b = in.number(rb, ci);
            out.rows.push_back({c, format_number(from), format_number(to), format_number(a), format_number(b),
                                format_number(100.0 * (b / a - 1.0))});
        }
        return out;
    }

    // SNR (dB) at which `column` first reaches `target`, linearly interpolated
    double snr_to_reach(const csv_table &t, const std::string &column, double target)
    {
        const std::size_t sc = t.column("snr_db"), vc = t.column(column);
        for (std::size_t r = 0; r + 1 < t.rows.size(); ++r)
        {
            const double x0 = t.number(r, sc), x1 = t.number(r + 1, sc);
            const double y0 = t.number(r, vc), y1 = t.number(r + 1, vc);
            if (y0 <= target && target <= y1 && y1 > y0)
                return x0 + (target - y0) * (x1 - x0) / (y1 - y0);
        }
        fail(error_category::input, "compare shift: " + column + " never reaches " + format_number(target));
    }

    csv_table compare_shift(const csv_table &far, const csv_table &near, std::vector<std::string> columns,
                            double target)
    {
        csv_table out{{"column", "target", "snr_far_db", "snr_near_db", "shift_db"}, {}};
        for (const auto &c : columns)
        {
            const double a = snr_to_reach(far, c, target), b = snr_to_reach(near, c, target);
            out.rows.push_back({c, format_number(target), format_number(a), format_number(b), format_number(a - b)});
        }
        return out;
    }

    // Appends column `a - b` to every row
    csv_table compare_gap(const csv_table &in, const std::string &a, const std::string &b)
    {
        csv_table out = in;
        out.header.push_back("gap");
        const std::size_t ca = in.column(a), cb = in.column(b);
        for (std::size_t r = 0; r < in.rows.size(); ++r)
            out.rows[r].push_back(format_number(in.number(r, ca) - in.number(r, cb)));
        return out;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"holomimo: holographic MIMO channel, DoF and capacity sweeps"};
    app.set_version_flag("--version", HOLOMIMO_VERSION);
    app.require_subcommand(1);

    run_options opt;
    std::string chosen;
    std::map<std::string, sweep_fn> sweeps{
        {"dof", run_dof_sweep},
        {"snr-sweep", run_snr_sweep},
        {"distance-sweep", run_distance_sweep},
        {"area-sweep", run_area_sweep},
        {"rf-sweep", run_rf_sweep},
        {"eig", run_eig_export},
    };
    const std::map<std::string, std::string> help{
        {"dof", "spatial DoF versus distance and frequency"},
        {"snr-sweep", "BHPS / NUHPM spectral efficiency versus SNR (one CSV per distance)"},
        {"distance-sweep", "spectral efficiency versus distance"},
        {"area-sweep", "spectral efficiency versus transmit aperture area"},
        {"rf-sweep", "spectral efficiency versus receive / transmit RF chains"},
        {"eig", "squared singular values of the channel"},
    };
    for (const auto &[name, fn] : sweeps)
    {
        auto *sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", opt.config, "scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--seed", opt.seed, "override the scenario seed");
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        sub->callback([&, name = name]
                      { chosen = name; });
    }

    // compare {gain, shift, gap}
    auto *cmp = app.add_subcommand("compare", "derive gains / SNR shifts / gaps from sweep CSVs");
    cmp->require_subcommand(1);
    std::string out_file, csv_path, key, column_a, column_b, far_path, near_path;
    std::vector<std::string> columns;
    double from = 0.0, to = 0.0, target = 0.0;

    auto *gain = cmp->add_subcommand("gain", "percentage change of each column between two key values");
    gain->add_option("--csv", csv_path)->required()->check(CLI::ExistingFile);
    gain->add_option("--key", key)->required();
    gain->add_option("--from", from)->required();
    gain->add_option("--to", to)->required();
    gain->add_option("--columns", columns)->delimiter(',');
    gain->add_option("--output", out_file);

    auto *shift = cmp->add_subcommand("shift", "SNR shift (dB) to reach a fixed rate, far minus near");
    shift->add_option("--far", far_path)->required()->check(CLI::ExistingFile);
    shift->add_option("--near", near_path)->required()->check(CLI::ExistingFile);
    shift->add_option("--columns", columns)->delimiter(',')->required();
    shift->add_option("--target", target)->required();
    shift->add_option("--output", out_file);

    auto *gap = cmp->add_subcommand("gap", "append column a - b");
    gap->add_option("--csv", csv_path)->required()->check(CLI::ExistingFile);
    gap->add_option("--a", column_a)->required();
    gap->add_option("--b", column_b)->required();
    gap->add_option("--output", out_file);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        report_error("usage", e.what());
        return 2;
    }

    try
    {
        if (!chosen.empty())
            return run_sweep(chosen, opt, sweeps.at(chosen));
        if (gain->parsed())
            emit(compare_gain(read_csv(csv_path), key, from, to, columns), out_file);
        else if (shift->parsed())
            emit(compare_shift(read_csv(far_path), read_csv(near_path), columns, target), out_file);
        else if (gap->parsed())
            emit(compare_gap(read_csv(csv_path), column_a, column_b), out_file);
        return 0;
    }
    catch (const error &e)
    {
        report_error(std::string(category_name(e.category())), e.what());
        return exit_code(e.category());
    }
    catch (const std::exception &e)
    {
        report_error("internal", e.what());
        return 1;
    }
}
