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

#ifndef HOLOMIMO_SCENARIO_HPP
#define HOLOMIMO_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capacity.hpp"
#include "csv.hpp"
#include "em_channel.hpp"
#include "error.hpp"
#include "mc_sim.hpp"
#include "modal.hpp"
#include "parallel.hpp"

namespace holomimo
{
    // How SNR = 1/noise_var is referenced to the channel.
    //   physical       : raw channel scale (received power is tiny)
    //   patch_averaged : each block divided by the product of tx and rx patch
    //                    areas, i.e. the patch-averaged Green's function
    //   normalized     : every channel rescaled so its largest singular value is 1
    enum class snr_convention
    {
        physical,
        patch_averaged,
        normalized
    };

    inline std::string to_string(snr_convention c)
    {
        switch (c)
        {
        case snr_convention::physical:
            return "physical";
        case snr_convention::patch_averaged:
            return "patch_averaged";
        case snr_convention::normalized:
            return "normalized";
        }
        return "physical";
    }

    inline snr_convention parse_snr_convention(const std::string &s)
    {
        if (s == "physical")
            return snr_convention::physical;
        if (s == "patch_averaged")
            return snr_convention::patch_averaged;
        if (s == "normalized")
            return snr_convention::normalized;
        fail(error_category::config, "unknown snr_convention '" + s + "'");
    }

    struct surface_params
    {
        int nx = 8;
        int ny = 8;
        double patch_x = 0.4; // in wavelengths when in_wavelengths, else meters
        double patch_y = 0.4;
        bool in_wavelengths = true;
        double offset_x_m = 0.0; // lateral shift of the first patch center
        double offset_y_m = 0.0;
    };

    struct scenario_config
    {
        std::vector<double> frequency_hz{2.4e9};
        std::vector<double> distance_m{1.0};
        surface_params tx{};
        surface_params rx{};
        std::size_t k_tx_rf = 1;
        std::optional<std::size_t> n_rx_rf; // empty: all retained modes
        std::vector<double> snr_db{20.0};
        snr_convention convention = snr_convention::physical;
        double dof_threshold = 0.3; // relative amplitude, calibrated on the 16x16 2.4 GHz DoF curve
        int quad_order = 4;
        std::size_t mc_samples = 100000; // 0 disables Monte Carlo columns
        std::uint64_t seed = 1;
        std::uint64_t enumeration_cap = 1000000;
        bool restrict_to_retained = true; // false: ensembles span every nonzero mode

        // Sweep axes
        std::vector<int> tx_sizes;             // area / eig sweeps: square transmit grids
        std::vector<std::size_t> n_rx_rf_list; // receive-RF sweep
        std::vector<std::size_t> k_list;       // transmit-RF sweep

        unsigned threads = 1;

        void validate() const
        {
            auto need = [](bool ok, const char *what)
            {
                if (!ok)
                    fail(error_category::config, what);
            };
            need(!frequency_hz.empty(), "frequency_hz: sweep list is empty");
            need(!distance_m.empty(), "distance_m: sweep list is empty");
            need(!snr_db.empty(), "snr_db: sweep list is empty");
            for (double f : frequency_hz)
                need(f > 0.0 && std::isfinite(f), "frequency_hz must be positive");
            for (double d : distance_m)
                need(d > 0.0 && std::isfinite(d), "distance_m must be positive");
            for (double s : snr_db)
                need(std::isfinite(s), "snr_db must be finite");
            need(k_tx_rf >= 1, "k_tx_rf must be >= 1");
            need(!n_rx_rf || *n_rx_rf >= 1, "n_rx_rf must be >= 1 or 'all'");
            need(dof_threshold > 0.0 && dof_threshold <= 1.0, "dof_threshold must lie in (0, 1]");
            need(quad_order >= 1, "quad_order must be >= 1");
            need(mc_samples == 0 || mc_samples >= 1000, "mc_samples must be 0 or >= 1000");
            need(enumeration_cap >= 1, "enumeration_cap must be >= 1");
            for (auto *s : {&tx, &rx})
            {
                need(s->nx >= 1 && s->ny >= 1, "surface patch counts must be >= 1");
                need(s->patch_x > 0.0 && s->patch_y > 0.0, "surface patch size must be positive");
            }
            for (int n : tx_sizes)
                need(n >= 1, "tx_sizes entries must be >= 1");
            for (auto n : n_rx_rf_list)
                need(n >= 1, "n_rx_rf sweep entries must be >= 1");
            for (auto k : k_list)
                need(k >= 1, "k sweep entries must be >= 1");
        }
    };

    inline double noise_var_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

    // Transmit surface at the origin, receive surface at +d along z with the
    // same lateral origin (plus any configured offset).
    inline std::pair<surface_spec, surface_spec> make_surfaces(const scenario_config &cfg, double frequency_hz,
                                                               double distance_m,
                                                               std::optional<std::pair<int, int>> tx_grid = {})
    {
        const double lambda = speed_of_light / frequency_hz;
        auto build = [&](const surface_params &p, const vec3 &origin, int nx, int ny)
        {
            const double scale = p.in_wavelengths ? lambda : 1.0;
            return surface_spec::contiguous(nx, ny, p.patch_x * scale, p.patch_y * scale, origin);
        };
        const int tnx = tx_grid ? tx_grid->first : cfg.tx.nx;
        const int tny = tx_grid ? tx_grid->second : cfg.tx.ny;
        surface_spec tx = build(cfg.tx, vec3(cfg.tx.offset_x_m, cfg.tx.offset_y_m, 0.0), tnx, tny);
        surface_spec rx = build(cfg.rx, vec3(cfg.rx.offset_x_m, cfg.rx.offset_y_m, distance_m), cfg.rx.nx, cfg.rx.ny);
        return {tx, rx};
    }

    // Multiplicative factor applied to the channel (and so to every singular value)
    inline double convention_scale(snr_convention c, const surface_spec &tx, const surface_spec &rx,
                                   double sigma_max)
    {
        switch (c)
        {
        case snr_convention::physical:
            return 1.0;
        case snr_convention::patch_averaged:
            return 1.0 / (tx.lx * tx.ly * rx.lx * rx.ly);
        case snr_convention::normalized:
            return sigma_max > 0.0 ? 1.0 / sigma_max : 1.0;
        }
        return 1.0;
    }

    struct channel_point
    {
        double frequency_hz = 0.0;
        double distance_m = 0.0;
        surface_spec tx, rx;
        modal_channel modal; // singular values already carry the convention scale
    };

    // Geometry -> channel -> SVD, with the SNR-convention scale applied.
    // Errors are re-raised with the offending (d, f) in the message.
    inline channel_point evaluate_channel(const scenario_config &cfg, double frequency_hz, double distance_m,
                                          std::optional<std::pair<int, int>> tx_grid = {},
                                          unsigned n_threads = 1)
    {
        channel_point pt;
        pt.frequency_hz = frequency_hz;
        pt.distance_m = distance_m;
        try
        {
            std::tie(pt.tx, pt.rx) = make_surfaces(cfg, frequency_hz, distance_m, tx_grid);
            const auto H = assemble_channel(pt.tx, pt.rx, wave::from_frequency(frequency_hz), cfg.quad_order, n_threads);
            pt.modal = decompose(H, cfg.dof_threshold);
        }
        catch (const error &e)
        {
            throw error(e.category(), std::string(e.what()) + " (distance_m=" + format_number(distance_m) +
                                          ", frequency_hz=" + format_number(frequency_hz) + ")");
        }
        const double sigma_max = pt.modal.size() ? pt.modal.singular_values[0] : 0.0;
        pt.modal.singular_values *= convention_scale(cfg.convention, pt.tx, pt.rx, sigma_max);
        return pt;
    }

    // Gains of the modes an ensemble may use: retained (or all nonzero) modes,
    // truncated to the n_rx_rf strongest receive patterns.
    inline std::vector<double> support_gains(const modal_channel &m, bool restrict_to_retained,
                                             std::optional<std::size_t> n_rx_rf)
    {
        std::size_t n = restrict_to_retained ? m.retained_rank : count_above(m.singular_values, 1e-300);
        if (n_rx_rf)
            n = std::min(n, *n_rx_rf);
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i)
            g[i] = m.singular_values[Eigen::Index(i)] * m.singular_values[Eigen::Index(i)];
        return g;
    }

    struct capacity_point
    {
        double se_bhps = 0.0;
        double se_nuhpm = 0.0; // closed-form asymptotic
        std::optional<mi_estimate> mc;
        bool fast_path = false; // ensemble exceeded the cap; equal-power closed form used
        std::size_t n_modes = 0;
        std::uint64_t ensemble_size = 0;
    };

    inline capacity_point evaluate_capacity(const modal_channel &m, std::size_t K, double snr_db,
                                            std::optional<std::size_t> n_rx_rf, const scenario_config &cfg,
                                            bool with_mc, std::uint64_t mc_seed)
    {
        const double nv = noise_var_from_snr_db(snr_db);
        const auto gains = support_gains(m, cfg.restrict_to_retained, n_rx_rf);
        capacity_point out;
        out.n_modes = gains.size();
        out.se_bhps = bhps_capacity(gains, K, nv).capacity;
        out.ensemble_size = binomial(gains.size(), K);
        if (out.ensemble_size > cfg.enumeration_cap)
        {
            out.fast_path = true;
            out.se_nuhpm = fast_capacity_equal_power(gains, K, nv);
            return out;
        }
        const auto ens = build_ensemble(gains, K, nv, cfg.enumeration_cap);
        out.se_nuhpm = nuhpm_asymptotic_capacity(ens);
        if (with_mc && cfg.mc_samples > 0)
            out.mc = mc_mutual_information(ens, cfg.mc_samples, mc_seed);
        return out;
    }

    // ---------------------------------------------------------------------------
    // Sweeps. Each returns named tables; the caller decides where they go.

    struct sweep_output
    {
        std::vector<std::pair<std::string, csv_table>> tables; // (file stem, table), in input order
        std::vector<std::string> warnings;
    };

    inline std::string tag(const std::string &prefix, double v) { return prefix + format_number(v); }

    inline sweep_output run_dof_sweep(const scenario_config &cfg)
    {
        cfg.validate();
        std::vector<std::pair<double, double>> points;
        for (double f : cfg.frequency_hz)
            for (double d : cfg.distance_m)
                points.emplace_back(f, d);

        std::vector<std::size_t> dof(points.size());
        detail::parallel_for(points.size(), cfg.threads, [&](std::size_t i)
                             { dof[i] = count_dof(evaluate_channel(cfg, points[i].first, points[i].second).modal); });

        csv_table t{{"distance_m", "frequency_hz", "dof"}, {}};
        for (std::size_t i = 0; i < points.size(); ++i)
            t.rows.push_back({format_number(points[i].second), format_number(points[i].first), format_number(dof[i])});
        return {{{"dof", std::move(t)}}, {}};
    }

    inline sweep_output run_snr_sweep(const scenario_config &cfg)
    {
        cfg.validate();
        sweep_output out;
        const double f = cfg.frequency_hz.front();
        for (std::size_t di = 0; di < cfg.distance_m.size(); ++di)
        {
            const double d = cfg.distance_m[di];
            const auto ch = evaluate_channel(cfg, f, d, {}, cfg.threads);
            std::vector<capacity_point> rows(cfg.snr_db.size());
            detail::parallel_for(rows.size(), cfg.threads, [&](std::size_t i)
                                 { rows[i] = evaluate_capacity(ch.modal, cfg.k_tx_rf, cfg.snr_db[i], cfg.n_rx_rf, cfg, true,
                                                               chunk_seed(cfg.seed, (std::uint64_t(di) << 32) | i)); });

            csv_table t{{"snr_db", "se_bhps", "se_nuhpm_asym", "se_nuhpm_mc", "mc_stderr"}, {}};
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                const auto &r = rows[i];
                t.rows.push_back({format_number(cfg.snr_db[i]), format_number(r.se_bhps), format_number(r.se_nuhpm),
                                  r.mc ? format_number(r.mc->value) : "", r.mc ? format_number(r.mc->std_error) : ""});
                if (r.fast_path)
                    out.warnings.push_back("snr-sweep d=" + format_number(d) + " snr_db=" + format_number(cfg.snr_db[i]) +
                                           ": C(" + std::to_string(r.n_modes) + "," + std::to_string(cfg.k_tx_rf) +
                                           ") exceeds enumeration_cap; equal-power fast path used, MC skipped");
            }
            out.tables.emplace_back(tag("snr_sweep_d", d), std::move(t));
        }
        return out;
    }

    inline sweep_output run_distance_sweep(const scenario_config &cfg)
    {
        cfg.validate();
        sweep_output out;
        const double f = cfg.frequency_hz.front();
        std::vector<channel_point> chans(cfg.distance_m.size());
        detail::parallel_for(chans.size(), cfg.threads, [&](std::size_t i)
                             { chans[i] = evaluate_channel(cfg, f, cfg.distance_m[i]); });
        for (double snr : cfg.snr_db)
        {
            csv_table t{{"distance_m", "se_bhps", "se_nuhpm"}, {}};
            for (const auto &ch : chans)
            {
                const auto r = evaluate_capacity(ch.modal, cfg.k_tx_rf, snr, cfg.n_rx_rf, cfg, false, 0);
                if (r.fast_path)
                    out.warnings.push_back("distance-sweep d=" + format_number(ch.distance_m) + ": equal-power fast path used");
                t.rows.push_back({format_number(ch.distance_m), format_number(r.se_bhps), format_number(r.se_nuhpm)});
            }
            out.tables.emplace_back(tag("distance_sweep_snr", snr), std::move(t));
        }
        return out;
    }

    inline sweep_output run_area_sweep(const scenario_config &cfg)
    {
        cfg.validate();
        if (cfg.tx_sizes.empty())
            fail(error_category::config, "area-sweep: [sweep] tx_sizes is empty");
        sweep_output out;
        const double f = cfg.frequency_hz.front();
        const double lambda = speed_of_light / f;
        const double snr = cfg.snr_db.front();
        for (double d : cfg.distance_m)
        {
            std::vector<std::pair<double, capacity_point>> rows(cfg.tx_sizes.size());
            detail::parallel_for(rows.size(), cfg.threads, [&](std::size_t i)
                                 {
                const int n = cfg.tx_sizes[i];
                const auto ch = evaluate_channel(cfg, f, d, std::make_pair(n, n));
                const double area = double(n) * ch.tx.lx * double(n) * ch.tx.ly / (lambda * lambda);
                rows[i] = {area, evaluate_capacity(ch.modal, cfg.k_tx_rf, snr, cfg.n_rx_rf, cfg, false, 0)}; });
            csv_table t{{"area_wavelengths_sq", "se_bhps", "se_nuhpm"}, {}};
            for (const auto &[area, r] : rows)
                t.rows.push_back({format_number(area), format_number(r.se_bhps), format_number(r.se_nuhpm)});
            out.tables.emplace_back(tag("area_sweep_d", d), std::move(t));
        }
        return out;
    }

    // Receive-RF sweep when [sweep] n_rx_rf is set, transmit-RF sweep when [sweep] k is set
    inline sweep_output run_rf_sweep(const scenario_config &cfg)
    {
        cfg.validate();
        if (cfg.n_rx_rf_list.empty() && cfg.k_list.empty())
            fail(error_category::config, "rf-sweep: set [sweep] n_rx_rf and/or [sweep] k");
        sweep_output out;
        const double f = cfg.frequency_hz.front();
        for (double d : cfg.distance_m)
        {
            const auto ch = evaluate_channel(cfg, f, d, {}, cfg.threads);
            if (!cfg.n_rx_rf_list.empty())
            {
                csv_table t{{"n_rx_rf", "se_nuhpm", "se_bhps"}, {}};
                for (auto n_rx : cfg.n_rx_rf_list)
                {
                    if (n_rx < cfg.k_tx_rf)
                        fail(error_category::config, "rf-sweep: n_rx_rf = " + std::to_string(n_rx) + " < k_tx_rf");
                    const auto r = evaluate_capacity(ch.modal, cfg.k_tx_rf, cfg.snr_db.front(), n_rx, cfg, false, 0);
                    t.rows.push_back({format_number(n_rx), format_number(r.se_nuhpm), format_number(r.se_bhps)});
                }
                out.tables.emplace_back(tag("rf_rx_sweep_d", d), std::move(t));
            }
            if (!cfg.k_list.empty())
            {
                csv_table t{{"snr_db", "k", "se_bhps", "se_nuhpm"}, {}};
                for (double snr : cfg.snr_db)
                    for (auto k : cfg.k_list)
                    {
                        const auto r = evaluate_capacity(ch.modal, k, snr, cfg.n_rx_rf, cfg, false, 0);
                        if (r.fast_path)
                            out.warnings.push_back("rf-sweep d=" + format_number(d) + " k=" + std::to_string(k) +
                                                   ": equal-power fast path used");
                        t.rows.push_back({format_number(snr), format_number(k), format_number(r.se_bhps),
                                          format_number(r.se_nuhpm)});
                    }
                out.tables.emplace_back(tag("rf_tx_sweep_d", d), std::move(t));
            }
        }
        return out;
    }

    // One eigenvalue table per transmit size (or the configured transmit surface)
    inline sweep_output run_eig_export(const scenario_config &cfg)
    {
        cfg.validate();
        sweep_output out;
        const double f = cfg.frequency_hz.front();
        std::vector<std::pair<int, int>> grids;
        if (cfg.tx_sizes.empty())
            grids.emplace_back(cfg.tx.nx, cfg.tx.ny);
        for (int n : cfg.tx_sizes)
            grids.emplace_back(n, n);
        for (double d : cfg.distance_m)
            for (const auto &g : grids)
            {
                const auto ch = evaluate_channel(cfg, f, d, g, cfg.threads);
                csv_table t{{"index", "sigma_sq"}, {}};
                for (const auto &e : eig_spectrum(ch.modal))
                    t.rows.push_back({format_number(e.index), format_number(e.sigma_sq)});
                out.tables.emplace_back("eig_tx" + std::to_string(g.first) + "x" + std::to_string(g.second) + tag("_d", d),
                                        std::move(t));
            }
        return out;
    }
}

#endif
