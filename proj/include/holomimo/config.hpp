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

#ifndef HOLOMIMO_CONFIG_HPP
#define HOLOMIMO_CONFIG_HPP

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "scenario.hpp"

// Scenario files are INI documents:
//
//   [scenario]  frequency_hz, distance_m, snr_db, snr_convention, k_tx_rf,
//               n_rx_rf, dof_threshold, quad_order, mc_samples, seed,
//               enumeration_cap, ensemble_support
//   [tx] [rx]   nx, ny, patch_wavelengths | patch_m (scalar or "x, y"),
//               offset_x_m, offset_y_m
//   [sweep]     tx_sizes, n_rx_rf, k
//
// List values are comma separated; an item may be a range "start:step:stop"
// (stop inclusive).

namespace holomimo
{
    namespace detail
    {
        inline std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        inline double parse_double(const std::string &key, const std::string &raw)
        {
            const std::string s = trim(raw);
            double v = 0.0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                fail(error_category::config, key + ": '" + raw + "' is not a number");
            return v;
        }

        inline std::uint64_t parse_uint(const std::string &key, const std::string &raw)
        {
            const std::string s = trim(raw);
            std::uint64_t v = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                fail(error_category::config, key + ": '" + raw + "' is not a non-negative integer");
            return v;
        }

        inline std::vector<double> parse_list(const std::string &key, const std::string &raw)
        {
            std::vector<double> out;
            std::stringstream ss(raw);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                item = trim(item);
                if (item.empty())
                    continue;
                const auto c1 = item.find(':');
                if (c1 == std::string::npos)
                {
                    out.push_back(parse_double(key, item));
                    continue;
                }
                const auto c2 = item.find(':', c1 + 1);
                if (c2 == std::string::npos)
                    fail(error_category::config, key + ": range '" + item + "' must be start:step:stop");
                const double a = parse_double(key, item.substr(0, c1));
                const double step = parse_double(key, item.substr(c1 + 1, c2 - c1 - 1));
                const double b = parse_double(key, item.substr(c2 + 1));
                if (!(step > 0.0) || b < a)
                    fail(error_category::config, key + ": range '" + item + "' needs step > 0 and stop >= start");
                const auto n = std::size_t(std::floor((b - a) / step + 1e-9));
                // Round to 12 significant digits so 0:0.1:1 yields 0.3, not 0.30000000000000004
                for (std::size_t i = 0; i <= n; ++i)
                {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.12g", a + double(i) * step);
                    out.push_back(std::strtod(buf, nullptr));
                }
            }
            if (out.empty())
                fail(error_category::config, key + ": empty list");
            return out;
        }

        template <typename T>
        std::vector<T> parse_count_list(const std::string &key, const std::string &raw)
        {
            std::vector<T> out;
            for (double v : parse_list(key, raw))
            {
                if (v < 1.0 || v != std::floor(v))
                    fail(error_category::config, key + ": entries must be positive integers");
                out.push_back(T(v));
            }
            return out;
        }

        inline void parse_surface(const boost::property_tree::ptree &sec, const std::string &name, surface_params &s)
        {
            bool have_size = false;
            for (const auto &[key, node] : sec)
            {
                const std::string v = node.get_value<std::string>();
                const std::string k = name + "." + key;
                if (key == "nx")
                    s.nx = int(parse_uint(k, v));
                else if (key == "ny")
                    s.ny = int(parse_uint(k, v));
                else if (key == "patch_wavelengths" || key == "patch_m")
                {
                    if (have_size)
                        fail(error_category::config, name + ": give only one of patch_wavelengths / patch_m");
                    have_size = true;
                    const auto sz = parse_list(k, v);
                    if (sz.size() > 2)
                        fail(error_category::config, k + ": expected one or two values");
                    s.patch_x = sz[0];
                    s.patch_y = sz.size() == 2 ? sz[1] : sz[0];
                    s.in_wavelengths = key == "patch_wavelengths";
                }
                else if (key == "offset_x_m")
                    s.offset_x_m = parse_double(k, v);
                else if (key == "offset_y_m")
                    s.offset_y_m = parse_double(k, v);
                else
                    fail(error_category::config, "unknown key '" + k + "'");
            }
        }
    }

    inline scenario_config parse_scenario(const std::string &ini_text)
    {
        namespace pt = boost::property_tree;
        pt::ptree tree;
        try
        {
            std::istringstream in(ini_text);
            pt::read_ini(in, tree);
        }
        catch (const pt::ini_parser_error &e)
        {
            fail(error_category::config, std::string("malformed config: ") + e.what());
        }

        scenario_config cfg;
        for (const auto &[section, sec] : tree)
        {
            if (section == "tx")
                detail::parse_surface(sec, "tx", cfg.tx);
            else if (section == "rx")
                detail::parse_surface(sec, "rx", cfg.rx);
            else if (section == "scenario")
            {
                for (const auto &[key, node] : sec)
                {
                    const std::string v = node.get_value<std::string>();
                    const std::string k = "scenario." + key;
                    if (key == "frequency_hz")
                        cfg.frequency_hz = detail::parse_list(k, v);
                    else if (key == "distance_m")
                        cfg.distance_m = detail::parse_list(k, v);
                    else if (key == "snr_db")
                        cfg.snr_db = detail::parse_list(k, v);
                    else if (key == "snr_convention")
                        cfg.convention = parse_snr_convention(detail::trim(v));
                    else if (key == "k_tx_rf")
                        cfg.k_tx_rf = std::size_t(detail::parse_uint(k, v));
                    else if (key == "n_rx_rf")
                    {
                        if (detail::trim(v) == "all")
                            cfg.n_rx_rf.reset();
                        else
                            cfg.n_rx_rf = std::size_t(detail::parse_uint(k, v));
                    }
                    else if (key == "dof_threshold")
                        cfg.dof_threshold = detail::parse_double(k, v);
                    else if (key == "quad_order")
                        cfg.quad_order = int(detail::parse_uint(k, v));
                    else if (key == "mc_samples")
                        cfg.mc_samples = std::size_t(detail::parse_uint(k, v));
                    else if (key == "seed")
                        cfg.seed = detail::parse_uint(k, v);
                    else if (key == "enumeration_cap")
                        cfg.enumeration_cap = detail::parse_uint(k, v);
                    else if (key == "ensemble_support")
                    {
                        const auto s = detail::trim(v);
                        if (s != "retained" && s != "all")
                            fail(error_category::config, k + ": expected 'retained' or 'all'");
                        cfg.restrict_to_retained = s == "retained";
                    }
                    else
                        fail(error_category::config, "unknown key '" + k + "'");
                }
            }
            else if (section == "sweep")
            {
                for (const auto &[key, node] : sec)
                {
                    const std::string v = node.get_value<std::string>();
                    const std::string k = "sweep." + key;
                    if (key == "tx_sizes")
                        cfg.tx_sizes = detail::parse_count_list<int>(k, v);
                    else if (key == "n_rx_rf")
                        cfg.n_rx_rf_list = detail::parse_count_list<std::size_t>(k, v);
                    else if (key == "k")
                        cfg.k_list = detail::parse_count_list<std::size_t>(k, v);
                    else
                        fail(error_category::config, "unknown key '" + k + "'");
                }
            }
            else
                fail(error_category::config, "unknown section '" + section + "'");
        }
        cfg.validate();
        return cfg;
    }

    inline scenario_config load_scenario(const std::filesystem::path &path)
    {
        std::string text;
        try
        {
            text = read_file(path);
        }
        catch (const error &e)
        {
            fail(error_category::config, e.what());
        }
        return parse_scenario(text);
    }
}

#endif
