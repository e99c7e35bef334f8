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

#ifndef HOLOMIMO_TOOLS_RUN_MANIFEST_HPP
#define HOLOMIMO_TOOLS_RUN_MANIFEST_HPP

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "holomimo.hpp"

namespace holomimo::tools
{
    inline std::string sha256_hex(const std::string &data)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            fail(error_category::io, "sha256 failed");
        std::string hex;
        char buf[3];
        for (unsigned i = 0; i < len; ++i)
        {
            std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
            hex += buf;
        }
        return hex;
    }

    inline std::string utc_now()
    {
        const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    inline nlohmann::json to_json(const scenario_config &c)
    {
        auto surface = [](const surface_params &s)
        {
            return nlohmann::json{{"nx", s.nx}, {"ny", s.ny}, {"patch_x", s.patch_x}, {"patch_y", s.patch_y},
                                  {"patch_unit", s.in_wavelengths ? "wavelength" : "m"},
                                  {"offset_x_m", s.offset_x_m}, {"offset_y_m", s.offset_y_m}};
        };
        nlohmann::json j;
        j["frequency_hz"] = c.frequency_hz;
        j["distance_m"] = c.distance_m;
        j["snr_db"] = c.snr_db;
        j["snr_convention"] = to_string(c.convention);
        j["k_tx_rf"] = c.k_tx_rf;
        j["n_rx_rf"] = c.n_rx_rf ? nlohmann::json(*c.n_rx_rf) : nlohmann::json("all");
        j["dof_threshold"] = c.dof_threshold;
        j["quad_order"] = c.quad_order;
        j["mc_samples"] = c.mc_samples;
        j["seed"] = c.seed;
        j["enumeration_cap"] = c.enumeration_cap;
        j["ensemble_support"] = c.restrict_to_retained ? "retained" : "all";
        j["tx"] = surface(c.tx);
        j["rx"] = surface(c.rx);
        j["sweep"] = {{"tx_sizes", c.tx_sizes}, {"n_rx_rf", c.n_rx_rf_list}, {"k", c.k_list}};
        j["threads"] = c.threads;
        return j;
    }

    // Records what a run produced. Written next to the CSVs as
    // manifest_<command>.json; every emitted file is listed with its SHA-256.
    class run_manifest
    {
    public:
        run_manifest(std::string command, std::filesystem::path out_dir)
            : command_(std::move(command)), out_dir_(std::move(out_dir)), started_(utc_now()) {}

        void set_config(const scenario_config &cfg, const std::string &config_path)
        {
            doc_["config"] = to_json(cfg);
            doc_["config_path"] = config_path;
        }

        void add_output(const std::string &file_name, const std::string &content, std::size_t rows)
        {
            outputs_.push_back({{"file", file_name}, {"sha256", sha256_hex(content)}, {"rows", rows}});
        }

        void warn(const std::string &w) { warnings_.push_back(w); }

        void set_status(const std::string &status, const std::string &detail = {})
        {
            doc_["status"] = status;
            if (!detail.empty())
                doc_["error"] = detail;
        }

        std::filesystem::path path() const { return out_dir_ / ("manifest_" + command_ + ".json"); }

        void write()
        {
            doc_["tool"] = "holomimo";
            doc_["tool_version"] = HOLOMIMO_VERSION;
            doc_["command"] = command_;
            doc_["started_utc"] = started_;
            doc_["finished_utc"] = utc_now();
            doc_["outputs"] = outputs_;
            doc_["warnings"] = warnings_;
            if (!doc_.contains("status"))
                doc_["status"] = "ok";
            write_file_atomic(path(), doc_.dump(2) + "\n");
        }

    private:
        std::string command_;
        std::filesystem::path out_dir_;
        std::string started_;
        nlohmann::json doc_ = nlohmann::json::object();
        nlohmann::json outputs_ = nlohmann::json::array();
        nlohmann::json warnings_ = nlohmann::json::array();
    };
}

#endif
