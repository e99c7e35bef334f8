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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

#include "holomimo.hpp"
#include "run_manifest.hpp"

namespace fs = std::filesystem;
using namespace holomimo;

namespace
{
    const char *cfg_text = R"(
[scenario]
distance_m = 1, 3
snr_db = 0:10:30
snr_convention = patch_averaged
mc_samples = 1000
seed = 5

[tx]
nx = 3
ny = 3
patch_wavelengths = 0.4

[rx]
nx = 3
ny = 3
patch_wavelengths = 0.4

[sweep]
tx_sizes = 2, 3
n_rx_rf = 1, 2
k = 1, 2
)";

    struct run_result
    {
        int code;
        std::string out, err;
    };

    class CliTest : public ::testing::Test
    {
    protected:
        fs::path dir;

        void SetUp() override
        {
            dir = fs::temp_directory_path() /
                  ("holomimo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
            fs::remove_all(dir);
            fs::create_directories(dir);
            write("scenario.cfg", cfg_text);
        }
        void TearDown() override { fs::remove_all(dir); }

        void write(const std::string &name, const std::string &text) { std::ofstream(dir / name) << text; }

        run_result run(const std::string &args)
        {
            const auto o = dir / "stdout.txt", e = dir / "stderr.txt";
            const std::string cmd = std::string(HOLOMIMO_CLI) + " " + args + " >" + o.string() + " 2>" + e.string();
            const int status = std::system(cmd.c_str());
            return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(o), read_file(e)};
        }

        std::string cfg() const { return (dir / "scenario.cfg").string(); }
    };
}

TEST_F(CliTest, EverySweepWritesCsvAndManifest)
{
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"dof", {"dof.csv"}},
        {"snr-sweep", {"snr_sweep_d1.csv", "snr_sweep_d3.csv"}},
        {"distance-sweep", {"distance_sweep_snr0.csv", "distance_sweep_snr30.csv"}},
        {"area-sweep", {"area_sweep_d1.csv", "area_sweep_d3.csv"}},
        {"rf-sweep", {"rf_rx_sweep_d1.csv", "rf_tx_sweep_d3.csv"}},
        {"eig", {"eig_tx2x2_d1.csv", "eig_tx3x3_d3.csv"}},
    };
    for (const auto &[command, files] : cases)
    {
        const auto out = dir / command;
        const auto r = run(command + " --config " + cfg() + " --out " + out.string() + " --threads 2");
        ASSERT_EQ(r.code, 0) << command << ": " << r.err;
        for (const auto &f : files)
            EXPECT_TRUE(fs::exists(out / f)) << f;

        const auto manifest = nlohmann::json::parse(read_file(out / ("manifest_" + command + ".json")));
        EXPECT_EQ(manifest["status"], "ok");
        EXPECT_EQ(manifest["command"], command);
        EXPECT_EQ(manifest["tool_version"], HOLOMIMO_VERSION);
        EXPECT_EQ(manifest["config"]["seed"], 5);
        EXPECT_EQ(manifest["config"]["snr_convention"], "patch_averaged");
        EXPECT_FALSE(manifest["started_utc"].get<std::string>().empty());
        std::size_t csv_count = 0;
        for (const auto &entry : fs::directory_iterator(out))
            csv_count += entry.path().extension() == ".csv";
        ASSERT_EQ(manifest["outputs"].size(), csv_count);
        for (const auto &o : manifest["outputs"])
        {
            const std::string content = read_file(out / o["file"].get<std::string>());
            EXPECT_EQ(o["sha256"], tools::sha256_hex(content));
            EXPECT_EQ(o["rows"].get<std::size_t>(), parse_csv(content).rows.size());
        }
    }
}

TEST_F(CliTest, RerunIsByteIdenticalAndSeedOverrides)
{
    ASSERT_EQ(run("snr-sweep --config " + cfg() + " --out " + (dir / "a").string()).code, 0);
    ASSERT_EQ(run("snr-sweep --config " + cfg() + " --out " + (dir / "b").string() + " --threads 3").code, 0);
    ASSERT_EQ(run("snr-sweep --config " + cfg() + " --out " + (dir / "c").string() + " --seed 99").code, 0);
    EXPECT_EQ(read_file(dir / "a" / "snr_sweep_d1.csv"), read_file(dir / "b" / "snr_sweep_d1.csv"));
    EXPECT_NE(read_file(dir / "a" / "snr_sweep_d1.csv"), read_file(dir / "c" / "snr_sweep_d1.csv"));
    const auto m = nlohmann::json::parse(read_file(dir / "c" / "manifest_snr-sweep.json"));
    EXPECT_EQ(m["config"]["seed"], 99);
}

TEST_F(CliTest, ErrorsAreMachineReadable)
{
    auto check = [&](const std::string &args, int code, const std::string &category)
    {
        const auto r = run(args);
        EXPECT_EQ(r.code, code) << args;
        const auto j = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')));
        EXPECT_EQ(j["error"], category) << args;
        EXPECT_FALSE(j["message"].get<std::string>().empty());
    };

    write("bad.cfg", "[scenario]\nunknown_key = 1\n");
    check("dof --config " + (dir / "bad.cfg").string() + " --out " + dir.string(), 9, "config");

    write("dof_short.cfg", "[scenario]\nk_tx_rf = 50\ndistance_m = 20\nmc_samples = 0\n"
                           "[tx]\nnx = 2\nny = 2\n[rx]\nnx = 2\nny = 2\n");
    check("distance-sweep --config " + (dir / "dof_short.cfg").string() + " --out " + (dir / "o").string(), 7,
          "insufficient_dof");
    const auto m = nlohmann::json::parse(read_file(dir / "o" / "manifest_distance-sweep.json"));
    EXPECT_EQ(m["status"], "error");

    check("dof", 2, "usage");
    check("nonsense", 2, "usage");
    check("compare gain --csv " + cfg() + " --key nope --from 1 --to 2", 5, "input");
}

TEST_F(CliTest, CompareSubcommands)
{
    ASSERT_EQ(run("distance-sweep --config " + cfg() + " --out " + dir.string()).code, 0);
    ASSERT_EQ(run("snr-sweep --config " + cfg() + " --out " + dir.string()).code, 0);

    const auto dist = read_csv(dir / "distance_sweep_snr20.csv");
    ASSERT_EQ(run("compare gain --csv " + (dir / "distance_sweep_snr20.csv").string() +
                  " --key distance_m --from 3 --to 1 --output " + (dir / "gain.csv").string())
                  .code,
              0);
    const auto gain = read_csv(dir / "gain.csv");
    ASSERT_EQ(gain.header, (std::vector<std::string>{"column", "from", "to", "value_from", "value_to", "gain_percent"}));
    ASSERT_EQ(gain.rows.size(), 2u);
    EXPECT_EQ(gain.rows[0][0], "se_bhps");
    const double expect = 100.0 * (dist.number(0, 1) / dist.number(1, 1) - 1.0);
    EXPECT_NEAR(gain.number(0, 5), expect, 1e-9 * std::abs(expect));

    const auto r = run("compare shift --far " + (dir / "snr_sweep_d3.csv").string() + " --near " +
                       (dir / "snr_sweep_d1.csv").string() + " --columns se_bhps,se_nuhpm_asym --target 3");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto shift = parse_csv(r.out);
    ASSERT_EQ(shift.rows.size(), 2u);
    EXPECT_GT(shift.number(0, 4), 0.0);
    EXPECT_NEAR(shift.number(0, 4), shift.number(0, 2) - shift.number(0, 3), 1e-12);

    const auto g = run("compare gap --csv " + (dir / "snr_sweep_d1.csv").string() + " --a se_nuhpm_asym --b se_bhps");
    ASSERT_EQ(g.code, 0);
    const auto gap = parse_csv(g.out);
    EXPECT_EQ(gap.header.back(), "gap");
    for (std::size_t i = 0; i < gap.rows.size(); ++i)
        EXPECT_GE(gap.number(i, gap.column("gap")), 0.0);

    EXPECT_EQ(run("compare shift --far " + (dir / "snr_sweep_d3.csv").string() + " --near " +
                  (dir / "snr_sweep_d1.csv").string() + " --columns se_bhps --target 1000")
                  .code,
              5);
}

TEST(Manifest, Sha256KnownVector)
{
    EXPECT_EQ(tools::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(tools::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
