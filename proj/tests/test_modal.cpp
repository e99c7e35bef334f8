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

#include <random>

#include "holomimo/modal.hpp"

using namespace holomimo;

namespace
{
    Eigen::MatrixXcd random_complex(Eigen::Index r, Eigen::Index c, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> n;
        Eigen::MatrixXcd M(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j)
                M(i, j) = {n(rng), n(rng)};
        return M;
    }

    Eigen::MatrixXcd embedded_diag(std::initializer_list<double> d, Eigen::Index rows, Eigen::Index cols)
    {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
        Eigen::Index i = 0;
        for (double v : d)
        {
            M(i, i) = v;
            ++i;
        }
        return M;
    }

    channel_matrix grid_channel(int n_tx, int n_rx, double d)
    {
        const auto w = wave::from_frequency(2.4e9);
        const double l = 0.4 * w.wavelength;
        return assemble_channel(surface_spec::contiguous(n_tx, n_tx, l, l, vec3::Zero()),
                                surface_spec::contiguous(n_rx, n_rx, l, l, {0, 0, d}), w, 4);
    }
}

TEST(Decompose, DiagonalChannel)
{
    const auto m = decompose(embedded_diag({1, 3, 2}, 3, 3), 0.1);
    ASSERT_EQ(m.size(), 3u);
    EXPECT_NEAR(m.singular_values[0], 3.0, 1e-14);
    EXPECT_NEAR(m.singular_values[1], 2.0, 1e-14);
    EXPECT_NEAR(m.singular_values[2], 1.0, 1e-14);
    EXPECT_EQ(m.retained_rank, 3u);
    EXPECT_EQ(count_dof(m), 3u);

    const auto spec = eig_spectrum(m);
    ASSERT_EQ(spec.size(), 3u);
    EXPECT_EQ(spec[0].index, 1u);
    EXPECT_NEAR(spec[0].sigma_sq, 9.0, 1e-13);
    EXPECT_NEAR(spec[1].sigma_sq, 4.0, 1e-13);
    EXPECT_NEAR(spec[2].sigma_sq, 1.0, 1e-13);
    EXPECT_EQ(spec[2].index, 3u);
}

TEST(Decompose, ZeroChannelHasRankZero)
{
    const auto m = decompose(Eigen::MatrixXcd::Zero(6, 9), 0.5);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_EQ(m.retained_rank, 0u);
    EXPECT_TRUE((m.singular_values.array() == 0.0).all());
}

TEST(Decompose, InputErrors)
{
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(3, 3);
    EXPECT_THROW(decompose(H, 0.0), error);
    EXPECT_THROW(decompose(H, 1.5), error);
    H(1, 2) = std::numeric_limits<double>::quiet_NaN();
    try
    {
        decompose(H, 0.1);
        FAIL();
    }
    catch (const error &e)
    {
        EXPECT_EQ(e.category(), error_category::input);
    }
}

TEST(CountDof, Examples)
{
    EXPECT_EQ(count_dof(decompose(embedded_diag({1, 0.5, 1e-9}, 3, 3), 1e-3)), 2u);
    EXPECT_EQ(count_dof(decompose(Eigen::MatrixXcd::Identity(5, 7) * 2.0, 1.0)), 5u);
    EXPECT_EQ(count_above(Eigen::VectorXd::Constant(4, 0.7), 0.9), 4u);
}

TEST(Decompose, ReconstructionAndOrthonormality)
{
    std::mt19937_64 rng(3);
    for (auto [r, c] : {std::pair{12, 12}, {9, 15}, {15, 6}})
    {
        const Eigen::MatrixXcd H = random_complex(r, c, rng);
        const auto m = decompose(H, 0.2, true);
        ASSERT_TRUE(m.tx_patterns && m.rx_patterns);
        const auto &U = *m.rx_patterns;
        const auto &V = *m.tx_patterns;
        const Eigen::Index k = Eigen::Index(m.size());
        EXPECT_LE((U.adjoint() * U - Eigen::MatrixXcd::Identity(k, k)).norm(), 1e-8);
        EXPECT_LE((V.adjoint() * V - Eigen::MatrixXcd::Identity(k, k)).norm(), 1e-8);
        const Eigen::MatrixXcd R = U * m.singular_values.cast<cplx>().asDiagonal() * V.adjoint();
        EXPECT_LE((R - H).norm(), 1e-8 * H.norm());
    }

    const auto H = grid_channel(4, 4, 0.5);
    const auto m = decompose(H, 0.3, true);
    const Eigen::MatrixXcd R = *m.rx_patterns * m.singular_values.cast<cplx>().asDiagonal() * m.tx_patterns->adjoint();
    EXPECT_LE((R - H.entries).norm(), 1e-8 * H.entries.norm());
}

TEST(Decompose, SortedAndFrobeniusIdentity)
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::MatrixXcd H = random_complex(10, 14, rng);
        const auto m = decompose(H, 0.1);
        for (std::size_t n = 1; n < m.size(); ++n)
            EXPECT_GE(m.singular_values[Eigen::Index(n - 1)], m.singular_values[Eigen::Index(n)]);
        EXPECT_GE(m.singular_values.minCoeff(), 0.0);
        EXPECT_NEAR(m.singular_values.squaredNorm(), H.squaredNorm(), 1e-10 * H.squaredNorm());
    }
}

TEST(Decompose, ThresholdMonotonicity)
{
    const auto m = decompose(grid_channel(4, 4, 0.3), 1.0);
    std::size_t prev = m.size() + 1;
    for (double t = 1e-6; t <= 1.0; t *= 1.5)
    {
        const std::size_t n = count_above(m.singular_values, t);
        EXPECT_LE(n, prev);
        prev = n;
    }
}

TEST(Decompose, ScaleEquivariance)
{
    std::mt19937_64 rng(9);
    const Eigen::MatrixXcd H = random_complex(8, 8, rng);
    const auto a = decompose(H, 0.25);
    for (double c : {1e-9, 0.5, 3.0, 1e6})
    {
        const auto b = decompose(Eigen::MatrixXcd(c * H), 0.25);
        EXPECT_LE((b.singular_values - c * a.singular_values).norm(), 1e-12 * c * a.singular_values.norm());
        EXPECT_EQ(b.retained_rank, a.retained_rank);
    }
}

TEST(CountDof, NonincreasingInDistance)
{
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double d : {1.0, 2.0, 5.0, 10.0, 20.0})
    {
        const std::size_t dof = count_dof(decompose(grid_channel(8, 8, d), 0.3));
        EXPECT_LE(dof, prev) << "d = " << d;
        prev = dof;
    }
    EXPECT_GE(count_dof(decompose(grid_channel(8, 8, 1.0), 0.3)), 4u);
}

TEST(EigSpectrum, LargerApertureSpreadsEigenvalues)
{
    // Going from 8x8 to 16x16 transmit patches multiplies the aperture by four:
    // the count of eigenvalues above 1% of the maximum grows faster than the
    // maximum itself.
    const auto small = decompose(grid_channel(8, 8, 0.5), 0.3);
    const auto large = decompose(grid_channel(16, 8, 0.5), 0.3);
    const double max_small = small.singular_values[0] * small.singular_values[0];
    const double max_large = large.singular_values[0] * large.singular_values[0];
    const double n_small = double(count_above(small.singular_values, 0.1));
    const double n_large = double(count_above(large.singular_values, 0.1));
    EXPECT_GE(n_large / n_small, 1.5);
    EXPECT_LE(max_large / max_small, 1.5);
    EXPECT_GT(n_large / n_small, max_large / max_small);
}
