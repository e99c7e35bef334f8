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

#ifndef HOLOMIMO_MODAL_HPP
#define HOLOMIMO_MODAL_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "em_channel.hpp"
#include "error.hpp"

namespace holomimo
{
    // Singular-value view of a channel, H = Psi * diag(singular_values) * Phi^H.
    //
    // The pattern matrices, when requested, hold all min(rows, cols) thin
    // singular vectors; the first retained_rank columns are the retained
    // transmit (Phi) and receive (Psi) holographic patterns.
    struct modal_channel
    {
        Eigen::VectorXd singular_values; // descending, >= 0
        std::size_t retained_rank = 0;
        double threshold_ratio = 1.0;
        std::optional<Eigen::MatrixXcd> tx_patterns; // Phi, 3 N_T x min
        std::optional<Eigen::MatrixXcd> rx_patterns; // Psi, 3 N_R x min

        std::size_t size() const { return std::size_t(singular_values.size()); }

        // Squared singular values of the retained modes (the per-mode channel gains)
        Eigen::VectorXd retained_gains() const
        {
            return singular_values.head(Eigen::Index(retained_rank)).array().square();
        }
    };

    // Number of singular values at or above ratio * largest. Zero for an
    // all-zero spectrum.
    inline std::size_t count_above(const Eigen::VectorXd &descending, double ratio)
    {
        if (descending.size() == 0 || !(descending[0] > 0.0))
            return 0;
        const double cut = ratio * descending[0];
        std::size_t n = 0;
        while (n < std::size_t(descending.size()) && descending[Eigen::Index(n)] >= cut)
            ++n;
        return n;
    }

    inline modal_channel decompose(const Eigen::MatrixXcd &H, double threshold_ratio,
                                   bool with_patterns = false)
    {
        if (!(threshold_ratio > 0.0 && threshold_ratio <= 1.0))
            fail(error_category::input, "decompose: threshold_ratio must lie in (0, 1]");
        if (!H.allFinite())
            fail(error_category::input, "decompose: channel has non-finite entries");

        modal_channel m;
        m.threshold_ratio = threshold_ratio;
        if (H.size() == 0)
            return m;

        const unsigned options = with_patterns ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(H, options);
        m.singular_values = svd.singularValues(); // Eigen returns them sorted descending
        m.retained_rank = count_above(m.singular_values, threshold_ratio);
        if (with_patterns)
        {
            m.rx_patterns = svd.matrixU();
            m.tx_patterns = svd.matrixV();
        }
        return m;
    }

    inline modal_channel decompose(const channel_matrix &H, double threshold_ratio,
                                   bool with_patterns = false)
    {
        return decompose(H.entries, threshold_ratio, with_patterns);
    }

    // Spatial degrees of freedom: modes far from zero relative to the strongest one
    inline std::size_t count_dof(const modal_channel &m) { return m.retained_rank; }

    struct eigen_entry
    {
        std::size_t index; // 1-based
        double sigma_sq;
    };

    // Full unthresholded list of squared singular values, descending
    inline std::vector<eigen_entry> eig_spectrum(const modal_channel &m)
    {
        std::vector<eigen_entry> out;
        out.reserve(m.size());
        for (std::size_t n = 0; n < m.size(); ++n)
        {
            const double s = m.singular_values[Eigen::Index(n)];
            out.push_back({n + 1, s * s});
        }
        return out;
    }
}

#endif
