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

#ifndef HOLOMIMO_QUADRATURE_HPP
#define HOLOMIMO_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace holomimo
{
    // Gauss-Legendre rule on [-1, 1]
    struct gauss_legendre_rule
    {
        std::vector<double> nodes;   // ascending
        std::vector<double> weights; // sum to 2
    };

    // Nodes are the roots of P_n, found by Newton iteration from the
    // Chebyshev-like initial guess cos(pi (i - 1/4) / (n + 1/2)).
    inline gauss_legendre_rule gauss_legendre(int order)
    {
        if (order < 1)
            fail(error_category::input, "gauss_legendre: order must be >= 1");

        const int n = order;
        gauss_legendre_rule rule;
        rule.nodes.assign(n, 0.0);
        rule.weights.assign(n, 0.0);

        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter)
            {
                // Three-term recurrence for P_n(x) and P_{n-1}(x)
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double pn = (n == 1) ? x : p1;
                const double pn1 = (n == 1) ? 1.0 : p0;
                dp = n * (x * pn - pn1) / (x * x - 1.0);
                const double dx = pn / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            // Recompute the derivative at the converged root
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);

            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1)
            rule.nodes[n / 2] = 0.0;
        return rule;
    }
}

#endif
