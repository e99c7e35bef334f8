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

#ifndef HOLOMIMO_CAPACITY_HPP
#define HOLOMIMO_CAPACITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "modal.hpp"
#include "parallel.hpp"

namespace holomimo
{
    // One candidate selection of K active modes with its optimal per-stream
    // powers. D = I + Lambda E Q E^H Lambda^H / noise_var is diagonal, with
    // entries diag[j] on the support and 1 elsewhere.
    struct pattern
    {
        std::vector<std::size_t> subset; // sorted mode indices (0-based)
        std::vector<double> powers;      // diagonal of Q, sums to 1
        std::vector<double> diag;        // 1 + powers[j] * gain[subset[j]] / noise_var
        double log2_det = 0.0;           // log2 det D >= 0
        double water_level = 0.0;        // water-filling level mu

        double det() const { return std::exp2(log2_det); }
    };

    struct pattern_ensemble
    {
        std::vector<pattern> patterns;
        std::vector<double> probabilities; // proportional to det D
        double noise_var = 1.0;
        std::vector<double> gains; // lambda_n^2 of the modes patterns are drawn from
        std::size_t K = 1;

        std::size_t size() const { return patterns.size(); }
        std::size_t n_modes() const { return gains.size(); }
    };

    // ---------------------------------------------------------------------------
    // Enumeration

    // C(n, k), saturating at uint64 max
    inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
    {
        if (k > n)
            return 0;
        k = std::min(k, n - k);
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= k; ++i)
        {
            const std::uint64_t num = n - k + i;
            // r * num / i is exact at every step; guard the multiplication
            const std::uint64_t g = std::gcd(r, i);
            const std::uint64_t r_red = r / g, i_red = i / g;
            const std::uint64_t num_red = num / i_red;
            if (r_red > std::numeric_limits<std::uint64_t>::max() / num_red)
                return std::numeric_limits<std::uint64_t>::max();
            r = r_red * num_red;
        }
        return r;
    }

    // All K-subsets of {0, ..., N-1} in lexicographic order
    inline std::vector<std::vector<std::size_t>> enumerate_patterns(std::size_t N, std::size_t K,
                                                                    std::uint64_t cap)
    {
        if (K < 1 || K > N)
            fail(error_category::input, "enumerate_patterns: need 1 <= K <= N");
        if (cap < 1)
            fail(error_category::input, "enumerate_patterns: cap must be >= 1");
        const std::uint64_t count = binomial(N, K);
        if (count > cap)
            fail(error_category::ensemble_too_large,
                 "enumerate_patterns: C(" + std::to_string(N) + "," + std::to_string(K) +
                     ") exceeds the enumeration cap of " + std::to_string(cap) +
                     "; use the equal-power fast path");

        std::vector<std::vector<std::size_t>> out;
        out.reserve(std::size_t(count));
        std::vector<std::size_t> c(K);
        std::iota(c.begin(), c.end(), std::size_t(0));
        while (true)
        {
            out.push_back(c);
            // Rightmost position that can still advance
            std::size_t i = K;
            while (i > 0 && c[i - 1] == N - K + (i - 1))
                --i;
            if (i == 0)
                break;
            ++c[i - 1];
            for (std::size_t j = i; j < K; ++j)
                c[j] = c[j - 1] + 1;
        }
        return out;
    }

    // ---------------------------------------------------------------------------
    // Water-filling

    struct water_fill_result
    {
        std::vector<double> powers;
        double water_level = 0.0; // mu
    };

    // powers[j] = (mu - noise_var / gains[j])^+ with sum(powers) = budget.
    // Exact: streams are activated strongest-first until the next stream's
    // floor noise_var / g lies at or above the resulting water level.
    inline water_fill_result water_fill(std::span<const double> gains, double noise_var, double budget)
    {
        if (!(noise_var > 0.0) || !std::isfinite(noise_var))
            fail(error_category::input, "water_fill: noise_var must be positive and finite");
        if (!(budget > 0.0) || !std::isfinite(budget))
            fail(error_category::input, "water_fill: budget must be positive and finite");

        std::vector<std::size_t> order;
        for (std::size_t j = 0; j < gains.size(); ++j)
        {
            if (!(gains[j] >= 0.0) || !std::isfinite(gains[j]))
                fail(error_category::input, "water_fill: gains must be finite and >= 0");
            if (gains[j] > 0.0)
                order.push_back(j);
        }
        if (order.empty())
            fail(error_category::no_channel, "water_fill: all channel gains are zero");

        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b)
                         { return gains[a] > gains[b]; });

        // Floors noise_var / g, ascending along `order`
        double floor_sum = 0.0, mu = 0.0;
        std::size_t active = 0;
        for (std::size_t m = 1; m <= order.size(); ++m)
        {
            const double floor_m = noise_var / gains[order[m - 1]];
            const double mu_m = (budget + floor_sum + floor_m) / double(m);
            if (m > 1 && floor_m >= mu_m)
                break;
            floor_sum += floor_m;
            mu = mu_m;
            active = m;
        }

        water_fill_result r;
        r.water_level = mu;
        r.powers.assign(gains.size(), 0.0);
        for (std::size_t m = 0; m < active; ++m)
        {
            const std::size_t j = order[m];
            r.powers[j] = std::max(0.0, mu - noise_var / gains[j]);
        }
        return r;
    }

    // ---------------------------------------------------------------------------
    // Ensembles

    namespace detail
    {
        inline pattern make_pattern(std::vector<std::size_t> subset, std::span<const double> gains,
                                    double noise_var)
        {
            std::vector<double> g(subset.size());
            for (std::size_t j = 0; j < subset.size(); ++j)
                g[j] = gains[subset[j]];

            // A subset with no usable gain still belongs to the ensemble (det D = 1);
            // its power split is irrelevant, so spread it evenly.
            water_fill_result wf;
            if (std::all_of(g.begin(), g.end(), [](double v)
                            { return v == 0.0; }))
            {
                wf.powers.assign(g.size(), 1.0 / double(g.size()));
                wf.water_level = std::numeric_limits<double>::infinity();
            }
            else
                wf = water_fill(g, noise_var, 1.0);
            pattern p;
            p.subset = std::move(subset);
            p.powers = std::move(wf.powers);
            p.water_level = wf.water_level;
            p.diag.resize(g.size());
            for (std::size_t j = 0; j < g.size(); ++j)
            {
                p.diag[j] = 1.0 + p.powers[j] * g[j] / noise_var;
                p.log2_det += std::log2(p.diag[j]);
            }
            return p;
        }

        // log2 sum_i 2^{x_i}
        inline double log2_sum_exp2(std::span<const double> x)
        {
            if (x.empty())
                return -std::numeric_limits<double>::infinity();
            const double m = *std::max_element(x.begin(), x.end());
            double s = 0.0;
            for (double v : x)
                s += std::exp2(v - m);
            return m + std::log2(s);
        }

        inline void check_ensemble_inputs(std::span<const double> gains, std::size_t K, double noise_var)
        {
            if (K < 1)
                fail(error_category::input, "ensemble: K must be >= 1");
            if (!(noise_var > 0.0) || !std::isfinite(noise_var))
                fail(error_category::input, "ensemble: noise_var must be positive and finite");
            if (gains.size() < K)
                fail(error_category::insufficient_dof,
                     "ensemble: " + std::to_string(gains.size()) + " retained modes < K = " + std::to_string(K));
        }
    }

    // Water-fills every K-subset of the given modes (budget 1 each) and assigns
    // activation probabilities proportional to det D.
    inline pattern_ensemble build_ensemble(std::span<const double> gains, std::size_t K, double noise_var,
                                           std::uint64_t cap, unsigned n_threads = 1)
    {
        detail::check_ensemble_inputs(gains, K, noise_var);
        auto subsets = enumerate_patterns(gains.size(), K, cap);

        pattern_ensemble ens;
        ens.noise_var = noise_var;
        ens.gains.assign(gains.begin(), gains.end());
        ens.K = K;
        ens.patterns.resize(subsets.size());
        detail::parallel_for(subsets.size(), n_threads, [&](std::size_t i)
                             { ens.patterns[i] = detail::make_pattern(std::move(subsets[i]), gains, noise_var); });

        std::vector<double> l(ens.size());
        for (std::size_t i = 0; i < ens.size(); ++i)
            l[i] = ens.patterns[i].log2_det;
        const double lse = detail::log2_sum_exp2(l);
        ens.probabilities.resize(ens.size());
        for (std::size_t i = 0; i < ens.size(); ++i)
            ens.probabilities[i] = std::exp2(l[i] - lse);
        return ens;
    }

    inline pattern_ensemble build_ensemble(const modal_channel &m, std::size_t K, double noise_var,
                                           std::uint64_t cap, unsigned n_threads = 1)
    {
        const Eigen::VectorXd g = m.retained_gains();
        return build_ensemble(std::span<const double>(g.data(), std::size_t(g.size())), K, noise_var, cap,
                              n_threads);
    }

    // log2 sum_i det D_i: the high-SNR NUHPM capacity at the optimal inputs
    inline double nuhpm_asymptotic_capacity(const pattern_ensemble &ens)
    {
        std::vector<double> l(ens.size());
        for (std::size_t i = 0; i < ens.size(); ++i)
            l[i] = ens.patterns[i].log2_det;
        return detail::log2_sum_exp2(l);
    }

    // sum_i p_i log2 det D_i - sum_i p_i log2 p_i at an arbitrary activation distribution
    inline double asymptotic_mi(const pattern_ensemble &ens, std::span<const double> probabilities)
    {
        if (probabilities.size() != ens.size())
            fail(error_category::input, "asymptotic_mi: probability vector length does not match the ensemble");
        double total = 0.0, mi = 0.0;
        for (std::size_t i = 0; i < ens.size(); ++i)
        {
            const double p = probabilities[i];
            if (!(p >= 0.0) || !std::isfinite(p))
                fail(error_category::input, "asymptotic_mi: probabilities must be finite and >= 0");
            total += p;
            if (p > 0.0)
                mi += p * (ens.patterns[i].log2_det - std::log2(p));
        }
        if (std::abs(total - 1.0) > 1e-9)
            fail(error_category::input, "asymptotic_mi: probabilities do not sum to 1");
        return mi;
    }

    struct bhps_result
    {
        std::vector<std::size_t> subset;
        double capacity = 0.0; // bit/s/Hz
    };

    // Best holographic pattern selection: the K strongest modes (ties go to the
    // lower index), water-filled.
    inline bhps_result bhps_capacity(std::span<const double> gains, std::size_t K, double noise_var)
    {
        detail::check_ensemble_inputs(gains, K, noise_var);
        std::vector<std::size_t> order(gains.size());
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b)
                         { return gains[a] > gains[b]; });
        std::vector<std::size_t> subset(order.begin(), order.begin() + std::ptrdiff_t(K));
        std::sort(subset.begin(), subset.end());

        const auto p = detail::make_pattern(subset, gains, noise_var);
        return {p.subset, p.log2_det};
    }

    inline bhps_result bhps_capacity(const modal_channel &m, std::size_t K, double noise_var)
    {
        const Eigen::VectorXd g = m.retained_gains();
        return bhps_capacity(std::span<const double>(g.data(), std::size_t(g.size())), K, noise_var);
    }

    // log2 e_K(a), e_K the K-th elementary symmetric polynomial. All a_n > 0, so
    // the O(NK) recurrence e_k <- e_k + a_n e_{k-1} involves no cancellation;
    // inputs are rescaled by max(a) to keep the running sums bounded.
    inline double log2_elementary_symmetric(std::span<const double> a, std::size_t K)
    {
        if (K == 0)
            return 0.0;
        if (K > a.size())
            return -std::numeric_limits<double>::infinity();
        const double scale = *std::max_element(a.begin(), a.end());
        if (!(scale > 0.0))
            fail(error_category::input, "elementary_symmetric: inputs must be positive");

        std::vector<long double> e(K + 1, 0.0L);
        e[0] = 1.0L;
        for (double an : a)
        {
            const long double b = (long double)an / (long double)scale;
            for (std::size_t k = K; k >= 1; --k)
                e[k] += b * e[k - 1];
        }
        return double(K) * std::log2(scale) + double(std::log2(e[K]));
    }

    // Equal per-stream power 1/K: det D_i factorizes, so sum_i det D_i = e_K(a)
    // with a_n = 1 + gain_n / (K noise_var). No enumeration needed.
    inline double fast_capacity_equal_power(std::span<const double> gains, std::size_t K, double noise_var)
    {
        detail::check_ensemble_inputs(gains, K, noise_var);
        std::vector<double> a(gains.size());
        for (std::size_t n = 0; n < gains.size(); ++n)
            a[n] = 1.0 + gains[n] / (double(K) * noise_var);
        return log2_elementary_symmetric(a, K);
    }

    inline double fast_capacity_equal_power(const modal_channel &m, std::size_t K, double noise_var)
    {
        const Eigen::VectorXd g = m.retained_gains();
        return fast_capacity_equal_power(std::span<const double>(g.data(), std::size_t(g.size())), K, noise_var);
    }

    // ---------------------------------------------------------------------------
    // Pairwise determinants

    // log det(a D_i + b D_j) over n_modes coordinates, from the diagonal structure.
    // Coordinates outside both supports contribute log(a + b).
    inline double log_det_pair_sum(const pattern &pi, const pattern &pj, std::size_t n_modes,
                                   double a = 1.0, double b = 1.0)
    {
        double acc = 0.0;
        std::size_t touched = 0, u = 0, v = 0;
        const auto &si = pi.subset;
        const auto &sj = pj.subset;
        while (u < si.size() || v < sj.size())
        {
            double di = 1.0, dj = 1.0;
            if (v == sj.size() || (u < si.size() && si[u] < sj[v]))
                di = pi.diag[u++];
            else if (u == si.size() || sj[v] < si[u])
                dj = pj.diag[v++];
            else
            {
                di = pi.diag[u++];
                dj = pj.diag[v++];
            }
            acc += std::log(a * di + b * dj);
            ++touched;
        }
        acc += double(n_modes - touched) * std::log(a + b);
        return acc;
    }

    // sum_{j != i} p_j / det(D_i + D_j). Vanishes as the noise variance goes to
    // zero, which is what separates the Gaussian-mixture components.
    inline double cross_term_mass(const pattern_ensemble &ens, std::size_t i)
    {
        if (i >= ens.size())
            fail(error_category::input, "cross_term_mass: pattern index out of range");
        double s = 0.0;
        for (std::size_t j = 0; j < ens.size(); ++j)
            if (j != i)
                s += ens.probabilities[j] * std::exp(-log_det_pair_sum(ens.patterns[i], ens.patterns[j], ens.n_modes()));
        return s;
    }
}

#endif
