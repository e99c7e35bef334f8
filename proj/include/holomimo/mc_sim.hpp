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

#ifndef HOLOMIMO_MC_SIM_HPP
#define HOLOMIMO_MC_SIM_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "capacity.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace holomimo
{
    struct mi_estimate
    {
        double value = 0.0;     // bit/s/Hz
        double std_error = 0.0; // bit/s/Hz
        std::size_t samples = 0;
        std::uint64_t seed = 0;
    };

    struct output_sample
    {
        std::size_t pattern_index = 0;
        Eigen::VectorXcd y; // length n_modes
    };

    // SplitMix64 finalizer, used to derive independent per-chunk seeds
    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk)
    {
        return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632BE59BD9B4E019ull));
    }

    // Draws (i, y) with i ~ p and y = Lambda E_i s + z, s ~ CN(0, Q_i), z ~ CN(0, noise_var I)
    class output_sampler
    {
    public:
        explicit output_sampler(const pattern_ensemble &ens)
            : ens_(ens),
              pick_(ens.probabilities.begin(), ens.probabilities.end()),
              amplitude_(ens.gains.size())
        {
            if (ens.size() == 0)
                fail(error_category::input, "output_sampler: empty ensemble");
            for (std::size_t n = 0; n < ens.gains.size(); ++n)
                amplitude_[n] = std::sqrt(ens.gains[n]);
        }

        template <typename Rng>
        void draw(Rng &rng, output_sample &out)
        {
            const std::size_t N = ens_.n_modes();
            const double noise_scale = std::sqrt(0.5 * ens_.noise_var);
            out.y.resize(Eigen::Index(N));
            for (std::size_t n = 0; n < N; ++n)
            {
                const double re = normal_(rng), im = normal_(rng);
                out.y[Eigen::Index(n)] = noise_scale * std::complex<double>(re, im);
            }
            out.pattern_index = pick_(rng);
            const auto &pat = ens_.patterns[out.pattern_index];
            for (std::size_t j = 0; j < pat.subset.size(); ++j)
            {
                const std::size_t n = pat.subset[j];
                const double sym_scale = std::sqrt(0.5 * pat.powers[j]);
                const double re = normal_(rng), im = normal_(rng);
                out.y[Eigen::Index(n)] += amplitude_[n] * sym_scale * std::complex<double>(re, im);
            }
        }

    private:
        const pattern_ensemble &ens_;
        std::discrete_distribution<std::size_t> pick_;
        std::normal_distribution<double> normal_{0.0, 1.0};
        std::vector<double> amplitude_;
    };

    inline output_sample sample_output(const pattern_ensemble &ens, std::uint64_t rng_seed)
    {
        std::mt19937_64 rng(rng_seed);
        output_sampler sampler(ens);
        output_sample s;
        sampler.draw(rng, s);
        return s;
    }

    namespace detail
    {
        // Returns (||y||^2 / noise_var, ln sum_i p_i exp(c_i)) where c_i is the
        // correction of pattern i's log-density relative to pure noise:
        //   c_i = -sum_{j in S_i} [ ln d_ij + |y_j|^2 / noise_var (1/d_ij - 1) ]
        // so that ln f(y) = -N ln(pi noise_var) - q + lse.
        struct mixture_terms
        {
            double q;
            double lse;
        };

        inline mixture_terms mixture_log_terms(const Eigen::VectorXcd &y, const pattern_ensemble &ens,
                                               std::vector<double> &scratch)
        {
            const std::size_t N = ens.n_modes();
            if (std::size_t(y.size()) != N)
                fail(error_category::input, "gm_log_density: observation length does not match the ensemble");
            if (ens.size() == 0)
                fail(error_category::input, "gm_log_density: empty ensemble");

            const double inv_nv = 1.0 / ens.noise_var;
            double q;
            if (N > 256)
            {
                long double acc = 0.0L;
                for (Eigen::Index n = 0; n < y.size(); ++n)
                    acc += (long double)std::norm(y[n]);
                q = double(acc * inv_nv);
            }
            else
                q = y.squaredNorm() * inv_nv;

            scratch.resize(ens.size());
            double c_max = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < ens.size(); ++i)
            {
                const auto &pat = ens.patterns[i];
                double c = std::log(ens.probabilities[i]);
                for (std::size_t j = 0; j < pat.subset.size(); ++j)
                {
                    const double d = pat.diag[j];
                    const double a = std::norm(y[Eigen::Index(pat.subset[j])]) * inv_nv;
                    c -= std::log(d) + a * (1.0 / d - 1.0);
                }
                scratch[i] = c;
                c_max = std::max(c_max, c);
            }
            double s = 0.0;
            for (double c : scratch)
                s += std::exp(c - c_max);
            return {q, c_max + std::log(s)};
        }
    }

    // log2 of the Gaussian-mixture density sum_i p_i CN(y; 0, noise_var D_i)
    inline double gm_log_density(const Eigen::VectorXcd &y, const pattern_ensemble &ens)
    {
        std::vector<double> scratch;
        const auto t = detail::mixture_log_terms(y, ens, scratch);
        const double N = double(ens.n_modes());
        const double ln_f = -N * std::log(std::numbers::pi * ens.noise_var) - t.q + t.lse;
        return ln_f / std::numbers::ln2;
    }

    // Differential entropy of the noise, N log2(pi e noise_var)
    inline double conditional_entropy(const pattern_ensemble &ens)
    {
        return double(ens.n_modes()) * std::log2(std::numbers::pi * std::numbers::e * ens.noise_var);
    }

    // Exact entropy of a single Gaussian component, log2 det(pi e noise_var D_i)
    inline double gaussian_entropy(const pattern_ensemble &ens, std::size_t i)
    {
        return conditional_entropy(ens) + ens.patterns.at(i).log2_det;
    }

    // Pairwise-overlap lower bound on the mixture entropy:
    //   -sum_i p_i log2( sum_j p_j / (pi^N det(noise_var (D_i + D_j))) )
    inline double entropy_lower_bound(const pattern_ensemble &ens)
    {
        const std::size_t E = ens.size();
        const double N = double(ens.n_modes());
        std::vector<double> terms(E);
        double weighted = 0.0;
        for (std::size_t i = 0; i < E; ++i)
        {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < E; ++j)
            {
                terms[j] = std::log(ens.probabilities[j]) -
                           log_det_pair_sum(ens.patterns[i], ens.patterns[j], ens.n_modes());
                m = std::max(m, terms[j]);
            }
            double s = 0.0;
            for (double t : terms)
                s += std::exp(t - m);
            weighted += ens.probabilities[i] * (m + std::log(s));
        }
        return (N * std::log(std::numbers::pi * ens.noise_var) - weighted) / std::numbers::ln2;
    }

    namespace detail
    {
        struct running_moments
        {
            std::size_t n = 0;
            double mean = 0.0;
            double m2 = 0.0;

            void push(double x)
            {
                ++n;
                const double d = x - mean;
                mean += d / double(n);
                m2 += d * (x - mean);
            }

            // Chan et al. pairwise merge
            void merge(const running_moments &o)
            {
                if (o.n == 0)
                    return;
                const double total = double(n + o.n);
                const double d = o.mean - mean;
                mean += d * double(o.n) / total;
                m2 += o.m2 + d * d * double(n) * double(o.n) / total;
                n += o.n;
            }
        };
    }

    // Plug-in Monte Carlo estimate of I(x; y) = E[-log2 f(y)] - N log2(pi e noise_var).
    // Samples are split into fixed-size chunks, each with its own derived seed,
    // and reduced in chunk order, so the result depends only on
    // (ensemble, samples, seed, chunk_size) and not on n_threads.
    inline mi_estimate mc_mutual_information(const pattern_ensemble &ens, std::size_t samples,
                                             std::uint64_t seed, unsigned n_threads = 1,
                                             std::size_t chunk_size = 4096)
    {
        if (samples < 1000)
            fail(error_category::input, "mc_mutual_information: need at least 1000 samples");
        if (chunk_size < 1)
            fail(error_category::input, "mc_mutual_information: chunk_size must be >= 1");
        if (ens.size() == 0)
            fail(error_category::input, "mc_mutual_information: empty ensemble");

        const std::size_t n_chunks = (samples + chunk_size - 1) / chunk_size;
        std::vector<detail::running_moments> partial(n_chunks);
        const double N = double(ens.n_modes());

        detail::parallel_for(n_chunks, n_threads, [&](std::size_t c)
                             {
            std::mt19937_64 rng(chunk_seed(seed, c));
            output_sampler sampler(ens);
            output_sample s;
            std::vector<double> scratch;
            const std::size_t begin = c * chunk_size;
            const std::size_t end = std::min(samples, begin + chunk_size);
            auto &acc = partial[c];
            for (std::size_t m = begin; m < end; ++m)
            {
                sampler.draw(rng, s);
                const auto t = detail::mixture_log_terms(s.y, ens, scratch);
                // -log2 f(y) - N log2(pi e noise_var), without forming either large term
                acc.push((t.q - N - t.lse) / std::numbers::ln2);
            } });

        detail::running_moments total;
        for (const auto &p : partial)
            total.merge(p);

        mi_estimate est;
        est.value = total.mean;
        est.std_error = std::sqrt(total.m2 / double(total.n - 1)) / std::sqrt(double(total.n));
        est.samples = samples;
        est.seed = seed;
        return est;
    }
}

#endif
