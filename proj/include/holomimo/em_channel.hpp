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

#ifndef HOLOMIMO_EM_CHANNEL_HPP
#define HOLOMIMO_EM_CHANNEL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "error.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace holomimo
{
    using vec3 = Eigen::Vector3d;
    using mat3c = Eigen::Matrix3cd;
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Carrier description. Always build through from_frequency() so the three
    // fields stay consistent.
    struct wave
    {
        double frequency = 0.0;  // Hz
        double wavelength = 0.0; // m
        double wavenumber = 0.0; // rad/m

        static wave from_frequency(double hz)
        {
            if (!(hz > 0.0) || !std::isfinite(hz))
                fail(error_category::input, "wave: frequency must be positive and finite");
            wave w;
            w.frequency = hz;
            w.wavelength = speed_of_light / hz;
            w.wavenumber = 2.0 * std::numbers::pi / w.wavelength;
            return w;
        }
    };

    // Planar rectangular grid of patches parallel to the x-y plane.
    // Patch (ix, iy) has linear index ix + nx * iy and center
    // origin + [ix * pitch_x, iy * pitch_y, 0].
    struct surface_spec
    {
        int nx = 1;
        int ny = 1;
        double lx = 0.0; // patch width [m]
        double ly = 0.0; // patch height [m]
        vec3 origin = vec3::Zero();
        double pitch_x = 0.0;
        double pitch_y = 0.0;

        // Contiguous tiling: pitch equals patch size
        static surface_spec contiguous(int nx, int ny, double lx, double ly, const vec3 &origin)
        {
            surface_spec s;
            s.nx = nx;
            s.ny = ny;
            s.lx = lx;
            s.ly = ly;
            s.origin = origin;
            s.pitch_x = lx;
            s.pitch_y = ly;
            return s;
        }

        std::size_t n_patches() const { return std::size_t(nx) * std::size_t(ny); }

        vec3 patch_center(std::size_t index) const
        {
            const auto ix = double(index % std::size_t(nx));
            const auto iy = double(index / std::size_t(nx));
            return origin + vec3(ix * pitch_x, iy * pitch_y, 0.0);
        }

        // Footprint of the whole surface: [x_min, x_max, y_min, y_max]
        Eigen::Vector4d footprint() const
        {
            return {origin.x() - 0.5 * lx, origin.x() + (nx - 1) * pitch_x + 0.5 * lx,
                    origin.y() - 0.5 * ly, origin.y() + (ny - 1) * pitch_y + 0.5 * ly};
        }

        void validate() const
        {
            if (nx < 1 || ny < 1)
                fail(error_category::geometry, "surface: patch counts must be >= 1");
            if (!(lx > 0.0) || !(ly > 0.0))
                fail(error_category::geometry, "surface: patch size must be positive");
            if (!(pitch_x >= lx) || !(pitch_y >= ly))
                fail(error_category::geometry, "surface: pitch smaller than patch size (patches overlap)");
            if (!origin.allFinite() || !std::isfinite(pitch_x) || !std::isfinite(pitch_y))
                fail(error_category::geometry, "surface: non-finite geometry");
        }
    };

    // Block channel of size (3 N_R) x (3 N_T); block (n_r, n_t) starts at (3 n_r, 3 n_t)
    struct channel_matrix
    {
        Eigen::MatrixXcd entries;

        std::size_t n_rx() const { return std::size_t(entries.rows()) / 3; }
        std::size_t n_tx() const { return std::size_t(entries.cols()) / 3; }

        mat3c block(std::size_t n_r, std::size_t n_t) const
        {
            return entries.block<3, 3>(Eigen::Index(3 * n_r), Eigen::Index(3 * n_t));
        }
    };

    // Free-space dyadic Green's function from source s to observation r:
    //   e^{jkR} / (4 pi R) [ (I - pp^T) + (j/(kR)) (I - 3pp^T) - (1/(kR)^2) (I - 3pp^T) ]
    // with p the unit vector along r - s.
    inline mat3c green_tensor(const vec3 &r, const vec3 &s, const wave &w)
    {
        const vec3 p = r - s;
        const double R = p.norm();
        if (!(R > 0.0))
            fail(error_category::singularity, "green_tensor: coincident source and observation points");

        const vec3 ph = p / R;
        const double kR = w.wavenumber * R;
        const cplx prefactor = std::polar(1.0 / (4.0 * std::numbers::pi * R), kR);
        const Eigen::Matrix3d pp = ph * ph.transpose();
        const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();

        const cplx near = cplx(-1.0 / (kR * kR), 1.0 / kR);
        mat3c G = (I - pp).cast<cplx>() + near * (I - 3.0 * pp).cast<cplx>();
        return prefactor * G;
    }

    namespace detail
    {
        // Offsets (x, y) and weights of a tensor Gauss-Legendre rule over a patch
        struct patch_rule
        {
            std::vector<double> x, y, w;
        };

        inline patch_rule make_patch_rule(double lx, double ly, int quad_order)
        {
            const auto gl = gauss_legendre(quad_order);
            patch_rule rule;
            for (int a = 0; a < quad_order; ++a)
                for (int b = 0; b < quad_order; ++b)
                {
                    rule.x.push_back(0.5 * lx * gl.nodes[a]);
                    rule.y.push_back(0.5 * ly * gl.nodes[b]);
                    rule.w.push_back(0.25 * lx * ly * gl.weights[a] * gl.weights[b]);
                }
            return rule;
        }

        inline mat3c integrate_patch(const vec3 &r, const vec3 &s, const patch_rule &rule,
                                     double rx_area, const wave &w)
        {
            mat3c acc = mat3c::Zero();
            for (std::size_t q = 0; q < rule.w.size(); ++q)
            {
                const vec3 node(s.x() - rule.x[q], s.y() - rule.y[q], s.z());
                acc += rule.w[q] * green_tensor(r, node, w);
            }
            return rx_area * acc;
        }
    }

    // One 3x3 channel block: receive-patch area times the integral of G over
    // the transmit patch, evaluated with a quad_order x quad_order
    // Gauss-Legendre rule.
    inline mat3c patch_block(const vec3 &r_center, const vec3 &s_center,
                             double tx_lx, double tx_ly, double rx_lx, double rx_ly,
                             const wave &w, int quad_order)
    {
        if (quad_order < 1)
            fail(error_category::input, "patch_block: quad_order must be >= 1");
        if (!(tx_lx > 0.0 && tx_ly > 0.0 && rx_lx > 0.0 && rx_ly > 0.0))
            fail(error_category::geometry, "patch_block: patch sizes must be positive");
        const auto rule = detail::make_patch_rule(tx_lx, tx_ly, quad_order);
        return detail::integrate_patch(r_center, s_center, rule, rx_lx * rx_ly, w);
    }

    // Two surfaces overlap when they share a plane and their footprints
    // intersect with positive area.
    inline bool surfaces_overlap(const surface_spec &a, const surface_spec &b)
    {
        const double scale = std::max({a.lx, a.ly, b.lx, b.ly});
        if (std::abs(a.origin.z() - b.origin.z()) > 1e-12 * scale)
            return false;
        const auto fa = a.footprint();
        const auto fb = b.footprint();
        const bool x_overlap = fa[0] < fb[1] && fb[0] < fa[1];
        const bool y_overlap = fa[2] < fb[3] && fb[2] < fa[3];
        return x_overlap && y_overlap;
    }

    // Fills every (n_r, n_t) block. Rows of blocks are distributed over
    // n_threads workers; the result does not depend on the thread count.
    inline channel_matrix assemble_channel(const surface_spec &tx, const surface_spec &rx,
                                           const wave &w, int quad_order, unsigned n_threads = 1)
    {
        tx.validate();
        rx.validate();
        if (quad_order < 1)
            fail(error_category::input, "assemble_channel: quad_order must be >= 1");
        if (surfaces_overlap(tx, rx))
            fail(error_category::geometry, "assemble_channel: transmit and receive surfaces overlap");

        const std::size_t n_t = tx.n_patches();
        const std::size_t n_r = rx.n_patches();
        const auto rule = detail::make_patch_rule(tx.lx, tx.ly, quad_order);
        const double rx_area = rx.lx * rx.ly;

        channel_matrix H;
        H.entries.resize(Eigen::Index(3 * n_r), Eigen::Index(3 * n_t));
        detail::parallel_for(n_r, n_threads, [&](std::size_t i_r)
                             {
            const vec3 r = rx.patch_center(i_r);
            for (std::size_t i_t = 0; i_t < n_t; ++i_t)
                H.entries.block<3, 3>(Eigen::Index(3 * i_r), Eigen::Index(3 * i_t)) =
                    detail::integrate_patch(r, tx.patch_center(i_t), rule, rx_area, w); });
        return H;
    }
}

#endif
