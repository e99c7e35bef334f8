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

#ifndef HOLOMIMO_ERROR_HPP
#define HOLOMIMO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace holomimo
{
    // Coarse failure classes. The CLI maps each one to its own exit code.
    enum class error_category
    {
        singularity,        // coincident source / observation points
        geometry,           // overlapping or malformed surfaces
        input,              // bad numeric input (non-finite, out of range, size mismatch)
        no_channel,         // every gain is zero
        insufficient_dof,   // fewer retained modes than RF chains
        ensemble_too_large, // C(N,K) exceeds the enumeration cap
        config,             // unreadable or invalid scenario file
        io                  // filesystem failure
    };

    inline std::string_view category_name(error_category c)
    {
        switch (c)
        {
        case error_category::singularity:
            return "singularity";
        case error_category::geometry:
            return "geometry";
        case error_category::input:
            return "input";
        case error_category::no_channel:
            return "no_channel";
        case error_category::insufficient_dof:
            return "insufficient_dof";
        case error_category::ensemble_too_large:
            return "ensemble_too_large";
        case error_category::config:
            return "config";
        case error_category::io:
            return "io";
        }
        return "unknown";
    }

    class error : public std::runtime_error
    {
    public:
        error(error_category category, const std::string &what)
            : std::runtime_error(what), category_(category) {}

        error_category category() const noexcept { return category_; }

    private:
        error_category category_;
    };

    [[noreturn]] inline void fail(error_category c, const std::string &what)
    {
        throw error(c, what);
    }
}

#endif
