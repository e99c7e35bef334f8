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

#ifndef HOLOMIMO_HPP
#define HOLOMIMO_HPP

#include "holomimo/capacity.hpp"
#include "holomimo/config.hpp"
#include "holomimo/csv.hpp"
#include "holomimo/em_channel.hpp"
#include "holomimo/error.hpp"
#include "holomimo/mc_sim.hpp"
#include "holomimo/modal.hpp"
#include "holomimo/quadrature.hpp"
#include "holomimo/scenario.hpp"

#define HOLOMIMO_VERSION "0.1.0"

#endif
