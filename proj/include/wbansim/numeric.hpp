// wbansim - coexistence simulator for wireless body area networks
// Copyright (C) 2026 The wbansim Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string>
#include <string_view>

namespace wbansim
{

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// 10·log10(x); returns -inf for x == 0.
inline double linear_to_db(double x)
{
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(x);
}

// Seeded generator for an independent stream. `stream` words distinguish
// consumers sharing one user seed (per network, per link, ...).
std::mt19937_64 make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

// Stable 64-bit FNV-1a hash, used for config fingerprints and per-name seed streams.
std::uint64_t fnv1a64(std::string_view text);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Strict full-string parse; returns false on trailing garbage or empty input.
bool parse_double(std::string_view text, double &value);

} // namespace wbansim
