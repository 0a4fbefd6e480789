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

#include "wbansim/errors.hpp"
#include "wbansim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wbansim::stats
{

namespace
{

void check_pair(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw ParameterError("signal and interference lengths differ");
    if (a.size() < 2)
        throw ParameterError("need at least 2 paired samples");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
            throw ParameterError("samples must be finite");
}

} // namespace

double cross_correlation(std::span<const double> signal, std::span<const double> interference)
{
    check_pair(signal, interference);
    const double n = static_cast<double>(signal.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i)
    {
        ma += signal[i];
        mb += interference[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i)
    {
        const double da = signal[i] - ma;
        const double db = interference[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
        throw DegenerateInputError("correlation undefined for zero-variance input");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

IndependenceResult independence_check(std::span<const double> signal, std::span<const double> interference,
                                      std::size_t bins)
{
    check_pair(signal, interference);
    if (bins < 2)
        throw ParameterError("independence check needs at least 2 bins");

    auto binner = [bins](std::span<const double> x)
    {
        const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
        const double lo = *lo_it, hi = *hi_it;
        if (!(hi > lo))
            throw DegenerateInputError("independence check undefined for zero-range input");
        std::vector<std::size_t> idx(x.size());
        const double w = (hi - lo) / static_cast<double>(bins);
        for (std::size_t i = 0; i < x.size(); ++i)
            idx[i] = std::min(bins - 1, static_cast<std::size_t>((x[i] - lo) / w));
        return idx;
    };
    const auto ia = binner(signal);
    const auto ib = binner(interference);

    std::vector<double> joint(bins * bins, 0.0), pa(bins, 0.0), pb(bins, 0.0);
    const double inv_n = 1.0 / static_cast<double>(signal.size());
    for (std::size_t i = 0; i < ia.size(); ++i)
    {
        joint[ia[i] * bins + ib[i]] += inv_n;
        pa[ia[i]] += inv_n;
        pb[ib[i]] += inv_n;
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < bins; ++i)
        for (std::size_t j = 0; j < bins; ++j)
            tv += std::abs(joint[i * bins + j] - pa[i] * pb[j]);

    IndependenceResult r;
    r.score = 0.5 * tv;
    r.n = signal.size();
    r.bins = bins;
    r.undersampled = signal.size() < bins * bins;
    return r;
}

} // namespace wbansim::stats
