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

namespace wbansim::stats
{

std::string_view to_string(CurveKind kind)
{
    switch (kind)
    {
    case CurveKind::outage:
        return "outage";
    case CurveKind::lcr:
        return "lcr";
    case CurveKind::aod:
        return "aod";
    }
    return "outage";
}

void ThresholdCurve::validate() const
{
    if (thresholds_db.size() != values.size())
        throw ParameterError("curve thresholds and values differ in length");
    for (std::size_t i = 1; i < thresholds_db.size(); ++i)
        if (!(thresholds_db[i] > thresholds_db[i - 1]))
            throw ParameterError("curve thresholds must be strictly ascending");
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (!(values[i] >= 0.0))
            throw ParameterError("curve values must be non-negative");
        if (kind == CurveKind::outage)
        {
            if (values[i] > 1.0)
                throw ParameterError("outage probability above 1");
            if (i > 0 && values[i] < values[i - 1])
                throw ParameterError("outage curve must be non-decreasing");
        }
    }
}

std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db)
{
    if (!(step_db > 0.0) || !(hi_db >= lo_db))
        throw ParameterError("threshold grid needs step > 0 and hi >= lo");
    const auto n = static_cast<std::size_t>(std::floor((hi_db - lo_db) / step_db + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo_db + static_cast<double>(i) * step_db;
    return out;
}

double outage_fraction(std::span<const double> values_db, double threshold_db)
{
    if (values_db.empty())
        throw ParameterError("empty SINR series");
    const auto below = std::count_if(values_db.begin(), values_db.end(), [&](double v) { return v < threshold_db; });
    return static_cast<double>(below) / static_cast<double>(values_db.size());
}

ThresholdCurve outage_probability(std::span<const double> values_db, std::span<const double> thresholds_db)
{
    if (values_db.empty())
        throw ParameterError("empty SINR series");
    std::vector<double> sorted(values_db.begin(), values_db.end());
    std::sort(sorted.begin(), sorted.end());

    ThresholdCurve curve{CurveKind::outage, {thresholds_db.begin(), thresholds_db.end()}, {}};
    const double n = static_cast<double>(sorted.size());
    for (double th : thresholds_db)
    {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), th) - sorted.begin();
        curve.values.push_back(static_cast<double>(below) / n);
    }
    curve.validate();
    return curve;
}

ThresholdCurve outage_probability(const link::SinrSeries &series, std::span<const double> thresholds_db)
{
    return outage_probability(series.values, thresholds_db);
}

double outage_threshold(std::span<const double> values_db, double probability)
{
    if (values_db.empty())
        throw ParameterError("empty SINR series");
    if (!(probability > 0.0) || probability > 1.0)
        throw ParameterError("outage probability must be in (0, 1]");
    std::vector<double> sorted(values_db.begin(), values_db.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    auto k = static_cast<std::size_t>(std::ceil(probability * n - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    return sorted[k - 1];
}

ThresholdCurve average_curves(std::span<const ThresholdCurve> curves)
{
    if (curves.empty())
        throw ParameterError("no curves to average");
    ThresholdCurve out{curves.front().kind, curves.front().thresholds_db,
                       std::vector<double>(curves.front().values.size(), 0.0)};
    for (const auto &c : curves)
    {
        if (c.kind != out.kind || c.thresholds_db != out.thresholds_db)
            throw ParameterError("curves to average must share kind and thresholds");
        for (std::size_t i = 0; i < c.values.size(); ++i)
            out.values[i] += c.values[i];
    }
    for (auto &v : out.values)
        v /= static_cast<double>(curves.size());
    return out;
}

} // namespace wbansim::stats
