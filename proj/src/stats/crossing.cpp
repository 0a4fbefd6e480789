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

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

namespace wbansim::stats
{

std::vector<std::size_t> downward_crossings(std::span<const double> values_db, double threshold_db)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < values_db.size(); ++i)
        if (values_db[i - 1] >= threshold_db && values_db[i] < threshold_db)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> outage_runs(std::span<const double> values_db, double threshold_db)
{
    std::vector<std::size_t> runs;
    std::size_t current = 0;
    for (double v : values_db)
    {
        if (v < threshold_db)
            ++current;
        else if (current > 0)
        {
            runs.push_back(current);
            current = 0;
        }
    }
    if (current > 0)
        runs.push_back(current);
    return runs;
}

double empirical_lcr(std::span<const double> values_db, double dt, double threshold_db)
{
    if (values_db.size() < 2)
        throw ParameterError("level crossing rate needs at least 2 samples");
    if (!(dt > 0.0))
        throw ParameterError("sample interval must be positive");
    const auto crossings = downward_crossings(values_db, threshold_db);
    const double n = static_cast<double>(crossings.size());
    if (crossings.size() < 2)
        return n / (static_cast<double>(values_db.size()) * dt);
    // The sum of consecutive gaps telescopes to last - first.
    const double span = static_cast<double>(crossings.back() - crossings.front()) * dt;
    return n / span;
}

double empirical_lcr(const link::SinrSeries &series, double threshold_db)
{
    return empirical_lcr(series.values, series.dt_packet, threshold_db);
}

double empirical_aod(std::span<const double> values_db, double dt, double threshold_db)
{
    if (values_db.empty())
        throw ParameterError("empty SINR series");
    if (!(dt > 0.0))
        throw ParameterError("sample interval must be positive");
    const auto runs = outage_runs(values_db, threshold_db);
    if (runs.empty())
        return 0.0;
    std::size_t total = 0;
    for (auto r : runs)
        total += r;
    return static_cast<double>(total) * dt / static_cast<double>(runs.size());
}

double empirical_aod(const link::SinrSeries &series, double threshold_db)
{
    return empirical_aod(series.values, series.dt_packet, threshold_db);
}

ThresholdCurve lcr_curve(std::span<const double> values_db, double dt, std::span<const double> thresholds_db)
{
    ThresholdCurve c{CurveKind::lcr, {thresholds_db.begin(), thresholds_db.end()}, {}};
    for (double th : thresholds_db)
        c.values.push_back(empirical_lcr(values_db, dt, th));
    c.validate();
    return c;
}

ThresholdCurve aod_curve(std::span<const double> values_db, double dt, std::span<const double> thresholds_db)
{
    ThresholdCurve c{CurveKind::aod, {thresholds_db.begin(), thresholds_db.end()}, {}};
    for (double th : thresholds_db)
        c.values.push_back(empirical_aod(values_db, dt, th));
    c.validate();
    return c;
}

bool supports_theoretical_lcr(Family family) { return family == Family::lognormal || family == Family::gamma; }

double theoretical_lcr(const FittedDistribution &dist, double threshold_db, double doppler_hz)
{
    if (!supports_theoretical_lcr(dist.family))
        throw UnsupportedFamilyError("no theoretical level crossing rate for the " +
                                     std::string(to_string(dist.family)) + " family");
    dist.validate();
    const double v = std::pow(10.0, threshold_db / 10.0);
    if (dist.family == Family::lognormal)
    {
        const double mu = dist.params[0];
        const double sigma = dist.params[1];
        const double z = std::log(v) - mu;
        return doppler_hz * std::exp(-(z * z) / (2.0 * sigma * sigma));
    }
    const double a = dist.params[0];
    const double b = dist.params[1];
    // Log domain: avoids overflow of v^(a-1/2) and Gamma(a).
    const double log_rate = std::log(doppler_hz) + 0.5 * std::log(2.0 * std::numbers::pi) + (a - 0.5) * (std::log(v) - std::log(b)) -
                            boost::math::lgamma(a) - v / b;
    return std::exp(log_rate);
}

double theoretical_aod(const FittedDistribution &dist, double threshold_db, double doppler_hz)
{
    const double rate = theoretical_lcr(dist, threshold_db, doppler_hz);
    if (!(rate > 0.0))
        throw UndefinedValueError("theoretical level crossing rate is zero at " + std::to_string(threshold_db) +
                                  " dB");
    const double aod = fitted_cdf(dist, std::pow(10.0, threshold_db / 10.0)) / rate;
    if (!std::isfinite(aod))
        throw UndefinedValueError("theoretical average outage duration overflows at " +
                                  std::to_string(threshold_db) + " dB");
    return aod;
}

ThresholdCurve theoretical_outage_curve(const FittedDistribution &dist, std::span<const double> thresholds_db)
{
    ThresholdCurve c{CurveKind::outage, {thresholds_db.begin(), thresholds_db.end()}, {}};
    for (double th : thresholds_db)
        c.values.push_back(fitted_cdf(dist, std::pow(10.0, th / 10.0)));
    return c;
}

ThresholdCurve theoretical_lcr_curve(const FittedDistribution &dist, std::span<const double> thresholds_db,
                                     double doppler_hz)
{
    ThresholdCurve c{CurveKind::lcr, {thresholds_db.begin(), thresholds_db.end()}, {}};
    for (double th : thresholds_db)
        c.values.push_back(theoretical_lcr(dist, th, doppler_hz));
    return c;
}

ThresholdCurve theoretical_aod_curve(const FittedDistribution &dist, std::span<const double> thresholds_db,
                                     double doppler_hz)
{
    ThresholdCurve c{CurveKind::aod, {thresholds_db.begin(), thresholds_db.end()}, {}};
    for (double th : thresholds_db)
    {
        const double rate = theoretical_lcr(dist, th, doppler_hz);
        const double aod = rate > 0.0 ? fitted_cdf(dist, std::pow(10.0, th / 10.0)) / rate : 0.0;
        c.values.push_back(std::isfinite(aod) ? aod : 0.0);
    }
    return c;
}

} // namespace wbansim::stats
