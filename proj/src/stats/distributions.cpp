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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace wbansim::stats
{

namespace
{

constexpr std::array<Family, 6> family_list{Family::normal,  Family::lognormal,  Family::gamma,
                                            Family::weibull, Family::nakagami_m, Family::rayleigh};

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);

} // namespace

std::string_view to_string(Family family)
{
    switch (family)
    {
    case Family::normal:
        return "normal";
    case Family::lognormal:
        return "lognormal";
    case Family::gamma:
        return "gamma";
    case Family::weibull:
        return "weibull";
    case Family::nakagami_m:
        return "nakagami_m";
    case Family::rayleigh:
        return "rayleigh";
    }
    return "normal";
}

Family parse_family(std::string_view text)
{
    for (auto f : family_list)
        if (to_string(f) == text)
            return f;
    throw ParameterError("unknown distribution family '" + std::string(text) + "'");
}

std::span<const Family> all_families() { return family_list; }

bool positive_support(Family family) { return family != Family::normal; }

std::size_t parameter_count(Family family) { return family == Family::rayleigh ? 1 : 2; }

FittedDistribution FittedDistribution::normal(double mu, double sigma)
{
    FittedDistribution d{Family::normal, {mu, sigma}, 0.0, 0};
    d.validate();
    return d;
}

FittedDistribution FittedDistribution::lognormal(double mu, double sigma)
{
    FittedDistribution d{Family::lognormal, {mu, sigma}, 0.0, 0};
    d.validate();
    return d;
}

FittedDistribution FittedDistribution::gamma(double shape, double scale)
{
    FittedDistribution d{Family::gamma, {shape, scale}, 0.0, 0};
    d.validate();
    return d;
}

FittedDistribution FittedDistribution::weibull(double shape, double scale)
{
    FittedDistribution d{Family::weibull, {shape, scale}, 0.0, 0};
    d.validate();
    return d;
}

FittedDistribution FittedDistribution::nakagami(double m, double spread)
{
    FittedDistribution d{Family::nakagami_m, {m, spread}, 0.0, 0};
    d.validate();
    return d;
}

FittedDistribution FittedDistribution::rayleigh(double scale)
{
    FittedDistribution d{Family::rayleigh, {scale, 0.0}, 0.0, 0};
    d.validate();
    return d;
}

void FittedDistribution::validate() const
{
    const auto &[p0, p1] = params;
    const std::string name(to_string(family));
    auto positive = [&](double v, const char *what)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParameterError(name + ": " + what + " must be positive and finite");
    };
    switch (family)
    {
    case Family::normal:
    case Family::lognormal:
        if (!std::isfinite(p0))
            throw ParameterError(name + ": location must be finite");
        positive(p1, "sigma");
        break;
    case Family::gamma:
    case Family::weibull:
        positive(p0, "shape");
        positive(p1, "scale");
        break;
    case Family::nakagami_m:
        if (!(p0 >= 0.5) || !std::isfinite(p0))
            throw ParameterError(name + ": m must be >= 0.5");
        positive(p1, "spread");
        break;
    case Family::rayleigh:
        positive(p0, "scale");
        break;
    }
}

double fitted_logpdf(const FittedDistribution &dist, double x)
{
    const auto &[p0, p1] = dist.params;
    if (positive_support(dist.family) && !(x > 0.0))
        return neg_inf;
    switch (dist.family)
    {
    case Family::normal:
    {
        const double z = (x - p0) / p1;
        return -half_log_two_pi - std::log(p1) - 0.5 * z * z;
    }
    case Family::lognormal:
    {
        const double lx = std::log(x);
        const double z = (lx - p0) / p1;
        return -lx - half_log_two_pi - std::log(p1) - 0.5 * z * z;
    }
    case Family::gamma:
        return (p0 - 1.0) * std::log(x) - x / p1 - boost::math::lgamma(p0) - p0 * std::log(p1);
    case Family::weibull:
    {
        const double lz = std::log(x / p1);
        return std::log(p0 / p1) + (p0 - 1.0) * lz - std::exp(p0 * lz);
    }
    case Family::nakagami_m:
        return std::log(2.0) + p0 * std::log(p0) - boost::math::lgamma(p0) - p0 * std::log(p1) +
               (2.0 * p0 - 1.0) * std::log(x) - p0 * x * x / p1;
    case Family::rayleigh:
        return std::log(x) - 2.0 * std::log(p0) - x * x / (2.0 * p0 * p0);
    }
    return neg_inf;
}

double fitted_cdf(const FittedDistribution &dist, double x)
{
    const auto &[p0, p1] = dist.params;
    if (std::isnan(x))
        throw ParameterError("cdf argument is NaN");
    if (positive_support(dist.family) && !(x > 0.0))
        return 0.0;
    if (std::isinf(x))
        return x > 0 ? 1.0 : 0.0;
    switch (dist.family)
    {
    case Family::normal:
        return 0.5 * std::erfc(-(x - p0) / (p1 * std::numbers::sqrt2));
    case Family::lognormal:
        return 0.5 * std::erfc(-(std::log(x) - p0) / (p1 * std::numbers::sqrt2));
    case Family::gamma:
        return boost::math::gamma_p(p0, x / p1);
    case Family::weibull:
        return -std::expm1(-std::pow(x / p1, p0));
    case Family::nakagami_m:
        return boost::math::gamma_p(p0, p0 * x * x / p1);
    case Family::rayleigh:
        return -std::expm1(-x * x / (2.0 * p0 * p0));
    }
    return 0.0;
}

double negative_log_likelihood(const FittedDistribution &dist, std::span<const double> samples)
{
    double acc = 0.0;
    for (double x : samples)
        acc -= fitted_logpdf(dist, x);
    return acc;
}

} // namespace wbansim::stats
