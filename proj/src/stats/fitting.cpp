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

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>

namespace wbansim::stats
{

namespace
{

constexpr double newton_tol = 1e-8;
constexpr int newton_max_iter = 200;

struct Moments
{
    double mean = 0.0;
    double mean_log = 0.0;
    double mean_sq = 0.0;
    double var_log = 0.0;
};

Moments moments(std::span<const double> x, bool with_logs)
{
    Moments m;
    const double n = static_cast<double>(x.size());
    for (double v : x)
    {
        m.mean += v;
        m.mean_sq += v * v;
        if (with_logs)
            m.mean_log += std::log(v);
    }
    m.mean /= n;
    m.mean_sq /= n;
    m.mean_log /= n;
    if (with_logs)
    {
        for (double v : x)
        {
            const double d = std::log(v) - m.mean_log;
            m.var_log += d * d;
        }
        m.var_log /= n;
    }
    return m;
}

// Greenwood & Durand rational approximation to the gamma shape MLE, given
// s = ln(mean) - mean(ln x).
double gamma_shape_start(double s)
{
    if (s <= 0.5772)
        return (0.5000876 + 0.1648852 * s - 0.0544274 * s * s) / s;
    if (s <= 17.0)
        return (8.898919 + 9.059950 * s + 0.9775373 * s * s) / (s * (17.79728 + 11.968477 * s + s * s));
    return 1.0 / s;
}

// Solves ln(a) - digamma(a) = s by damped Newton.
double solve_gamma_shape(double s)
{
    if (!(s > 0.0))
        throw DegenerateInputError("samples have no dispersion in log domain");
    double a = gamma_shape_start(s);
    for (int it = 0; it < newton_max_iter; ++it)
    {
        const double f = std::log(a) - boost::math::digamma(a) - s;
        const double df = 1.0 / a - boost::math::trigamma(a);
        double next = a - f / df;
        while (!(next > 0.0))
            next = 0.5 * (next + a > 0.0 ? next + a : a);
        if (std::abs(next - a) <= newton_tol * a)
            return next;
        a = next;
    }
    return a;
}

FittedDistribution with_fit(FittedDistribution d, std::span<const double> x)
{
    d.n = x.size();
    d.nll = negative_log_likelihood(d, x);
    return d;
}

FittedDistribution fit_weibull(std::span<const double> x, const Moments &m)
{
    // Profile likelihood in k on log-centred data z = ln x - mean(ln x):
    //   g(k) = sum(e^{kz} z) / sum(e^{kz}) - 1/k = 0, increasing in k.
    std::vector<double> z(x.size());
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        z[i] = std::log(x[i]) - m.mean_log;
        zmax = std::max(zmax, z[i]);
    }
    auto sums = [&](double k, double &s0, double &s1, double &s2)
    {
        s0 = s1 = s2 = 0.0;
        for (double zi : z)
        {
            const double e = std::exp(k * (zi - zmax));
            s0 += e;
            s1 += e * zi;
            s2 += e * zi * zi;
        }
    };

    double k = 1.2825498301618641 / std::sqrt(m.var_log); // pi / sqrt(6 var)
    for (int it = 0; it < newton_max_iter; ++it)
    {
        double s0, s1, s2;
        sums(k, s0, s1, s2);
        const double r1 = s1 / s0;
        const double g = r1 - 1.0 / k;
        const double dg = s2 / s0 - r1 * r1 + 1.0 / (k * k);
        double next = k - g / dg;
        if (!(next > 0.0))
            next = 0.5 * k;
        const bool done = std::abs(next - k) <= newton_tol * k;
        k = next;
        if (done)
            break;
    }
    double s0, s1, s2;
    sums(k, s0, s1, s2);
    // lambda = (mean x^k)^{1/k} = exp(mean ln x + zmax) * (mean e^{k(z - zmax)})^{1/k}
    const double lambda = std::exp(m.mean_log + zmax + std::log(s0 / static_cast<double>(z.size())) / k);
    return FittedDistribution::weibull(k, lambda);
}

} // namespace

FittedDistribution fit_family(Family family, std::span<const double> x)
{
    if (x.size() < 2)
        throw ParameterError("need at least 2 samples to fit");
    for (double v : x)
    {
        if (!std::isfinite(v))
            throw ParameterError("samples must be finite");
        if (positive_support(family) && !(v > 0.0))
            throw ParameterError(std::string(to_string(family)) + " requires strictly positive samples");
    }

    const Moments m = moments(x, positive_support(family));
    switch (family)
    {
    case Family::normal:
    {
        const double var = m.mean_sq - m.mean * m.mean;
        double ss = 0.0;
        for (double v : x)
            ss += (v - m.mean) * (v - m.mean);
        if (!(ss > 0.0) || !(var >= 0.0))
            throw DegenerateInputError("samples have zero variance");
        return with_fit(FittedDistribution::normal(m.mean, std::sqrt(ss / static_cast<double>(x.size()))), x);
    }
    case Family::lognormal:
        if (!(m.var_log > 0.0))
            throw DegenerateInputError("samples have zero variance");
        return with_fit(FittedDistribution::lognormal(m.mean_log, std::sqrt(m.var_log)), x);
    case Family::gamma:
    {
        const double a = solve_gamma_shape(std::log(m.mean) - m.mean_log);
        return with_fit(FittedDistribution::gamma(a, m.mean / a), x);
    }
    case Family::weibull:
        if (!(m.var_log > 0.0))
            throw DegenerateInputError("samples have zero variance");
        return with_fit(fit_weibull(x, m), x);
    case Family::nakagami_m:
    {
        // x^2 ~ Gamma(m, w/m), so the MLE of w is mean(x^2) and m solves the gamma shape equation.
        const double w = m.mean_sq;
        const double s = std::log(w) - 2.0 * m.mean_log;
        const double shape = std::max(0.5, solve_gamma_shape(s));
        return with_fit(FittedDistribution::nakagami(shape, w), x);
    }
    case Family::rayleigh:
        return with_fit(FittedDistribution::rayleigh(std::sqrt(m.mean_sq / 2.0)), x);
    }
    throw UnsupportedFamilyError("unknown family");
}

namespace
{

bool nests(Family outer, Family inner)
{
    return inner == Family::rayleigh && (outer == Family::weibull || outer == Family::nakagami_m);
}

} // namespace

FitResult fit_best_distribution(std::span<const double> samples, std::span<const Family> families,
                                const FitOptions &options)
{
    if (samples.size() < 30)
        throw ParameterError("distribution fitting needs at least 30 samples");
    if (families.empty())
        throw ParameterError("no families requested");
    double lo = samples[0], hi = samples[0];
    for (double v : samples)
    {
        if (!std::isfinite(v))
            throw ParameterError("samples must be finite");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi)
        throw DegenerateInputError("samples have zero variance");

    FitResult result;
    for (auto f : families)
    {
        if (positive_support(f) && !(lo > 0.0))
        {
            result.skipped.emplace_back(f, "non-positive sample outside the support");
            continue;
        }
        result.candidates.push_back(fit_family(f, samples));
    }
    if (result.candidates.empty())
        throw ParameterError("no requested family supports the samples");

    const auto best = std::min_element(result.candidates.begin(), result.candidates.end(),
                                       [](const auto &a, const auto &b) { return a.nll < b.nll; });
    result.best = *best;
    const double tol = options.nested_tolerance_per_sample * static_cast<double>(samples.size());
    for (const auto &c : result.candidates)
        if (nests(result.best.family, c.family) && c.nll - result.best.nll <= tol)
            result.best = c;
    return result;
}

} // namespace wbansim::stats
