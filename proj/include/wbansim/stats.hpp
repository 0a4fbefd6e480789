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

#include "wbansim/link.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wbansim::stats
{

// --- distributions ---------------------------------------------------------

enum class Family
{
    normal,     ///< {mu_n, sigma_n}
    lognormal,  ///< {mu, sigma} of ln x
    gamma,      ///< {a shape, b scale}
    weibull,    ///< {k shape, lambda scale}
    nakagami_m, ///< {m shape, w spread}
    rayleigh    ///< {scale}
};

std::string_view to_string(Family family);
Family parse_family(std::string_view text);
std::span<const Family> all_families();

/// True for families whose support is x > 0.
bool positive_support(Family family);
std::size_t parameter_count(Family family);

/// A distribution with its parameters and, when produced by a fit, the
/// negative log-likelihood of the fitted samples.
struct FittedDistribution
{
    Family family = Family::normal;
    std::array<double, 2> params{};
    double nll = 0.0;
    std::size_t n = 0;

    static FittedDistribution normal(double mu, double sigma);
    static FittedDistribution lognormal(double mu, double sigma);
    static FittedDistribution gamma(double shape, double scale);
    static FittedDistribution weibull(double shape, double scale);
    static FittedDistribution nakagami(double m, double spread);
    static FittedDistribution rayleigh(double scale);

    /// Throws ParameterError unless every scale/shape parameter is valid.
    void validate() const;
};

double fitted_logpdf(const FittedDistribution &dist, double x);

/// CDF at the linear value x: erfc for normal/lognormal, regularized lower
/// incomplete gamma for gamma/Nakagami, closed forms otherwise.
double fitted_cdf(const FittedDistribution &dist, double x);

double negative_log_likelihood(const FittedDistribution &dist, std::span<const double> samples);

/// Maximum-likelihood fit of one family. Throws ParameterError when a
/// positive-support family meets a non-positive sample.
FittedDistribution fit_family(Family family, std::span<const double> samples);

struct FitOptions
{
    /// When the minimum-NLL family nests a one-parameter family (Weibull and
    /// Nakagami-m both contain Rayleigh), the nested family is kept if its NLL
    /// is within this many nats per sample.
    double nested_tolerance_per_sample = 1e-4;
};

struct FitResult
{
    FittedDistribution best;
    std::vector<FittedDistribution> candidates;
    std::vector<std::pair<Family, std::string>> skipped;
};

/// Fits every requested family and keeps the minimum negative log-likelihood.
/// Needs n >= 30 finite samples with non-zero variance.
FitResult fit_best_distribution(std::span<const double> samples, std::span<const Family> families = all_families(),
                                const FitOptions &options = {});

// --- threshold statistics ----------------------------------------------------

enum class CurveKind
{
    outage, ///< probability
    lcr,    ///< Hz
    aod     ///< s
};

std::string_view to_string(CurveKind kind);

struct ThresholdCurve
{
    CurveKind kind = CurveKind::outage;
    std::vector<double> thresholds_db;
    std::vector<double> values;

    void validate() const;
};

/// Ascending threshold grid lo, lo+step, ..., <= hi.
std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db);

/// Fraction of samples strictly below the threshold.
double outage_fraction(std::span<const double> values_db, double threshold_db);

ThresholdCurve outage_probability(std::span<const double> values_db, std::span<const double> thresholds_db);
ThresholdCurve outage_probability(const link::SinrSeries &series, std::span<const double> thresholds_db);

/// Empirical p-quantile: the smallest sample value v with Pr(x <= v) >= p.
double outage_threshold(std::span<const double> values_db, double probability);

/// Indices i with values[i-1] >= th and values[i] < th.
std::vector<std::size_t> downward_crossings(std::span<const double> values_db, double threshold_db);

/// Lengths (in samples) of maximal runs strictly below the threshold.
std::vector<std::size_t> outage_runs(std::span<const double> values_db, double threshold_db);

/// n crossings divided by the time spanned from the first to the last
/// crossing; with fewer than two crossings, n over the observation time
/// (samples · dt).
double empirical_lcr(std::span<const double> values_db, double dt, double threshold_db);
double empirical_lcr(const link::SinrSeries &series, double threshold_db);

/// Mean duration of the outage runs; 0 when there are none.
double empirical_aod(std::span<const double> values_db, double dt, double threshold_db);
double empirical_aod(const link::SinrSeries &series, double threshold_db);

ThresholdCurve lcr_curve(std::span<const double> values_db, double dt, std::span<const double> thresholds_db);
ThresholdCurve aod_curve(std::span<const double> values_db, double dt, std::span<const double> thresholds_db);

/// Level crossing rate implied by a lognormal or gamma fit at a dB threshold
/// (converted to linear SINR):
///   lognormal  f_D·exp(-(ln v - mu)^2 / (2 sigma^2))
///   gamma      f_D·sqrt(2 pi)·v^(a-1/2) / (Gamma(a)·b^(a-1/2))·exp(-v/b)
/// Throws UnsupportedFamilyError for other families.
double theoretical_lcr(const FittedDistribution &dist, double threshold_db, double doppler_hz);

/// F(v) / LCR(v). Throws UndefinedValueError when the LCR is zero.
double theoretical_aod(const FittedDistribution &dist, double threshold_db, double doppler_hz);

bool supports_theoretical_lcr(Family family);

ThresholdCurve theoretical_outage_curve(const FittedDistribution &dist, std::span<const double> thresholds_db);
ThresholdCurve theoretical_lcr_curve(const FittedDistribution &dist, std::span<const double> thresholds_db,
                                     double doppler_hz);
/// Thresholds where the LCR underflows to zero get value 0.
ThresholdCurve theoretical_aod_curve(const FittedDistribution &dist, std::span<const double> thresholds_db,
                                     double doppler_hz);

/// Point-wise mean of curves sharing kind and threshold grid.
ThresholdCurve average_curves(std::span<const ThresholdCurve> curves);

// --- signal / interference dependence --------------------------------------

/// Pearson correlation coefficient.
double cross_correlation(std::span<const double> signal, std::span<const double> interference);

struct IndependenceResult
{
    double score = 0.0; ///< total variation between joint and product-of-marginals histograms
    bool undersampled = false; ///< n < bins^2
    std::size_t n = 0;
    std::size_t bins = 0;
};

IndependenceResult independence_check(std::span<const double> signal, std::span<const double> interference,
                                      std::size_t bins);

} // namespace wbansim::stats
