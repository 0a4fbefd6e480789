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

#include "wbansim/channel.hpp"
#include "wbansim/errors.hpp"
#include "wbansim/numeric.hpp"

#include <cmath>
#include <numbers>

namespace wbansim::channel
{

namespace
{

std::size_t sample_count(double duration, double dt)
{
    if (!(dt > 0.0))
        throw ParameterError("dt must be positive");
    if (!(duration > 0.0) || duration < dt * (1.0 - 1e-9))
        throw ParameterError("duration must be at least one sample interval");
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

} // namespace

std::vector<std::complex<double>> jakes_envelope(double doppler_hz, std::size_t n, double dt, std::uint64_t seed,
                                                 std::size_t oscillators)
{
    if (!(doppler_hz > 0.0))
        throw ParameterError("doppler_hz must be positive");
    if (!(dt > 0.0))
        throw ParameterError("dt must be positive");
    if (oscillators == 0)
        throw ParameterError("at least one oscillator is required");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto rng = make_rng(seed, {0x4a414b4553ull});
    std::uniform_real_distribution<double> phase_dist(0.0, two_pi);

    const double n_osc = static_cast<double>(oscillators);
    std::vector<double> omega(oscillators);
    std::vector<double> phase(oscillators);
    for (std::size_t m = 0; m < oscillators; ++m)
    {
        const double angle = two_pi * (static_cast<double>(m) + 0.25) / n_osc;
        omega[m] = two_pi * doppler_hz * std::cos(angle);
        phase[m] = phase_dist(rng);
    }

    // Phasor recurrence, re-anchored to the exact phase every `resync` samples.
    constexpr std::size_t resync = 256;
    std::vector<std::complex<double>> rot(oscillators);
    std::vector<std::complex<double>> cur(oscillators);
    for (std::size_t m = 0; m < oscillators; ++m)
        rot[m] = std::polar(1.0, omega[m] * dt);

    const double norm = 1.0 / std::sqrt(n_osc);
    std::vector<std::complex<double>> h(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        if (k % resync == 0)
        {
            const double t = static_cast<double>(k) * dt;
            for (std::size_t m = 0; m < oscillators; ++m)
                cur[m] = std::polar(1.0, omega[m] * t + phase[m]);
        }
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < oscillators; ++m)
        {
            acc += cur[m];
            cur[m] *= rot[m];
        }
        h[k] = acc * norm;
    }
    return h;
}

ChannelTrace gen_small_scale(const FadingSpec &spec, double duration, double dt, std::uint64_t seed, LinkId link)
{
    spec.validate();
    const std::size_t n = sample_count(duration, dt);
    const auto h = jakes_envelope(spec.doppler_hz, n, dt, seed);
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k)
        samples[k] = linear_to_db(std::norm(h[k]));
    return ChannelTrace(std::move(link), 0.0, dt, std::move(samples));
}

ChannelTrace gen_onbody(double mean_db, double shadow_std_db, double coherence_s, double fast_std_db,
                        double duration, double dt, std::uint64_t seed, LinkId link)
{
    if (!(shadow_std_db >= 0.0) || !(fast_std_db >= 0.0))
        throw ParameterError("standard deviations must be non-negative");
    if (!(coherence_s > 0.0))
        throw ParameterError("coherence time must be positive");
    const std::size_t n = sample_count(duration, dt);

    auto rng = make_rng(seed, {0x4f4e424f4459ull});
    std::normal_distribution<double> unit(0.0, 1.0);
    const double rho = std::pow(0.7, dt / coherence_s);
    const double innovation = std::sqrt(1.0 - rho * rho);

    std::vector<double> samples(n);
    double slow = shadow_std_db * unit(rng);
    for (std::size_t k = 0; k < n; ++k)
    {
        if (k > 0)
            slow = rho * slow + innovation * shadow_std_db * unit(rng);
        const double fast = fast_std_db * unit(rng);
        samples[k] = mean_db + slow + fast;
    }
    return ChannelTrace(std::move(link), 0.0, dt, std::move(samples));
}

ChannelTrace gen_interbody(std::span<const double> distance_m, const FadingSpec &spec, ShadowingLevel level,
                           double dt, std::uint64_t seed, LinkId link)
{
    spec.validate();
    if (distance_m.empty())
        throw ParameterError("empty distance series");
    const double duration = static_cast<double>(distance_m.size()) * dt;
    auto fading = gen_small_scale(spec, duration, dt, seed);
    const double shadow = shadowing_offset_db(level, spec);
    const auto ss = fading.samples();

    std::vector<double> samples(distance_m.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        samples[k] = path_loss_db(distance_m[k], spec) + shadow + ss[k];
    return ChannelTrace(std::move(link), 0.0, dt, std::move(samples));
}

double path_loss_db(double distance_m, const FadingSpec &spec)
{
    if (!(distance_m > 0.0))
        throw ParameterError("distance must be positive");
    return spec.reference_gain_db - 10.0 * spec.path_loss_exponent * std::log10(distance_m);
}

double shadowing_offset_db(ShadowingLevel level, const FadingSpec &spec)
{
    switch (level)
    {
    case ShadowingLevel::none:
        return 0.0;
    case ShadowingLevel::partial:
        return spec.shadow_offset_db / 2.0;
    case ShadowingLevel::full:
        return spec.shadow_offset_db;
    }
    return 0.0;
}

} // namespace wbansim::channel
