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

#include <algorithm>
#include <cmath>

namespace wbansim::channel
{

namespace
{

constexpr double rel_tol = 1e-9;

bool same_step(double a, double b) { return std::abs(a - b) <= rel_tol * std::max(a, b); }

} // namespace

ChannelTrace offset(const ChannelTrace &trace, double delta_db)
{
    std::vector<double> out(trace.samples().begin(), trace.samples().end());
    for (auto &s : out)
        s += delta_db;
    return ChannelTrace(trace.link(), trace.t0(), trace.dt(), std::move(out), trace.metadata());
}

ChannelTrace apply_shadowing(const ChannelTrace &trace, ShadowingLevel level, const FadingSpec &spec)
{
    if (level == ShadowingLevel::none)
        return trace;
    return offset(trace, shadowing_offset_db(level, spec));
}

ChannelTrace resample(const ChannelTrace &trace, double target_dt)
{
    const double dt = trace.dt();
    if (!(target_dt > 0.0) || target_dt < dt * (1.0 - rel_tol))
        throw ParameterError("resample target " + std::to_string(target_dt) + " s is finer than trace dt " +
                             std::to_string(dt) + " s");
    if (same_step(target_dt, dt))
        return trace;

    const auto in = trace.samples();
    const double total = static_cast<double>(in.size()) * dt;
    const auto blocks = static_cast<std::size_t>(std::floor(total / target_dt + rel_tol));
    if (blocks == 0)
        throw ParameterError("trace " + trace.link().str() + " is shorter than one resampling block");

    std::vector<double> sum(blocks, 0.0);
    std::vector<std::size_t> count(blocks, 0);
    for (std::size_t k = 0; k < in.size(); ++k)
    {
        const auto j = static_cast<std::size_t>(std::floor(static_cast<double>(k) * dt / target_dt + rel_tol));
        if (j >= blocks)
            break;
        sum[j] += in[k];
        ++count[j];
    }
    std::vector<double> out(blocks);
    for (std::size_t j = 0; j < blocks; ++j)
        out[j] = sum[j] / static_cast<double>(count[j]);
    return ChannelTrace(trace.link(), trace.t0(), target_dt, std::move(out), trace.metadata());
}

double coherence_time(const ChannelTrace &trace, double threshold)
{
    const auto x = trace.samples();
    const std::size_t n = x.size();
    if (n < 3)
        throw ParameterError("coherence time needs at least 3 samples");

    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> dev(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        dev[i] = x[i] - mean;
        var += dev[i] * dev[i];
    }
    if (!(var > 0.0))
        throw DegenerateInputError("trace " + trace.link().str() + " has zero variance");

    for (std::size_t lag = 1; lag < n; ++lag)
    {
        double acc = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i)
            acc += dev[i] * dev[i + lag];
        if (acc / var < threshold)
            return static_cast<double>(lag) * trace.dt();
    }
    throw DegenerateInputError("autocorrelation of " + trace.link().str() + " never drops below threshold");
}

ChannelTrace extract_large_scale(const ChannelTrace &trace, double window_s)
{
    const double dt = trace.dt();
    if (!(window_s >= dt * (1.0 - rel_tol)))
        throw ParameterError("moving-average window shorter than one sample");
    const auto half = static_cast<std::size_t>(std::floor((window_s / dt - 1.0) / 2.0 + rel_tol));
    if (half == 0)
        return trace;

    // Prefix sums of deviations from the first sample keep constant traces exact.
    const auto x = trace.samples();
    const std::size_t n = x.size();
    const double ref = x[0];
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + (x[i] - ref);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n, i + half + 1);
        out[i] = ref + (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }
    return ChannelTrace(trace.link(), trace.t0(), dt, std::move(out), trace.metadata());
}

ChannelTrace extract_large_scale(const ChannelTrace &trace)
{
    return extract_large_scale(trace, 2.0 * coherence_time(trace));
}

ChannelTrace overlay(const ChannelTrace &interbody, const ChannelTrace &onbody_shadow)
{
    const double dt = interbody.dt();
    if (!same_step(dt, onbody_shadow.dt()))
        throw ParameterError("overlay: sampling intervals differ (" + std::to_string(dt) + " vs " +
                             std::to_string(onbody_shadow.dt()) + " s); resample first");

    const double start = std::max(interbody.t0(), onbody_shadow.t0());
    const double end = std::min(interbody.end_time(), onbody_shadow.end_time());
    if (end - start < dt * (1.0 - rel_tol))
        throw ParameterError("overlay: traces " + interbody.link().str() + " and " + onbody_shadow.link().str() +
                             " do not overlap in time");

    const auto ia = static_cast<std::size_t>(std::llround((start - interbody.t0()) / dt));
    const auto ib = static_cast<std::size_t>(std::llround((start - onbody_shadow.t0()) / dt));
    const std::size_t len = std::min(interbody.size() - ia, onbody_shadow.size() - ib);

    const auto a = interbody.samples();
    const auto b = onbody_shadow.samples();
    std::vector<double> out(len);
    for (std::size_t k = 0; k < len; ++k)
        out[k] = a[ia + k] + b[ib + k];
    return ChannelTrace(interbody.link(), interbody.time_at(ia), dt, std::move(out), interbody.metadata());
}

std::pair<ChannelTrace, ChannelTrace> split_trace(const ChannelTrace &trace, std::size_t index)
{
    if (index == 0 || index >= trace.size())
        throw ParameterError("split index " + std::to_string(index) + " outside (0, " +
                             std::to_string(trace.size()) + ")");
    const auto s = trace.samples();
    std::vector<double> head(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(index));
    std::vector<double> tail(s.begin() + static_cast<std::ptrdiff_t>(index), s.end());
    return {ChannelTrace(trace.link(), trace.t0(), trace.dt(), std::move(head), trace.metadata()),
            ChannelTrace(trace.link(), trace.time_at(index), trace.dt(), std::move(tail), trace.metadata())};
}

} // namespace wbansim::channel
