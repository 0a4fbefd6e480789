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

#include <cmath>

namespace wbansim::channel
{

ChannelTrace::ChannelTrace(LinkId link, double t0, double dt, std::vector<double> samples_db, Metadata metadata)
    : link_(std::move(link)), t0_(t0), dt_(dt), samples_(std::move(samples_db)), metadata_(std::move(metadata))
{
    if (!(dt_ > 0.0) || !std::isfinite(dt_))
        throw ParameterError("trace " + link_.str() + ": dt must be positive and finite");
    if (!std::isfinite(t0_))
        throw ParameterError("trace " + link_.str() + ": t0 must be finite");
    if (samples_.empty())
        throw ParameterError("trace " + link_.str() + ": no samples");
    for (std::size_t k = 0; k < samples_.size(); ++k)
        if (!std::isfinite(samples_[k]))
            throw ParameterError("trace " + link_.str() + ": sample " + std::to_string(k) + " is not finite");
}

std::optional<std::size_t> ChannelTrace::index_at(double t) const noexcept
{
    // Tolerate round-off when t sits exactly on a block boundary.
    const double pos = (t - t0_) / dt_ + 1e-9;
    if (!(pos >= 0.0))
        return std::nullopt;
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= samples_.size())
        return std::nullopt;
    return k;
}

double ChannelTrace::gain_at(double t) const
{
    const auto k = index_at(t);
    if (!k)
        throw ParameterError("trace " + link_.str() + " does not cover t=" + std::to_string(t) + " s");
    return samples_[*k];
}

ChannelTrace ChannelTrace::with_link(LinkId link) const
{
    ChannelTrace copy = *this;
    copy.link_ = std::move(link);
    return copy;
}

ChannelTrace ChannelTrace::with_metadata(Metadata metadata) const
{
    ChannelTrace copy = *this;
    copy.metadata_ = std::move(metadata);
    return copy;
}

void FadingSpec::validate() const
{
    if (!(doppler_hz > 0.0))
        throw ParameterError("doppler_hz must be positive");
    if (!(path_loss_exponent >= 0.0))
        throw ParameterError("path_loss_exponent must be non-negative");
    if (!(shadow_offset_db <= 0.0))
        throw ParameterError("shadow_offset_db must be <= 0");
    if (!std::isfinite(reference_gain_db))
        throw ParameterError("reference_gain_db must be finite");
}

std::string_view to_string(ShadowingLevel level)
{
    switch (level)
    {
    case ShadowingLevel::none:
        return "none";
    case ShadowingLevel::partial:
        return "partial";
    case ShadowingLevel::full:
        return "full";
    }
    return "none";
}

ShadowingLevel parse_shadowing(std::string_view text)
{
    if (text == "none")
        return ShadowingLevel::none;
    if (text == "partial")
        return ShadowingLevel::partial;
    if (text == "full")
        return ShadowingLevel::full;
    throw ParameterError("unknown shadowing level '" + std::string(text) + "'");
}

} // namespace wbansim::channel
