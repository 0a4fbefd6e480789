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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wbansim::channel
{

/// Directed radio link between two named nodes.
struct LinkId
{
    std::string source;
    std::string destination;

    auto operator<=>(const LinkId &) const = default;

    /// "source->destination"
    std::string str() const { return source + "->" + destination; }
};

using Metadata = std::map<std::string, std::string>;

/// Uniformly sampled link-gain time series in dB.
///
/// Sample k represents the block [t0 + k·dt, t0 + (k+1)·dt). Instances are
/// immutable; every transform returns a new trace.
class ChannelTrace
{
public:
    ChannelTrace(LinkId link, double t0, double dt, std::vector<double> samples_db, Metadata metadata = {});

    const LinkId &link() const noexcept { return link_; }
    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Metadata &metadata() const noexcept { return metadata_; }

    double time_at(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }

    /// End of the last sample block, t0 + n·dt.
    double end_time() const noexcept { return time_at(samples_.size()); }

    /// Index of the block containing `t`, or nullopt outside [t0, end_time).
    std::optional<std::size_t> index_at(double t) const noexcept;

    /// Block-fading gain at time `t`. Throws ParameterError outside the support.
    double gain_at(double t) const;

    ChannelTrace with_link(LinkId link) const;
    ChannelTrace with_metadata(Metadata metadata) const;

private:
    LinkId link_;
    double t0_;
    double dt_;
    std::vector<double> samples_;
    Metadata metadata_;
};

struct FadingSpec
{
    double doppler_hz = 2.0;
    double path_loss_exponent = 2.0;
    double shadow_offset_db = -40.0;
    double reference_gain_db = -40.0; ///< gain at 1 m

    void validate() const;
};

enum class ShadowingLevel
{
    none,
    partial,
    full
};

std::string_view to_string(ShadowingLevel level);
ShadowingLevel parse_shadowing(std::string_view text);

// --- synthesis -----------------------------------------------------------

/// Complex sum-of-sinusoids Jakes envelope with unit mean power.
///
/// `oscillators` arrivals at equally spaced angles 2π(n + 1/4)/N; the quarter
/// offset keeps every Doppler frequency distinct so time averages converge.
/// Phases are drawn from `seed`.
std::vector<std::complex<double>> jakes_envelope(double doppler_hz, std::size_t n, double dt, std::uint64_t seed,
                                                 std::size_t oscillators = 128);

/// Rayleigh small-scale power gain |h|² in dB with Jakes time correlation.
ChannelTrace gen_small_scale(const FadingSpec &spec, double duration, double dt, std::uint64_t seed,
                             LinkId link = {});

/// Slow Gaussian (in dB) shadowing process: AR(1) with lag-`coherence_s`
/// correlation 0.7, plus optional white fast fading.
ChannelTrace gen_onbody(double mean_db, double shadow_std_db, double coherence_s, double fast_std_db,
                        double duration, double dt, std::uint64_t seed, LinkId link = {});

/// Inter-body gain: path loss from the per-sample distance, plus the
/// shadowing offset for `level`, plus Jakes small-scale fading.
ChannelTrace gen_interbody(std::span<const double> distance_m, const FadingSpec &spec, ShadowingLevel level,
                           double dt, std::uint64_t seed, LinkId link = {});

// --- deterministic transforms -------------------------------------------

double path_loss_db(double distance_m, const FadingSpec &spec);

double shadowing_offset_db(ShadowingLevel level, const FadingSpec &spec);

/// Adds a constant dB offset to every sample.
ChannelTrace offset(const ChannelTrace &trace, double delta_db);

ChannelTrace apply_shadowing(const ChannelTrace &trace, ShadowingLevel level, const FadingSpec &spec);

/// Block mean (in dB) onto a coarser grid; the trailing partial block is dropped.
ChannelTrace resample(const ChannelTrace &trace, double target_dt);

/// Smallest lag k·dt at which the sample autocorrelation coefficient of the
/// dB samples drops below `threshold`.
double coherence_time(const ChannelTrace &trace, double threshold = 0.7);

/// Centered moving average over the largest odd number of samples spanning
/// at most `window_s`; windows shrink at the edges.
ChannelTrace extract_large_scale(const ChannelTrace &trace, double window_s);

/// Same, with the window set to twice the trace's coherence time.
ChannelTrace extract_large_scale(const ChannelTrace &trace);

/// Element-wise dB sum over the overlapping time support. Keeps the inter-body link id.
ChannelTrace overlay(const ChannelTrace &interbody, const ChannelTrace &onbody_shadow);

/// Prefix [0, index) and suffix [index, n).
std::pair<ChannelTrace, ChannelTrace> split_trace(const ChannelTrace &trace, std::size_t index);

// --- CSV I/O ---------------------------------------------------------------
//
//   # source=1.left_hip
//   # destination=1.chest
//   # dt_s=0.12
//   time_s,gain_db
//   0,-63.2
//   ...
//
// Keys `source`, `destination` and `dt_s` are reserved; any other `# key=value`
// lines round-trip through ChannelTrace::metadata().

ChannelTrace read_trace(std::istream &in, const std::optional<LinkId> &link = std::nullopt);
ChannelTrace load_trace(const std::filesystem::path &path, const std::optional<LinkId> &link = std::nullopt);

void write_trace(std::ostream &out, const ChannelTrace &trace);
void save_trace(const std::filesystem::path &path, const ChannelTrace &trace);

} // namespace wbansim::channel
