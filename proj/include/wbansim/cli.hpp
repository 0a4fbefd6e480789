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

#include "wbansim/channel.hpp"
#include "wbansim/link.hpp"
#include "wbansim/mac.hpp"
#include "wbansim/scenario.hpp"
#include "wbansim/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wbansim::cli
{

namespace fs = std::filesystem;

// --- configuration file --------------------------------------------------------

/// `key = value` lines grouped under `[section]` headers; `#` starts a comment.
/// Keys before the first header belong to section "run".
class ConfigFile
{
  public:
    static ConfigFile parse(std::istream &in, fs::path base_dir = {});
    static ConfigFile load(const fs::path &path);

    std::optional<std::string> find(const std::string &section, const std::string &key) const;
    /// Throws ConfigError naming `[section] key` when absent.
    const std::string &require(const std::string &section, const std::string &key) const;
    void set(const std::string &section, const std::string &key, std::string value);
    void erase(const std::string &section, const std::string &key);

    /// Sorted `[section]` / `key = value` text; equal configs give equal text.
    std::string canonical() const;
    /// Directory relative paths in the file resolve against.
    const fs::path &base_dir() const noexcept { return base_dir_; }
    const std::map<std::string, std::map<std::string, std::string>> &entries() const noexcept { return entries_; }

  private:
    std::map<std::string, std::map<std::string, std::string>> entries_;
    fs::path base_dir_;
};

enum class PacketLogs
{
    none,
    single_link,
    all
};

/// One point of the hub-site x shadowing sweep.
struct Variant
{
    scenario::BodySite hub = scenario::BodySite::chest;
    channel::ShadowingLevel shadowing = channel::ShadowingLevel::full;

    std::string name() const; ///< "hub-chest_shadow-full"
};

/// One sensor placement of the WBAN-of-interest within a variant.
struct Layout
{
    std::string name;
    std::vector<scenario::BodySite> sensors;
};

struct Settings
{
    // [run]
    std::uint64_t seed = 1;
    double duration_s = 0.0;
    double slot_s = 0.01;
    link::DecisionBlock decision_block = link::DecisionBlock::start_of_superframe;
    double noise_dbm = link::default_noise_dbm;
    std::size_t workers = 1;
    PacketLogs packet_logs = PacketLogs::single_link;

    // [channel]
    scenario::ChannelSource source = scenario::ChannelSource::synthetic;
    fs::path trace_dir;
    channel::FadingSpec fading;
    double synth_dt_s = 0.04;
    double sample_dt_s = 0.12;
    double onbody_shadow_std_db = 5.0;
    double onbody_coherence_s = 2.087;
    double onbody_fast_std_db = 2.0;
    bool overlay_relays = true;

    // [motion]
    scenario::MotionModel motion;

    // [wban]: the WBAN-of-interest. Without explicit sensors, the two sites of
    // {chest, left_hip, right_hip} not holding the hub carry sensors and the
    // third sensor visits each of extra_sensor_sites in turn.
    std::optional<std::vector<scenario::BodySite>> sensors;
    std::vector<scenario::BodySite> extra_sensor_sites;
    scenario::RelayMode relay_mode = scenario::RelayMode::varying;
    double tx_power_dbm = 0.0;

    // [interferer]: unset hub or sensors follow the WBAN-of-interest.
    std::optional<scenario::BodySite> interferer_hub;
    std::optional<std::vector<scenario::BodySite>> interferer_sensors;
    scenario::RelayMode interferer_relay_mode = scenario::RelayMode::none;
    double interferer_tx_power_dbm = 0.0;

    // [analysis]
    std::vector<int> subjects_of_interest{1, 2};
    std::vector<int> subjects{1, 2, 3, 4, 5, 6};

    // [sweep]
    std::vector<scenario::BodySite> hub_sites{scenario::BodySite::chest};
    std::vector<channel::ShadowingLevel> shadowing_levels{channel::ShadowingLevel::full};

    // [stats]
    double stats_doppler_hz = 1.0;
    double threshold_lo_db = -30.0;
    double threshold_hi_db = 80.0;
    double threshold_step_db = 0.5;
    std::vector<stats::Family> families{stats::all_families().begin(), stats::all_families().end()};
    std::size_t hist_bins = 20;
    double outage_probability = 0.1;

    std::uint64_t config_hash = 0;

    std::vector<Variant> variants() const;
    std::vector<Layout> layouts(scenario::BodySite hub) const;
    std::vector<scenario::AnalysisSet> analysis_sets() const;
    /// WBAN-of-interest first, then the interferer.
    std::vector<scenario::WbanConfig> networks(const Variant &variant, const Layout &layout,
                                               const scenario::AnalysisSet &set) const;
    std::vector<double> thresholds() const;
};

/// Typed view of a config file. Throws ConfigError on a missing required key,
/// an unknown key, a malformed value or an inconsistent scenario. Workers are
/// excluded from the config hash since they never change outputs.
Settings load_settings(const ConfigFile &file);

// --- pipeline ----------------------------------------------------------------------

std::string set_name(const scenario::AnalysisSet &set); ///< "set_1_2"

/// Seed for a named consumer of the user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

/// Every link any layout of the set reads, synthesized at sample_dt_s.
link::TraceSet synthesize_traces(const Settings &settings, const Variant &variant,
                                 const scenario::AnalysisSet &set);

/// Measured traces from settings.trace_dir (`<tx>__<rx>.csv`), resampled to
/// sample_dt_s, with the variant's shadowing applied to inter-body links.
/// Missing relay links of a fixed-relay WBAN are overlaid when enabled.
link::TraceSet load_measured_traces(const Settings &settings, const Variant &variant,
                                    const scenario::AnalysisSet &set);

scenario::ScenarioConfig make_scenario(const Settings &settings, const Variant &variant, const Layout &layout,
                                       const scenario::AnalysisSet &set, const link::TraceSet &traces);

/// TDMA schedule of the set's networks. Independent of the variant so sweeps
/// compare identical timing.
mac::SuperframeSchedule make_schedule(const Settings &settings, const scenario::ScenarioConfig &scenario,
                                      const scenario::AnalysisSet &set, const Layout &layout);

link::ExperimentResult simulate_layout(const Settings &settings, const scenario::ScenarioConfig &scenario,
                                       const link::TraceSet &traces, const mac::SuperframeSchedule &schedule);

/// Pooled end-to-end SINR (dB) per scheme over every set and layout of a
/// variant, computed in memory.
std::map<link::Scheme, std::vector<double>> pooled_variant_sinr(const Settings &settings, const Variant &variant);

/// Runs task(i) for i in [0, n) on up to `workers` threads; rethrows the
/// first failure after all threads stop.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &task);

// --- outputs ---------------------------------------------------------------------------

/// `# seed=` and `# config_hash=` comment lines.
void write_provenance(std::ostream &out, const Settings &settings);
std::string hash_hex(std::uint64_t hash);

void write_series_csv(std::ostream &out, const link::SinrSeries &series, const Settings &settings);
/// Reads `# key=value` lines and a `t_s,sinr_db` table. Throws ValidationError
/// on an empty series and ParseError on malformed rows.
link::SinrSeries read_series_csv(std::istream &in);

void write_curve_csv(std::ostream &out, const stats::ThresholdCurve &curve, const Settings &settings);
stats::ThresholdCurve read_curve_csv(std::istream &in, stats::CurveKind kind);

/// Signal and interference powers in dBm from a packet log.
struct PowerLog
{
    std::vector<double> signal_dbm;
    std::vector<double> interference_dbm;
};
PowerLog read_packet_log_csv(std::istream &in);

/// Writes the file through a temporary sibling and renames it into place.
void write_file(const fs::path &path, const std::function<void(std::ostream &)> &writer);

/// `<dir>/manifest.json`, rewritten after each completed set.
class Manifest
{
  public:
    Manifest(fs::path dir, std::string command, std::string config_name, const Settings &settings);
    void complete_set(const std::string &name);
    void finish();

  private:
    void flush(bool complete);

    fs::path dir_;
    std::string command_;
    std::string config_name_;
    std::uint64_t seed_;
    std::uint64_t config_hash_;
    std::vector<std::string> done_;
    std::mutex mutex_;
};

// --- subcommands -------------------------------------------------------------------------

void cmd_synth(const Settings &settings, const fs::path &out, const std::string &config_name);
void cmd_run(const Settings &settings, const fs::path &out, const std::string &config_name);
void cmd_stats(const Settings &settings, const fs::path &out, const std::string &config_name);
void cmd_report(const Settings &settings, const fs::path &out, const std::string &config_name);

} // namespace wbansim::cli
