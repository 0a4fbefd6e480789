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

#include "wbansim/cli.hpp"
#include "wbansim/errors.hpp"
#include "wbansim/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace wbansim::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    while (true)
    {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

// Keys accepted per section; anything else is a config error.
const std::map<std::string, std::set<std::string>> &known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"run", {"seed", "duration_s", "slot_s", "decision_block", "noise_dbm", "workers", "packet_logs"}},
        {"channel",
         {"source", "trace_dir", "doppler_hz", "path_loss_exponent", "full_shadow_offset_db", "reference_gain_db",
          "synth_dt_s", "sample_dt_s", "onbody_shadow_std_db", "onbody_coherence_s", "onbody_fast_std_db",
          "overlay_relays"}},
        {"motion", {"corridor_length_m", "corridor_width_m", "walking_speed_mps", "min_separation_m"}},
        {"wban", {"sensors", "extra_sensor_sites", "relay_mode", "tx_power_dbm"}},
        {"interferer", {"hub", "sensors", "relay_mode", "tx_power_dbm"}},
        {"analysis", {"subjects_of_interest", "subjects"}},
        {"sweep", {"hub_sites", "shadowing"}},
        {"stats",
         {"doppler_hz", "threshold_lo_db", "threshold_hi_db", "threshold_step_db", "families", "hist_bins",
          "outage_probability"}},
    };
    return keys;
}

class Reader
{
  public:
    explicit Reader(const ConfigFile &file) : file_(file) {}

    std::optional<std::string> raw(const std::string &section, const std::string &key) const
    {
        return file_.find(section, key);
    }

    [[noreturn]] void fail(const std::string &section, const std::string &key, const std::string &why) const
    {
        throw ConfigError("[" + section + "] " + key + ": " + why);
    }

    void number(const std::string &section, const std::string &key, double &out) const
    {
        if (auto v = raw(section, key))
            if (!parse_double(*v, out) || !std::isfinite(out))
                fail(section, key, "expected a finite number, got '" + *v + "'");
    }

    double required_number(const std::string &section, const std::string &key) const
    {
        double out = 0.0;
        const auto &v = file_.require(section, key);
        if (!parse_double(v, out) || !std::isfinite(out))
            fail(section, key, "expected a finite number, got '" + v + "'");
        return out;
    }

    template <typename Int> void integer(const std::string &section, const std::string &key, Int &out) const
    {
        if (auto v = raw(section, key))
        {
            const auto t = trim(*v);
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
            if (ec != std::errc{} || ptr != t.data() + t.size())
                fail(section, key, "expected an integer, got '" + *v + "'");
        }
    }

    void boolean(const std::string &section, const std::string &key, bool &out) const
    {
        if (auto v = raw(section, key))
        {
            if (*v == "true" || *v == "yes" || *v == "1")
                out = true;
            else if (*v == "false" || *v == "no" || *v == "0")
                out = false;
            else
                fail(section, key, "expected true or false, got '" + *v + "'");
        }
    }

    template <typename T, typename Parse>
    void parsed(const std::string &section, const std::string &key, T &out, Parse parse) const
    {
        if (auto v = raw(section, key))
        {
            try
            {
                out = parse(*v);
            }
            catch (const std::exception &e)
            {
                fail(section, key, e.what());
            }
        }
    }

    template <typename T, typename Parse>
    void parsed_list(const std::string &section, const std::string &key, std::vector<T> &out, Parse parse) const
    {
        if (auto v = raw(section, key))
        {
            std::vector<T> items;
            for (const auto &item : split_list(*v))
            {
                try
                {
                    items.push_back(parse(item));
                }
                catch (const std::exception &e)
                {
                    fail(section, key, e.what());
                }
            }
            if (items.empty())
                fail(section, key, "empty list");
            out = std::move(items);
        }
    }

  private:
    const ConfigFile &file_;
};

int parse_int(std::string_view text)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    return v;
}

scenario::BodySite parse_site(std::string_view text) { return scenario::parse_body_site(text); }

PacketLogs parse_packet_logs(std::string_view text)
{
    if (text == "none")
        return PacketLogs::none;
    if (text == "single_link")
        return PacketLogs::single_link;
    if (text == "all")
        return PacketLogs::all;
    throw ConfigError("unknown packet_logs '" + std::string(text) + "' (none, single_link, all)");
}

template <typename T> bool has_duplicates(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

} // namespace

// --- ConfigFile -------------------------------------------------------------

ConfigFile ConfigFile::parse(std::istream &in, fs::path base_dir)
{
    ConfigFile file;
    file.base_dir_ = std::move(base_dir);
    std::string section = "run";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty())
            continue;
        if (s.front() == '[')
        {
            if (s.back() != ']' || s.size() < 3)
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(s.substr(1, s.size() - 2)));
            if (!known_keys().contains(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(s.substr(0, eq)));
        const std::string value(trim(s.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!known_keys().at(section).contains(key))
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key [" + section + "] " + key);
        if (file.entries_[section].contains(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key [" + section + "] " + key);
        file.entries_[section][key] = value;
    }
    return file;
}

ConfigFile ConfigFile::load(const fs::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    try
    {
        return parse(in, path.parent_path());
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::optional<std::string> ConfigFile::find(const std::string &section, const std::string &key) const
{
    const auto s = entries_.find(section);
    if (s == entries_.end())
        return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end())
        return std::nullopt;
    return k->second;
}

const std::string &ConfigFile::require(const std::string &section, const std::string &key) const
{
    const auto s = entries_.find(section);
    if (s != entries_.end())
        if (const auto k = s->second.find(key); k != s->second.end())
            return k->second;
    throw ConfigError("missing required key [" + section + "] " + key);
}

void ConfigFile::set(const std::string &section, const std::string &key, std::string value)
{
    entries_[section][key] = std::move(value);
}

void ConfigFile::erase(const std::string &section, const std::string &key)
{
    if (auto s = entries_.find(section); s != entries_.end())
        s->second.erase(key);
}

std::string ConfigFile::canonical() const
{
    std::string out;
    for (const auto &[section, keys] : entries_)
    {
        if (keys.empty())
            continue;
        out += "[" + section + "]\n";
        for (const auto &[k, v] : keys)
            out += k + " = " + v + "\n";
    }
    return out;
}

// --- Settings ---------------------------------------------------------------------

std::string Variant::name() const
{
    return "hub-" + std::string(scenario::to_string(hub)) + "_shadow-" + std::string(channel::to_string(shadowing));
}

std::vector<Variant> Settings::variants() const
{
    std::vector<Variant> out;
    for (auto hub : hub_sites)
        for (auto level : shadowing_levels)
            out.push_back({hub, level});
    return out;
}

std::vector<Layout> Settings::layouts(scenario::BodySite hub) const
{
    using scenario::BodySite;
    if (sensors)
        return {Layout{"layout_fixed", *sensors}};
    std::vector<BodySite> base;
    for (auto site : {BodySite::chest, BodySite::left_hip, BodySite::right_hip})
        if (site != hub)
            base.push_back(site);
    std::vector<Layout> out;
    for (auto extra : extra_sensor_sites)
    {
        auto s = base;
        s.push_back(extra);
        out.push_back({"layout_" + std::string(scenario::to_string(extra)), std::move(s)});
    }
    return out;
}

std::vector<scenario::AnalysisSet> Settings::analysis_sets() const
{
    return scenario::enumerate_analysis_sets(subjects_of_interest, subjects);
}

std::vector<scenario::WbanConfig> Settings::networks(const Variant &variant, const Layout &layout,
                                                     const scenario::AnalysisSet &set) const
{
    scenario::WbanConfig interest;
    interest.network_id = set.subject_of_interest;
    interest.hub_site = variant.hub;
    interest.sensor_sites = layout.sensors;
    interest.relay_mode = relay_mode;
    interest.tx_power_dbm = tx_power_dbm;

    scenario::WbanConfig other;
    other.network_id = set.interferer;
    other.hub_site = interferer_hub.value_or(variant.hub);
    other.sensor_sites = interferer_sensors.value_or(layout.sensors);
    other.relay_mode = interferer_relay_mode;
    other.tx_power_dbm = interferer_tx_power_dbm;
    return {interest, other};
}

std::vector<double> Settings::thresholds() const
{
    return stats::threshold_grid(threshold_lo_db, threshold_hi_db, threshold_step_db);
}

Settings load_settings(const ConfigFile &file)
{
    Settings s;
    const Reader r(file);

    // [run]
    r.integer("run", "seed", s.seed);
    s.duration_s = r.required_number("run", "duration_s");
    if (!(s.duration_s > 0.0))
        r.fail("run", "duration_s", "must be positive");
    r.number("run", "slot_s", s.slot_s);
    if (!(s.slot_s > 0.0))
        r.fail("run", "slot_s", "must be positive");
    r.parsed("run", "decision_block", s.decision_block, link::parse_decision_block);
    r.number("run", "noise_dbm", s.noise_dbm);
    r.integer("run", "workers", s.workers);
    if (s.workers == 0)
        r.fail("run", "workers", "must be at least 1");
    r.parsed("run", "packet_logs", s.packet_logs, parse_packet_logs);

    // [channel]
    r.parsed("channel", "source", s.source, scenario::parse_channel_source);
    if (s.source == scenario::ChannelSource::traces)
    {
        const fs::path dir = file.require("channel", "trace_dir");
        s.trace_dir = dir.is_absolute() ? dir : file.base_dir() / dir;
    }
    else if (auto dir = file.find("channel", "trace_dir"))
    {
        s.trace_dir = fs::path(*dir).is_absolute() ? fs::path(*dir) : file.base_dir() / *dir;
    }
    r.number("channel", "doppler_hz", s.fading.doppler_hz);
    r.number("channel", "path_loss_exponent", s.fading.path_loss_exponent);
    r.number("channel", "full_shadow_offset_db", s.fading.shadow_offset_db);
    r.number("channel", "reference_gain_db", s.fading.reference_gain_db);
    r.number("channel", "synth_dt_s", s.synth_dt_s);
    r.number("channel", "sample_dt_s", s.sample_dt_s);
    r.number("channel", "onbody_shadow_std_db", s.onbody_shadow_std_db);
    r.number("channel", "onbody_coherence_s", s.onbody_coherence_s);
    r.number("channel", "onbody_fast_std_db", s.onbody_fast_std_db);
    r.boolean("channel", "overlay_relays", s.overlay_relays);
    try
    {
        s.fading.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(std::string("[channel] ") + e.what());
    }
    if (!(s.synth_dt_s > 0.0))
        r.fail("channel", "synth_dt_s", "must be positive");
    if (!(s.sample_dt_s >= s.synth_dt_s))
        r.fail("channel", "sample_dt_s", "must be at least synth_dt_s");
    if (!(s.onbody_shadow_std_db >= 0.0))
        r.fail("channel", "onbody_shadow_std_db", "must be non-negative");
    if (!(s.onbody_fast_std_db >= 0.0))
        r.fail("channel", "onbody_fast_std_db", "must be non-negative");
    if (!(s.onbody_coherence_s > 0.0))
        r.fail("channel", "onbody_coherence_s", "must be positive");

    // [motion]
    r.number("motion", "corridor_length_m", s.motion.corridor_length);
    r.number("motion", "corridor_width_m", s.motion.corridor_width);
    r.number("motion", "walking_speed_mps", s.motion.walking_speed);
    r.number("motion", "min_separation_m", s.motion.min_separation);
    try
    {
        s.motion.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(std::string("[motion] ") + e.what());
    }

    // [wban]
    if (auto v = r.raw("wban", "sensors"); v && *v != "auto")
    {
        std::vector<scenario::BodySite> sites;
        r.parsed_list("wban", "sensors", sites, parse_site);
        s.sensors = std::move(sites);
    }
    if (!s.sensors)
    {
        s.extra_sensor_sites.clear();
        for (auto site : scenario::all_body_sites())
            if (site != scenario::BodySite::chest && site != scenario::BodySite::left_hip &&
                site != scenario::BodySite::right_hip)
                s.extra_sensor_sites.push_back(site);
        r.parsed_list("wban", "extra_sensor_sites", s.extra_sensor_sites, parse_site);
    }
    else if (r.raw("wban", "extra_sensor_sites"))
    {
        r.fail("wban", "extra_sensor_sites", "only valid with sensors = auto");
    }
    r.parsed("wban", "relay_mode", s.relay_mode, scenario::parse_relay_mode);
    r.number("wban", "tx_power_dbm", s.tx_power_dbm);

    // [interferer]
    if (auto v = r.raw("interferer", "hub"); v && *v != "same")
    {
        scenario::BodySite hub{};
        r.parsed("interferer", "hub", hub, parse_site);
        s.interferer_hub = hub;
    }
    if (auto v = r.raw("interferer", "sensors"); v && *v != "same")
    {
        std::vector<scenario::BodySite> sites;
        r.parsed_list("interferer", "sensors", sites, parse_site);
        s.interferer_sensors = std::move(sites);
    }
    r.parsed("interferer", "relay_mode", s.interferer_relay_mode, scenario::parse_relay_mode);
    r.number("interferer", "tx_power_dbm", s.interferer_tx_power_dbm);

    // [analysis]
    r.parsed_list("analysis", "subjects_of_interest", s.subjects_of_interest, parse_int);
    r.parsed_list("analysis", "subjects", s.subjects, parse_int);
    if (has_duplicates(s.subjects))
        r.fail("analysis", "subjects", "duplicate subject id");
    if (has_duplicates(s.subjects_of_interest))
        r.fail("analysis", "subjects_of_interest", "duplicate subject id");
    for (int soi : s.subjects_of_interest)
        if (std::find(s.subjects.begin(), s.subjects.end(), soi) == s.subjects.end())
            r.fail("analysis", "subjects_of_interest", "subject " + std::to_string(soi) + " not in subjects");
    if (s.subjects.size() < 2)
        r.fail("analysis", "subjects", "need at least two subjects");

    // [sweep]
    r.parsed_list("sweep", "hub_sites", s.hub_sites, parse_site);
    r.parsed_list("sweep", "shadowing", s.shadowing_levels, channel::parse_shadowing);
    if (has_duplicates(s.hub_sites))
        r.fail("sweep", "hub_sites", "duplicate site");
    if (has_duplicates(s.shadowing_levels))
        r.fail("sweep", "shadowing", "duplicate level");

    // [stats]
    r.number("stats", "doppler_hz", s.stats_doppler_hz);
    r.number("stats", "threshold_lo_db", s.threshold_lo_db);
    r.number("stats", "threshold_hi_db", s.threshold_hi_db);
    r.number("stats", "threshold_step_db", s.threshold_step_db);
    if (auto v = r.raw("stats", "families"); v && *v != "all")
        r.parsed_list("stats", "families", s.families, stats::parse_family);
    r.integer("stats", "hist_bins", s.hist_bins);
    r.number("stats", "outage_probability", s.outage_probability);
    if (!(s.stats_doppler_hz > 0.0))
        r.fail("stats", "doppler_hz", "must be positive");
    if (!(s.threshold_step_db > 0.0) || !(s.threshold_hi_db >= s.threshold_lo_db))
        r.fail("stats", "threshold_step_db", "grid needs step > 0 and hi >= lo");
    if (s.hist_bins < 2)
        r.fail("stats", "hist_bins", "must be at least 2");
    if (!(s.outage_probability > 0.0 && s.outage_probability < 1.0))
        r.fail("stats", "outage_probability", "must lie in (0, 1)");

    // Every network the sweep will build must be valid.
    for (const auto &variant : s.variants())
    {
        const auto layouts = s.layouts(variant.hub);
        if (layouts.empty())
            r.fail("wban", "extra_sensor_sites", "no sensor layout");
        for (const auto &layout : layouts)
            for (const auto &set : s.analysis_sets())
                for (const auto &net : s.networks(variant, layout, set))
                {
                    try
                    {
                        net.validate();
                    }
                    catch (const std::exception &e)
                    {
                        throw ConfigError("variant " + variant.name() + ", " + layout.name + ": " + e.what());
                    }
                }
    }

    ConfigFile hashed = file;
    hashed.erase("run", "workers");
    hashed.set("run", "seed", std::to_string(s.seed));
    s.config_hash = fnv1a64(hashed.canonical());
    return s;
}

} // namespace wbansim::cli
