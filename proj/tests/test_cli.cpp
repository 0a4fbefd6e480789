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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "wbansim/cli.hpp"
#include "wbansim/errors.hpp"

#include <fstream>
#include <sstream>

using namespace wbansim;
using namespace wbansim::cli;

namespace
{

const char *small_config = R"(
[run]
seed = 3
duration_s = 20

[wban]
sensors = left_wrist, left_upper_arm, left_ankle
relay_mode = fixed_hips

[analysis]
subjects_of_interest = 1
subjects = 1, 2

[stats]
threshold_lo_db = -10
threshold_hi_db = 50
threshold_step_db = 1
)";

ConfigFile parse(const std::string &text)
{
    std::istringstream in(text);
    return ConfigFile::parse(in);
}

std::string config_error(const std::string &text)
{
    try
    {
        load_settings(parse(text));
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return {};
}

struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> tree(const fs::path &root)
{
    std::map<std::string, std::string> files;
    for (const auto &e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
            files[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
    return files;
}

void run_all(const Settings &s, const fs::path &out)
{
    cmd_synth(s, out, "small.conf");
    cmd_run(s, out, "small.conf");
    cmd_stats(s, out, "small.conf");
    cmd_report(s, out, "small.conf");
}

} // namespace

TEST_CASE("config errors name the offending key")
{
    CHECK(config_error("[wban]\nrelay_mode = none\n").find("duration_s") != std::string::npos);
    CHECK(config_error("[run]\nduration_s = 10\nspeed = 2\n").find("speed") != std::string::npos);
    CHECK(config_error("[run]\nduration_s = ten\n").find("duration_s") != std::string::npos);
    CHECK(config_error("[run]\nduration_s = 10\n[bogus]\nx = 1\n").find("bogus") != std::string::npos);
    CHECK(config_error("[run]\nduration_s = 10\n[wban]\nrelay_mode = sometimes\n").find("relay_mode") !=
          std::string::npos);
    CHECK(config_error("[run]\nduration_s = 10\n[sweep]\nshadowing = full, full\n").find("shadowing") !=
          std::string::npos);
    CHECK_THROWS(parse("[run]\nseed = 1\nseed = 2\n"));
    CHECK(config_error(small_config).empty());
}

TEST_CASE("keys before any header belong to run")
{
    const auto f = parse("duration_s = 12\n# comment\n[wban]\nrelay_mode = none\n");
    CHECK(f.require("run", "duration_s") == "12");
    CHECK_THROWS_AS(f.require("run", "seed"), ConfigError);
}

TEST_CASE("config hash ignores formatting and workers")
{
    const auto a = load_settings(parse(small_config));
    auto f = parse(std::string("# leading comment\n\n") + small_config);
    f.set("run", "workers", "4");
    const auto b = load_settings(f);
    CHECK(a.config_hash == b.config_hash);
    CHECK(b.workers == 4);
    f.set("run", "seed", "4");
    CHECK(load_settings(f).config_hash != a.config_hash);
    CHECK(hash_hex(a.config_hash).size() == 16);
}

TEST_CASE("analysis sets exclude self pairs")
{
    auto f = parse(small_config);
    f.set("analysis", "subjects_of_interest", "1, 2");
    f.set("analysis", "subjects", "1, 2, 3, 4, 5, 6");
    const auto s = load_settings(f);
    const auto sets = s.analysis_sets();
    CHECK(sets.size() == 10);
    for (const auto &set : sets)
        CHECK(set.subject_of_interest != set.interferer);
    CHECK(set_name(sets.front()) == "set_1_2");
}

TEST_CASE("auto sensor layouts")
{
    auto f = parse(small_config);
    f.erase("wban", "sensors");
    f.set("wban", "relay_mode", "varying");
    f.set("sweep", "hub_sites", "left_hip");
    const auto s = load_settings(f);
    const auto layouts = s.layouts(scenario::BodySite::left_hip);
    CHECK(layouts.size() == 7);
    for (const auto &l : layouts)
    {
        CHECK(l.sensors.size() == 3);
        CHECK(std::find(l.sensors.begin(), l.sensors.end(), scenario::BodySite::left_hip) == l.sensors.end());
    }
}

TEST_CASE("empty series are rejected")
{
    std::istringstream in("# scheme=single_link\n# stream=a\n# dt_packet_s=0.1\nt_s,sinr_db\n");
    CHECK_THROWS_AS(read_series_csv(in), ValidationError);
    std::istringstream bad("# scheme=single_link\n# stream=a\n# dt_packet_s=0.1\nt_s,sinr_db\n0.0,abc\n");
    CHECK_THROWS_AS(read_series_csv(bad), ParseError);
}

TEST_CASE("series round trip")
{
    const auto s = load_settings(parse(small_config));
    link::SinrSeries series{link::Scheme::opportunistic, "left_wrist", 0.03, {0.0, 0.03, 0.06}, {1.5, -2.25, 30.125}};
    std::stringstream io;
    write_series_csv(io, series, s);
    const auto back = read_series_csv(io);
    CHECK(back.scheme == series.scheme);
    CHECK(back.stream == series.stream);
    CHECK(back.dt_packet == series.dt_packet);
    CHECK(back.values == series.values);
}

TEST_CASE("end-to-end pipeline")
{
    TempDir dir("wbansim_cli_e2e");
    const auto s = load_settings(parse(small_config));
    run_all(s, dir.path);

    const auto variant = s.variants().front().name();
    const auto manifest = nlohmann::json::parse(slurp(dir.path / "run" / "manifest.json"));
    CHECK(manifest["status"] == "complete");
    CHECK(manifest["seed"] == 3);
    CHECK(manifest["completed_sets"] == nlohmann::json::array({variant + "/set_1_2"}));

    const auto layout_dir = dir.path / "run" / variant / "set_1_2" / "layout_fixed";
    for (const char *scheme : {"single_link", "opportunistic", "selection_combining"})
        CHECK(fs::exists(layout_dir / ("series_" + std::string(scheme) + "_1.left_wrist.csv")));
    CHECK(fs::exists(layout_dir / "packets_single_link.csv"));
    CHECK(!fs::exists(layout_dir / "packets_opportunistic.csv"));
    const auto series_text = slurp(layout_dir / "series_single_link_1.left_wrist.csv");
    CHECK(series_text.find("# seed=3") != std::string::npos);
    CHECK(series_text.find("# config_hash=" + hash_hex(s.config_hash)) != std::string::npos);

    const auto summary = nlohmann::json::parse(slurp(dir.path / "stats" / variant / "set_1_2" / "summary.json"));
    CHECK(summary.contains("dependence"));
    CHECK(fs::exists(dir.path / "report" / "fig_outage.csv"));
    CHECK(fs::exists(dir.path / "report" / "outage_thresholds.csv"));
}

TEST_CASE("outputs are deterministic across directories")
{
    TempDir a("wbansim_cli_det_a");
    TempDir b("wbansim_cli_det_b");
    auto f = parse(small_config);
    f.set("run", "workers", "1");
    run_all(load_settings(f), a.path);
    f.set("run", "workers", "2");
    run_all(load_settings(f), b.path);
    const auto ta = tree(a.path);
    const auto tb = tree(b.path);
    CHECK(ta.size() > 10);
    CHECK(ta == tb);
}

TEST_CASE("normal fits skip theoretical curves with a note")
{
    TempDir dir("wbansim_cli_normal");
    auto f = parse(small_config);
    f.set("stats", "families", "normal");
    const auto s = load_settings(f);
    cmd_run(s, dir.path, "n.conf");
    cmd_stats(s, dir.path, "n.conf");
    const auto summary =
        nlohmann::json::parse(slurp(dir.path / "stats" / s.variants().front().name() / "set_1_2" / "summary.json"));
    bool any = false;
    for (const auto &[key, value] : summary["schemes"].items())
        if (value.is_object() && value.contains("theoretical"))
        {
            any = true;
            CHECK(value["theoretical"].get<std::string>().rfind("skipped", 0) == 0);
        }
    CHECK(any);
}

TEST_CASE("single-hop networks produce single-link series only")
{
    TempDir dir("wbansim_cli_none");
    auto f = parse(small_config);
    f.set("wban", "relay_mode", "none");
    const auto s = load_settings(f);
    cmd_run(s, dir.path, "none.conf");
    const auto layout_dir = dir.path / "run" / s.variants().front().name() / "set_1_2" / "layout_fixed";
    std::size_t series = 0;
    for (const auto &e : fs::directory_iterator(layout_dir))
    {
        const auto name = e.path().filename().string();
        if (name.rfind("series_", 0) == 0)
        {
            ++series;
            CHECK(name.rfind("series_single_link_", 0) == 0);
        }
    }
    CHECK(series == 3);
}
