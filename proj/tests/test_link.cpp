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

#include "wbansim/errors.hpp"
#include "wbansim/link.hpp"
#include "wbansim/mac.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace wbansim;
using namespace wbansim::link;
using scenario::BodySite;
using scenario::NodeId;

namespace
{

// Independent linear-domain oracle.
double oracle_sinr(double s_dbm, std::vector<double> i_dbm, double n_dbm)
{
    double denom = std::pow(10.0, n_dbm / 10.0);
    for (double p : i_dbm)
        denom += std::pow(10.0, p / 10.0);
    return 10.0 * std::log10(std::pow(10.0, s_dbm / 10.0) / denom);
}

channel::ChannelTrace constant(const NodeId &tx, const NodeId &rx, double gain, double duration = 1.0,
                               double dt = 0.12)
{
    const auto n = static_cast<std::size_t>(std::ceil(duration / dt)) + 1;
    return channel::ChannelTrace(scenario::link_between(tx, rx), 0.0, dt, std::vector<double>(n, gain));
}

scenario::WbanConfig wban(int id, scenario::RelayMode mode, std::vector<BodySite> sensors)
{
    scenario::WbanConfig c;
    c.network_id = id;
    c.sensor_sites = std::move(sensors);
    c.relay_mode = mode;
    return c;
}

mac::SlotAssignment slot(int net, std::string node, double start, mac::Hop hop)
{
    return {net, std::move(node), 0, start, 0.01, hop};
}

} // namespace

TEST_CASE("compute_sinr worked values")
{
    CHECK(compute_sinr(0.0, {}, -95.0) == doctest::Approx(95.0).epsilon(1e-12));
    const std::vector<double> equal{-60.0};
    CHECK(compute_sinr(-60.0, equal) == doctest::Approx(-0.0013717).epsilon(1e-3));
    const std::vector<double> weak{-80.0};
    const double expected = 10.0 * std::log10(1e-6 / (1e-8 + std::pow(10.0, -9.5)));
    CHECK(compute_sinr(-60.0, weak) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(compute_sinr(-60.0, weak) == doctest::Approx(19.86).epsilon(1e-3));
}

TEST_CASE("compute_sinr matches the linear oracle")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> p(-110.0, 10.0);
    std::uniform_int_distribution<int> k(0, 4);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const double s = p(rng);
        std::vector<double> interf(static_cast<std::size_t>(k(rng)));
        for (auto &x : interf)
            x = p(rng);
        const double got = std::pow(10.0, compute_sinr(s, interf) / 10.0);
        const double want = std::pow(10.0, oracle_sinr(s, interf, -95.0) / 10.0);
        CHECK(std::abs(got - want) <= 1e-9 * want);
    }
}

TEST_CASE("compute_sinr monotonicity")
{
    std::vector<double> interf{-70.0, -85.0};
    double prev = compute_sinr(-90.0, interf);
    for (double s = -89.0; s <= 0.0; s += 1.0)
    {
        const double v = compute_sinr(s, interf);
        CHECK(v > prev);
        prev = v;
    }
    auto more = interf;
    more.push_back(-100.0);
    CHECK(compute_sinr(-60.0, more) < compute_sinr(-60.0, interf));
    CHECK(std::isinf(sum_dbm({})));
    const std::vector<double> two{-60.0, -60.0};
    CHECK(sum_dbm(two) == doctest::Approx(-60.0 + 10.0 * std::log10(2.0)));
}

TEST_CASE("path metric and selection")
{
    CHECK(path_metric(30, 25) == 25);
    CHECK(path_metric(10, 10) == 10);
    CHECK(path_metric(-5, 40) == -5);

    CHECK(select_path_or({20, 10, 5}) == Path::direct);
    CHECK(select_path_or({10, path_metric(30, 25), path_metric(15, 40)}) == Path::relay1);
    CHECK(select_path_or({25, 25, 20}) == Path::direct);
    CHECK(select_path_or({5, 9, 9}) == Path::relay1);
    CHECK(select_path_or({5, 8, 9}) == Path::relay2);

    CHECK(select_path_sc({20, 10, 5}) == Path::direct);
    CHECK(select_path_sc({7, 7, 7}) == Path::direct);
    CHECK(select_path_sc({10, 30, 15}) == Path::relay1);

    // Argmax invariance under a common linear scale factor (a dB shift).
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 50.0);
    for (int i = 0; i < 1000; ++i)
    {
        const PathMetrics m{u(rng), u(rng), u(rng)};
        const double shift = u(rng);
        const PathMetrics shifted{m.direct_db + shift, m.relay1_db + shift, m.relay2_db + shift};
        const auto p = select_path_or(m);
        CHECK(select_path_or(shifted) == p);
        CHECK(m.at(p) == std::max({m.direct_db, m.relay1_db, m.relay2_db}));
    }

    CHECK(transmissions(Scheme::opportunistic, Path::direct) == 1);
    CHECK(transmissions(Scheme::opportunistic, Path::relay2) == 2);
    CHECK(transmissions(Scheme::selection_combining, Path::direct) == 3);
    CHECK(transmissions(Scheme::single_link, Path::direct) == 1);
    CHECK(parse_scheme("opportunistic") == Scheme::opportunistic);
    CHECK(parse_decision_block("same") == DecisionBlock::same);
    CHECK_THROWS(parse_scheme("mrc"));
}

TEST_CASE("hand-evaluated single-network fixture")
{
    const auto w = wban(1, scenario::RelayMode::fixed_hips, {BodySite::head});
    const NodeId s{1, BodySite::head}, h{1, BodySite::chest}, r1{1, BodySite::left_hip}, r2{1, BodySite::right_hip};
    TraceSet traces;
    for (const auto &t : {constant(s, h, -60), constant(s, r1, -55), constant(s, r2, -70), constant(r1, h, -50),
                          constant(r2, h, -65)})
        traces.emplace(t.link(), t);
    const auto sc = scenario::build_scenario({w}, std::nullopt, channel::ShadowingLevel::full,
                                             scenario::ChannelSource::synthetic);
    std::vector<mac::NetworkFrame> frames{{1, mac::build_superframe(w, 0.01)}};
    const auto schedule = mac::schedule_networks(frames, 0.02, 1);
    const auto r = run_experiment(sc, traces, schedule);

    REQUIRE(r.packets.size() == 1);
    const auto &p = r.packets[0];
    CHECK(p.single_db == doctest::Approx(35.0));
    CHECK(p.realized.relay1_db == doctest::Approx(40.0));
    CHECK(p.realized.relay2_db == doctest::Approx(25.0));
    CHECK(p.or_path == Path::relay1);
    CHECK(p.or_db == doctest::Approx(40.0));
    CHECK(p.sc_db == doctest::Approx(40.0));
    CHECK(r.log.at(Scheme::opportunistic).size() == 2);
    CHECK(r.log.at(Scheme::selection_combining).size() == 5);
    CHECK(std::isinf(r.log.at(Scheme::single_link)[0].interference_power_dbm));
}

TEST_CASE("interference is summed per hop at each receiver")
{
    const auto w = wban(1, scenario::RelayMode::fixed_hips, {BodySite::head});
    const auto other = wban(2, scenario::RelayMode::none, {BodySite::head});
    const NodeId s{1, BodySite::head}, h{1, BodySite::chest}, r1{1, BodySite::left_hip}, r2{1, BodySite::right_hip};
    const NodeId x{2, BodySite::head};
    TraceSet traces;
    for (const auto &t : {constant(s, h, -60), constant(s, r1, -55), constant(s, r2, -70), constant(r1, h, -50),
                          constant(r2, h, -65), constant(x, h, -80), constant(x, r1, -75), constant(x, r2, -90)})
        traces.emplace(t.link(), t);
    const auto sc = scenario::build_scenario({w, other}, std::nullopt, channel::ShadowingLevel::full,
                                             scenario::ChannelSource::synthetic);
    // Both cycles start at 0: the interferer overlaps the first hop only.
    std::vector<mac::Cycle> cycles{
        {1, 0.0, 0.0, {slot(1, "1.head", 0.0, mac::Hop::first), slot(1, "1.head", 0.01, mac::Hop::second)}},
        {2, 0.0, 0.0, {slot(2, "2.head", 0.0, mac::Hop::first)}}};
    const mac::SuperframeSchedule schedule(cycles, {1, 2}, 0.02, 0.04);
    const auto r = run_experiment(sc, traces, schedule, {DecisionBlock::same, -95.0});

    REQUIRE(r.packets.size() == 1);
    const auto &p = r.packets[0];
    const double direct = oracle_sinr(-60, {-80}, -95);
    const double relay1 = std::min(oracle_sinr(-55, {-75}, -95), oracle_sinr(-50, {}, -95));
    const double relay2 = std::min(oracle_sinr(-70, {-90}, -95), oracle_sinr(-65, {}, -95));
    CHECK(p.single_db == doctest::Approx(direct).epsilon(1e-12));
    CHECK(p.realized.relay1_db == doctest::Approx(relay1).epsilon(1e-12));
    CHECK(p.realized.relay2_db == doctest::Approx(relay2).epsilon(1e-12));
    CHECK(p.or_db == doctest::Approx(std::max({direct, relay1, relay2})).epsilon(1e-12));
    CHECK(r.log.at(Scheme::single_link)[0].interference_power_dbm == doctest::Approx(-80.0));

    std::ostringstream os;
    write_packet_log_csv(os, r.log.at(Scheme::selection_combining));
    CHECK(os.str().rfind("t_s,tx,rx,path,signal_dbm,interf_dbm,sinr_db\n", 0) == 0);
}

TEST_CASE("coverage gaps are reported with link and time")
{
    const auto w = wban(1, scenario::RelayMode::none, {BodySite::head});
    const NodeId s{1, BodySite::head}, h{1, BodySite::chest};
    TraceSet traces;
    const auto t = constant(s, h, -60, 0.5);
    traces.emplace(t.link(), t);
    const auto sc = scenario::build_scenario({w}, std::nullopt, channel::ShadowingLevel::full,
                                             scenario::ChannelSource::synthetic);
    std::vector<mac::NetworkFrame> frames{{1, mac::build_superframe(w, 0.01)}};
    const auto schedule = mac::schedule_networks(frames, 5.0, 1);
    try
    {
        run_experiment(sc, traces, schedule);
        FAIL("expected a validation error");
    }
    catch (const ValidationError &e)
    {
        const std::string msg = e.what();
        CHECK(msg.find("1.head->1.chest") != std::string::npos);
        CHECK(msg.find("t=") != std::string::npos);
    }
    CHECK_THROWS_AS(run_experiment(sc, TraceSet{}, schedule), ValidationError);
}

TEST_CASE("opportunistic dominance and series alignment on a random run")
{
    const std::vector<BodySite> sites{BodySite::left_hip, BodySite::right_hip, BodySite::head};
    const auto w = wban(1, scenario::RelayMode::varying, sites);
    const auto other = wban(2, scenario::RelayMode::none, sites);
    const auto sc = scenario::build_scenario({w, other}, std::nullopt, channel::ShadowingLevel::none,
                                             scenario::ChannelSource::synthetic);
    TraceSet traces;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(-65.0, 10.0);
    for (const auto &l : sc.links)
    {
        std::vector<double> v(700);
        for (auto &x : v)
            x = g(rng);
        traces.emplace(l.id(), channel::ChannelTrace(l.id(), 0.0, 0.12, v));
    }
    std::vector<mac::NetworkFrame> frames{{1, mac::build_superframe(w, 0.01)},
                                          {2, mac::build_superframe(other, 0.01)}};
    const auto schedule = mac::schedule_networks(frames, 80.0, 4);

    const auto same = run_experiment(sc, traces, schedule, {DecisionBlock::same, -95.0});
    REQUIRE(!same.packets.empty());
    for (const auto &p : same.packets)
    {
        CHECK(p.or_db >= p.single_db);
        CHECK(p.sc_db >= p.or_db);
    }
    for (auto scheme : {Scheme::opportunistic, Scheme::selection_combining})
        for (std::size_t i = 0; i < 3; ++i)
        {
            CHECK(same.series.at(scheme)[i].times == same.series.at(Scheme::single_link)[i].times);
            CHECK(same.series.at(scheme)[i].dt_packet == doctest::Approx(schedule.period()));
        }
    std::size_t or_rows = 0;
    for (const auto &p : same.packets)
        or_rows += static_cast<std::size_t>(transmissions(Scheme::opportunistic, p.or_path));
    CHECK(same.log.at(Scheme::opportunistic).size() == or_rows);

    // Decisions at superframe start can pick a worse path than hindsight.
    const auto start = run_experiment(sc, traces, schedule);
    CHECK(start.packets.size() == same.packets.size());
    for (std::size_t i = 0; i < start.packets.size(); ++i)
        CHECK(start.packets[i].sc_db == same.packets[i].sc_db);

    // Single-link runs emit single-link series only.
    const auto single = scenario::build_scenario({wban(1, scenario::RelayMode::none, sites), other}, std::nullopt,
                                                 channel::ShadowingLevel::none, scenario::ChannelSource::synthetic);
    const auto r = run_experiment(single, traces, schedule);
    CHECK(r.series.size() == 1);
    CHECK(r.series.contains(Scheme::single_link));
    CHECK_THROWS(r.pooled(Scheme::opportunistic));
}
