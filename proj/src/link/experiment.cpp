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
#include "wbansim/link.hpp"
#include "wbansim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace wbansim::link
{

namespace
{

using scenario::NodeId;

struct HopState
{
    double signal_dbm;
    double interference_dbm;
    double sinr_db;
};

class Engine
{
public:
    Engine(const scenario::ScenarioConfig &sc, const TraceSet &traces, const mac::SuperframeSchedule &schedule,
           double noise_dbm)
        : sc_(sc), traces_(traces), schedule_(schedule), noise_dbm_(noise_dbm)
    {
    }

    void validate_coverage() const
    {
        const double end = schedule_.duration();
        std::optional<double> dt;
        for (const auto &l : sc_.links)
        {
            const auto id = l.id();
            const auto it = traces_.find(id);
            if (it == traces_.end())
                throw ValidationError("no trace for required link " + id.str());
            const auto &tr = it->second;
            if (tr.t0() > 1e-9)
                throw ValidationError("trace " + id.str() + " starts at t=" + format_double(tr.t0()) +
                                      " s, after the schedule start t=0 s");
            if (tr.end_time() < end * (1.0 - 1e-12))
                throw ValidationError("trace " + id.str() + " ends at t=" + format_double(tr.end_time()) +
                                      " s; schedule needs coverage to t=" + format_double(end) + " s");
            if (dt && std::abs(*dt - tr.dt()) > 1e-9 * *dt)
                throw ValidationError("trace " + id.str() + " has dt=" + format_double(tr.dt()) +
                                      " s; other traces use dt=" + format_double(*dt) + " s");
            dt = tr.dt();
        }
    }

    double gain_db(const NodeId &tx, const NodeId &rx, double t) const
    {
        const auto id = scenario::link_between(tx, rx);
        const auto it = traces_.find(id);
        if (it == traces_.end())
            throw ValidationError("no trace for link " + id.str());
        const auto k = it->second.index_at(t);
        if (!k)
            throw ValidationError("trace " + id.str() + " has a coverage gap at t=" + format_double(t) + " s");
        return it->second.samples()[*k];
    }

    std::vector<double> interference_dbm(const NodeId &victim, double t) const
    {
        std::vector<double> out;
        for (const auto &tx : schedule_.transmitting_at(t))
        {
            if (tx.network_id == victim.network)
                continue;
            const auto &cfg = sc_.network(tx.network_id);
            const NodeId src = tx.hop == mac::Hop::first ? cfg.sensor(tx.sensor_index)
                                                          : cfg.interfering_forwarder(tx.sensor_index);
            out.push_back(cfg.tx_power_dbm + gain_db(src, victim, t));
        }
        return out;
    }

    HopState hop(const NodeId &tx, const NodeId &rx, double tx_power_dbm, double t) const
    {
        const double signal = tx_power_dbm + gain_db(tx, rx, t);
        const auto interf = interference_dbm(rx, t);
        return {signal, sum_dbm(interf), compute_sinr(signal, interf, noise_dbm_)};
    }

    PacketRecord record(double t, const NodeId &tx, const NodeId &rx, const HopState &h, Path path) const
    {
        return {t, tx.name(), rx.name(), h.signal_dbm, h.interference_dbm, noise_dbm_, h.sinr_db, path};
    }

private:
    const scenario::ScenarioConfig &sc_;
    const TraceSet &traces_;
    const mac::SuperframeSchedule &schedule_;
    double noise_dbm_;
};

double midpoint(const mac::SlotAssignment &s) { return s.slot_start + 0.5 * s.slot_len; }

} // namespace

ExperimentResult run_experiment(const scenario::ScenarioConfig &sc, const TraceSet &traces,
                                const mac::SuperframeSchedule &schedule, const ExperimentOptions &options)
{
    Engine engine(sc, traces, schedule, options.noise_dbm);
    engine.validate_coverage();

    const auto &w = sc.interest();
    const double p_tx = w.tx_power_dbm;
    const NodeId hub = w.hub();

    ExperimentResult result;
    result.two_hop = w.two_hop();

    std::vector<Scheme> schemes{Scheme::single_link};
    if (w.two_hop())
    {
        schemes.push_back(Scheme::opportunistic);
        schemes.push_back(Scheme::selection_combining);
    }
    for (auto scheme : schemes)
    {
        auto &streams = result.series[scheme];
        for (const auto &s : w.sensors())
            streams.push_back({scheme, s.name(), schedule.period(), {}, {}});
        result.log[scheme];
    }

    for (const auto *cycle : schedule.cycles_of(w.network_id))
    {
        const double t_dec = cycle->cycle_start;
        for (const auto &slot : cycle->slots)
        {
            if (slot.hop != mac::Hop::first)
                continue;
            const std::size_t i = slot.sensor_index;
            const NodeId sensor = w.sensor(i);
            const double t1 = midpoint(slot);

            PacketOutcome pkt;
            pkt.t_decision = t_dec;
            pkt.t_transmit = t1;
            pkt.sensor_index = i;

            const HopState direct = engine.hop(sensor, hub, p_tx, t1);
            pkt.single_db = direct.sinr_db;
            result.log[Scheme::single_link].push_back(engine.record(t1, sensor, hub, direct, Path::direct));
            result.series[Scheme::single_link][i].times.push_back(t1);
            result.series[Scheme::single_link][i].values.push_back(direct.sinr_db);

            if (!w.two_hop())
            {
                pkt.or_db = pkt.sc_db = direct.sinr_db;
                pkt.metrics = pkt.realized = {direct.sinr_db, direct.sinr_db, direct.sinr_db};
                result.packets.push_back(pkt);
                continue;
            }

            const mac::SlotAssignment *fwd = nullptr;
            for (const auto &s : cycle->slots)
                if (s.hop == mac::Hop::second && s.sensor_index == i)
                    fwd = &s;
            if (fwd == nullptr)
                throw ValidationError("two-hop superframe lacks a forwarding slot for " + sensor.name());
            const double t2 = midpoint(*fwd);

            const auto relays = w.relay_candidates(i);
            std::array<HopState, 2> first{}, second{};
            for (std::size_t k = 0; k < 2; ++k)
            {
                first[k] = engine.hop(sensor, relays[k], p_tx, t1);
                second[k] = engine.hop(relays[k], hub, p_tx, t2);
            }
            pkt.realized = {direct.sinr_db, path_metric(first[0].sinr_db, second[0].sinr_db),
                            path_metric(first[1].sinr_db, second[1].sinr_db)};

            if (options.decision_block == DecisionBlock::same)
                pkt.metrics = pkt.realized;
            else
            {
                const double d = engine.hop(sensor, hub, p_tx, t_dec).sinr_db;
                std::array<double, 2> r{};
                for (std::size_t k = 0; k < 2; ++k)
                    r[k] = path_metric(engine.hop(sensor, relays[k], p_tx, t_dec).sinr_db,
                                       engine.hop(relays[k], hub, p_tx, t_dec).sinr_db);
                pkt.metrics = {d, r[0], r[1]};
            }

            pkt.or_path = select_path_or(pkt.metrics);
            pkt.or_db = pkt.realized.at(pkt.or_path);
            pkt.sc_path = select_path_sc(pkt.realized);
            pkt.sc_db = pkt.realized.at(pkt.sc_path);

            auto &or_log = result.log[Scheme::opportunistic];
            if (pkt.or_path == Path::direct)
                or_log.push_back(engine.record(t1, sensor, hub, direct, Path::direct));
            else
            {
                const std::size_t k = pkt.or_path == Path::relay1 ? 0 : 1;
                or_log.push_back(engine.record(t1, sensor, relays[k], first[k], pkt.or_path));
                or_log.push_back(engine.record(t2, relays[k], hub, second[k], pkt.or_path));
            }

            auto &sc_log = result.log[Scheme::selection_combining];
            sc_log.push_back(engine.record(t1, sensor, hub, direct, Path::direct));
            for (std::size_t k = 0; k < 2; ++k)
            {
                const Path p = k == 0 ? Path::relay1 : Path::relay2;
                sc_log.push_back(engine.record(t1, sensor, relays[k], first[k], p));
                sc_log.push_back(engine.record(t2, relays[k], hub, second[k], p));
            }

            for (auto [scheme, v] : {std::pair{Scheme::opportunistic, pkt.or_db},
                                     std::pair{Scheme::selection_combining, pkt.sc_db}})
            {
                result.series[scheme][i].times.push_back(t1);
                result.series[scheme][i].values.push_back(v);
            }
            result.packets.push_back(pkt);
        }
    }
    return result;
}

} // namespace wbansim::link
