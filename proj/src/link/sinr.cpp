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
#include <ostream>

namespace wbansim::link
{

std::string_view to_string(Path path)
{
    switch (path)
    {
    case Path::direct:
        return "direct";
    case Path::relay1:
        return "relay1";
    case Path::relay2:
        return "relay2";
    }
    return "direct";
}

std::string_view to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::single_link:
        return "single_link";
    case Scheme::opportunistic:
        return "opportunistic";
    case Scheme::selection_combining:
        return "selection_combining";
    }
    return "single_link";
}

Scheme parse_scheme(std::string_view text)
{
    for (auto s : {Scheme::single_link, Scheme::opportunistic, Scheme::selection_combining})
        if (to_string(s) == text)
            return s;
    throw ParameterError("unknown scheme '" + std::string(text) + "'");
}

std::string_view to_string(DecisionBlock mode)
{
    return mode == DecisionBlock::same ? "same" : "start_of_superframe";
}

DecisionBlock parse_decision_block(std::string_view text)
{
    if (text == "same")
        return DecisionBlock::same;
    if (text == "start_of_superframe")
        return DecisionBlock::start_of_superframe;
    throw ParameterError("unknown decision_block '" + std::string(text) + "'");
}

double sum_dbm(std::span<const double> powers_dbm)
{
    double mw = 0.0;
    for (double p : powers_dbm)
        mw += db_to_linear(p);
    return linear_to_db(mw);
}

double compute_sinr(double signal_dbm, std::span<const double> interferer_powers_dbm, double noise_dbm)
{
    double denom = db_to_linear(noise_dbm);
    for (double p : interferer_powers_dbm)
        denom += db_to_linear(p);
    return linear_to_db(db_to_linear(signal_dbm) / denom);
}

double path_metric(double first_hop_db, double second_hop_db) { return std::min(first_hop_db, second_hop_db); }

double PathMetrics::at(Path p) const
{
    switch (p)
    {
    case Path::direct:
        return direct_db;
    case Path::relay1:
        return relay1_db;
    case Path::relay2:
        return relay2_db;
    }
    return direct_db;
}

Path select_path_or(const PathMetrics &metrics)
{
    Path best = Path::direct;
    for (auto p : {Path::relay1, Path::relay2})
        if (metrics.at(p) > metrics.at(best))
            best = p;
    return best;
}

Path select_path_sc(const PathMetrics &realized) { return select_path_or(realized); }

int transmissions(Scheme scheme, Path chosen)
{
    switch (scheme)
    {
    case Scheme::single_link:
        return 1;
    case Scheme::opportunistic:
        return chosen == Path::direct ? 1 : 2;
    case Scheme::selection_combining:
        return 3;
    }
    return 1;
}

std::vector<double> ExperimentResult::pooled(Scheme scheme) const
{
    if (!series.count(scheme))
        throw ParameterError("scheme " + std::string(to_string(scheme)) + " was not simulated");
    std::vector<double> out;
    out.reserve(packets.size());
    for (const auto &p : packets)
    {
        switch (scheme)
        {
        case Scheme::single_link:
            out.push_back(p.single_db);
            break;
        case Scheme::opportunistic:
            out.push_back(p.or_db);
            break;
        case Scheme::selection_combining:
            out.push_back(p.sc_db);
            break;
        }
    }
    return out;
}

void write_packet_log_csv(std::ostream &out, std::span<const PacketRecord> records)
{
    out << "t_s,tx,rx,path,signal_dbm,interf_dbm,sinr_db\n";
    for (const auto &r : records)
        out << format_double(r.t) << ',' << r.tx << ',' << r.rx << ',' << to_string(r.chosen_path) << ','
            << format_double(r.signal_power_dbm) << ',' << format_double(r.interference_power_dbm) << ','
            << format_double(r.sinr_db) << '\n';
}

} // namespace wbansim::link
