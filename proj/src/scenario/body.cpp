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
#include "wbansim/scenario.hpp"

#include <array>
#include <cmath>
#include <string>

namespace wbansim::scenario
{

namespace
{

struct SiteInfo
{
    BodySite site;
    std::string_view name;
    // Approximate standing-posture position in metres: lateral (left < 0), height, front (> 0).
    double x, y, z;
};

constexpr std::array<SiteInfo, 10> sites{{
    {BodySite::chest, "chest", 0.0, 1.35, 0.12},
    {BodySite::left_hip, "left_hip", -0.17, 1.0, 0.0},
    {BodySite::right_hip, "right_hip", 0.17, 1.0, 0.0},
    {BodySite::left_ankle, "left_ankle", -0.1, 0.1, 0.0},
    {BodySite::right_ankle, "right_ankle", 0.1, 0.1, 0.0},
    {BodySite::left_wrist, "left_wrist", -0.28, 0.85, 0.02},
    {BodySite::right_wrist, "right_wrist", 0.28, 0.85, 0.02},
    {BodySite::left_upper_arm, "left_upper_arm", -0.22, 1.3, 0.0},
    {BodySite::head, "head", 0.0, 1.65, 0.0},
    {BodySite::back, "back", 0.0, 1.35, -0.12},
}};

constexpr std::array<BodySite, 10> site_list{BodySite::chest,      BodySite::left_hip,    BodySite::right_hip,
                                             BodySite::left_ankle, BodySite::right_ankle, BodySite::left_wrist,
                                             BodySite::right_wrist, BodySite::left_upper_arm, BodySite::head,
                                             BodySite::back};

const SiteInfo &info(BodySite site) { return sites[static_cast<std::size_t>(site)]; }

} // namespace

std::string_view to_string(BodySite site) { return info(site).name; }

BodySite parse_body_site(std::string_view text)
{
    for (const auto &s : sites)
        if (s.name == text)
            return s.site;
    throw ParameterError("unknown body site '" + std::string(text) + "'");
}

std::span<const BodySite> all_body_sites() { return site_list; }

double onbody_mean_gain_db(BodySite a, BodySite b)
{
    if (a == b)
        throw ParameterError("on-body link endpoints must differ");
    const auto &p = info(a);
    const auto &q = info(b);
    const double d = std::hypot(p.x - q.x, p.y - q.y, p.z - q.z);
    const bool around_body = (p.z > 0.05 && q.z < -0.05) || (p.z < -0.05 && q.z > 0.05);
    return -35.0 - 30.0 * std::log10(d / 0.1) - (around_body ? 15.0 : 0.0);
}

std::string NodeId::name() const { return std::to_string(network) + "." + std::string(to_string(site)); }

channel::LinkId link_between(const NodeId &tx, const NodeId &rx) { return {tx.name(), rx.name()}; }

} // namespace wbansim::scenario
