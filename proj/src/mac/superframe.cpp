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
#include "wbansim/mac.hpp"

#include <algorithm>

namespace wbansim::mac
{

std::string_view to_string(Hop hop) { return hop == Hop::first ? "first" : "second"; }

std::vector<SlotAssignment> build_superframe(const scenario::WbanConfig &config, double slot_len)
{
    if (!(slot_len > 0.0))
        throw ParameterError("slot length must be positive");
    if (config.sensor_sites.empty())
        throw ParameterError("network " + std::to_string(config.network_id) + " has no sensors");

    const double phases = config.two_hop() ? 2.0 : 1.0;
    std::vector<SlotAssignment> slots;
    for (std::size_t i = 0; i < config.sensor_sites.size(); ++i)
    {
        const double base = phases * static_cast<double>(i) * slot_len;
        const auto name = config.sensor(i).name();
        slots.push_back({config.network_id, name, i, base, slot_len, Hop::first});
        if (config.two_hop())
            slots.push_back({config.network_id, name, i, base + slot_len, slot_len, Hop::second});
    }
    return slots;
}

double superframe_length(std::span<const SlotAssignment> slots)
{
    double end = 0.0;
    for (const auto &s : slots)
        end = std::max(end, s.slot_end());
    return end;
}

} // namespace wbansim::mac
