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

#include <algorithm>
#include <cmath>

namespace wbansim::scenario
{

void MotionModel::validate() const
{
    if (!(corridor_length > 0.0) || !(corridor_width > 0.0) || !(walking_speed > 0.0) || !(min_separation > 0.0))
        throw ParameterError("motion model lengths and speed must be positive");
    if (min_separation > corridor_length)
        throw ParameterError("min_separation exceeds corridor_length");
}

double motion_distance(const MotionModel &model, double t)
{
    const double floor_m = std::max(model.min_separation, model.corridor_width);
    if (t >= model.pass_duration())
        return std::max(model.corridor_length, floor_m);
    const double along = std::abs(model.corridor_length - 2.0 * model.walking_speed * std::max(t, 0.0));
    return std::max(along, floor_m);
}

namespace
{

std::size_t motion_samples(double duration, double dt)
{
    if (!(dt > 0.0))
        throw ParameterError("dt must be positive");
    if (duration < dt * (1.0 - 1e-9))
        throw ParameterError("duration must be at least dt");
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

} // namespace

std::vector<double> simulate_motion(const MotionModel &model, double duration, double dt)
{
    model.validate();
    std::vector<double> out(motion_samples(duration, dt));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = motion_distance(model, static_cast<double>(k) * dt);
    return out;
}

std::vector<double> simulate_motion_periodic(const MotionModel &model, double duration, double dt)
{
    model.validate();
    const double period = model.pass_duration();
    std::vector<double> out(motion_samples(duration, dt));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = motion_distance(model, std::fmod(static_cast<double>(k) * dt, period));
    return out;
}

} // namespace wbansim::scenario
