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

namespace wbansim::cli
{

void cmd_synth(const Settings &settings, const fs::path &out, const std::string &config_name)
{
    const fs::path root = out / "traces";
    Manifest manifest(root, "synth", config_name, settings);
    const auto variants = settings.variants();
    const auto sets = settings.analysis_sets();

    parallel_for(variants.size() * sets.size(), settings.workers,
                 [&](std::size_t task)
                 {
                     const auto &variant = variants[task / sets.size()];
                     const auto &set = sets[task % sets.size()];
                     const auto dir = root / variant.name() / set_name(set);
                     for (const auto &[id, trace] : synthesize_traces(settings, variant, set))
                         write_file(dir / (id.source + "__" + id.destination + ".csv"),
                                    [&](std::ostream &os) { channel::write_trace(os, trace); });
                     manifest.complete_set(variant.name() + "/" + set_name(set));
                 });
    manifest.finish();
}

} // namespace wbansim::cli
