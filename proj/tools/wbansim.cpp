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

#include "CLI11.hpp"

#include <iostream>

namespace
{

constexpr int exit_config_error = 1;
constexpr int exit_data_error = 2;

} // namespace

int main(int argc, char **argv)
{
    using namespace wbansim;

    CLI::App app{"Coexistence simulator for wireless body area networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;

    const std::map<std::string, void (*)(const cli::Settings &, const cli::fs::path &, const std::string &)> commands{
        {"synth", cli::cmd_synth},
        {"run", cli::cmd_run},
        {"stats", cli::cmd_stats},
        {"report", cli::cmd_report},
    };
    const std::map<std::string, std::string> help{
        {"synth", "Write synthetic channel traces for every required link"},
        {"run", "Simulate every analysis set and write SINR series and packet logs"},
        {"stats", "Compute outage, LCR and AOD curves, fits and dependence summaries"},
        {"report", "Collect per-figure CSV tables from the stats outputs"},
    };
    for (const auto &[name, fn] : commands)
    {
        auto *sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", config_path, "Scenario config file")->required();
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--seed", seed, "Override [run] seed");
        sub->add_option("--workers", workers, "Override [run] workers")->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    cli::Settings settings;
    try
    {
        auto file = cli::ConfigFile::load(config_path);
        if (seed)
            file.set("run", "seed", std::to_string(*seed));
        if (workers)
            file.set("run", "workers", std::to_string(*workers));
        settings = cli::load_settings(file);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    try
    {
        commands.at(command)(settings, out_dir, cli::fs::path(config_path).filename().string());
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data_error;
    }
    return 0;
}
