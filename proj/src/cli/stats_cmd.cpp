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

#include "json.hpp"

#include <algorithm>
#include <fstream>

namespace wbansim::cli
{

namespace
{

using json = nlohmann::ordered_json;

constexpr std::array<stats::CurveKind, 3> curve_kinds{stats::CurveKind::outage, stats::CurveKind::lcr,
                                                      stats::CurveKind::aod};

struct CurveKey
{
    stats::CurveKind kind;
    link::Scheme scheme;
    std::string source; ///< "empirical" or "theoretical"

    auto operator<=>(const CurveKey &) const = default;

    std::string file_name() const
    {
        return "curve_" + std::string(stats::to_string(kind)) + "_" + std::string(link::to_string(scheme)) + "_" +
               source + ".csv";
    }
};

struct SetStats
{
    std::map<CurveKey, stats::ThresholdCurve> curves;
    std::map<link::Scheme, std::vector<double>> pooled_db;
};

std::vector<fs::path> sorted_files(const fs::path &dir, std::string_view prefix)
{
    std::vector<fs::path> out;
    for (const auto &entry : fs::directory_iterator(dir))
    {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with(prefix) && entry.path().extension() == ".csv")
            out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> sorted_dirs(const fs::path &dir)
{
    std::vector<fs::path> out;
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.is_directory())
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

template <typename Reader> auto read_with_context(const fs::path &path, Reader reader)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path.string());
    try
    {
        return reader(in);
    }
    catch (const ParseError &e)
    {
        throw ParseError(path.string(), e);
    }
    catch (const ValidationError &e)
    {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fit_json(const stats::FittedDistribution &d)
{
    json j;
    j["family"] = stats::to_string(d.family);
    json params = json::array();
    for (std::size_t i = 0; i < stats::parameter_count(d.family); ++i)
        params.push_back(d.params[i]);
    j["params"] = params;
    j["nll"] = number_or_null(d.nll);
    j["n"] = d.n;
    return j;
}

// Fit, thresholds and curves of one scheme's pooled values.
json scheme_stats(const Settings &settings, link::Scheme scheme, const std::vector<link::SinrSeries> &streams,
                  SetStats &acc)
{
    const auto grid = settings.thresholds();
    std::vector<double> pooled;
    std::vector<stats::ThresholdCurve> lcr, aod;
    for (const auto &s : streams)
    {
        pooled.insert(pooled.end(), s.values.begin(), s.values.end());
        lcr.push_back(stats::lcr_curve(s.values, s.dt_packet, grid));
        aod.push_back(stats::aod_curve(s.values, s.dt_packet, grid));
    }
    acc.pooled_db[scheme] = pooled;
    acc.curves[{stats::CurveKind::outage, scheme, "empirical"}] = stats::outage_probability(pooled, grid);
    acc.curves[{stats::CurveKind::lcr, scheme, "empirical"}] = stats::average_curves(lcr);
    acc.curves[{stats::CurveKind::aod, scheme, "empirical"}] = stats::average_curves(aod);

    json j;
    j["n"] = pooled.size();
    j["streams"] = streams.size();
    j["outage_threshold_db"] = {{"probability", settings.outage_probability},
                                {"value", stats::outage_threshold(pooled, settings.outage_probability)}};

    // Fitting runs on linear SINR.
    std::vector<double> linear(pooled.size());
    std::transform(pooled.begin(), pooled.end(), linear.begin(), db_to_linear);
    try
    {
        const auto fit = stats::fit_best_distribution(linear, settings.families);
        j["fit"] = fit_json(fit.best);
        json candidates = json::array();
        for (const auto &c : fit.candidates)
            candidates.push_back(fit_json(c));
        j["candidates"] = candidates;
        json skipped = json::array();
        for (const auto &[family, reason] : fit.skipped)
            skipped.push_back({{"family", stats::to_string(family)}, {"reason", reason}});
        j["skipped"] = skipped;

        if (stats::supports_theoretical_lcr(fit.best.family))
        {
            acc.curves[{stats::CurveKind::outage, scheme, "theoretical"}] =
                stats::theoretical_outage_curve(fit.best, grid);
            acc.curves[{stats::CurveKind::lcr, scheme, "theoretical"}] =
                stats::theoretical_lcr_curve(fit.best, grid, settings.stats_doppler_hz);
            acc.curves[{stats::CurveKind::aod, scheme, "theoretical"}] =
                stats::theoretical_aod_curve(fit.best, grid, settings.stats_doppler_hz);
            j["theoretical"] = "emitted";
        }
        else
        {
            j["theoretical"] = "skipped: closed-form LCR exists for lognormal and gamma fits only, best fit is " +
                               std::string(stats::to_string(fit.best.family));
        }
    }
    catch (const std::exception &e)
    {
        j["fit"] = nullptr;
        j["fit_error"] = e.what();
        j["theoretical"] = "skipped: no fit";
    }
    return j;
}

json dependence_stats(const Settings &settings, const std::vector<PowerLog> &logs)
{
    json j;
    std::vector<double> signal, interference;
    for (const auto &log : logs)
        for (std::size_t i = 0; i < log.signal_dbm.size(); ++i)
        {
            signal.push_back(db_to_linear(log.signal_dbm[i]));
            interference.push_back(std::isfinite(log.interference_dbm[i]) ? db_to_linear(log.interference_dbm[i])
                                                                          : 0.0);
        }
    if (signal.empty())
    {
        j["cross_correlation"] = nullptr;
        j["independence"] = nullptr;
        j["note"] = "no single_link packet log";
        return j;
    }
    j["n"] = signal.size();
    try
    {
        j["cross_correlation"] = stats::cross_correlation(signal, interference);
    }
    catch (const std::exception &e)
    {
        j["cross_correlation"] = nullptr;
        j["cross_correlation_error"] = e.what();
    }
    try
    {
        const auto r = stats::independence_check(signal, interference, settings.hist_bins);
        j["independence"] = {{"score", r.score}, {"bins", r.bins}, {"n", r.n}, {"undersampled", r.undersampled}};
    }
    catch (const std::exception &e)
    {
        j["independence"] = nullptr;
        j["independence_error"] = e.what();
    }
    return j;
}

json header_json(const Settings &settings, const Variant &variant)
{
    json j;
    j["format"] = "wbansim-stats/1";
    j["seed"] = settings.seed;
    j["config_hash"] = hash_hex(settings.config_hash);
    j["variant"] = variant.name();
    j["hub"] = scenario::to_string(variant.hub);
    j["shadowing"] = channel::to_string(variant.shadowing);
    j["domain"] = "fits on linear SINR; thresholds in dB";
    return j;
}

void write_curves(const fs::path &dir, const std::map<CurveKey, stats::ThresholdCurve> &curves,
                  const Settings &settings)
{
    for (const auto &[key, curve] : curves)
        write_file(dir / key.file_name(), [&](std::ostream &os) { write_curve_csv(os, curve, settings); });
}

SetStats process_set(const Settings &settings, const Variant &variant, const scenario::AnalysisSet &set,
                     const fs::path &run_dir, const fs::path &out_dir)
{
    if (!fs::is_directory(run_dir))
        throw ValidationError("missing run output " + run_dir.string() + "; run the 'run' subcommand first");
    std::map<link::Scheme, std::vector<link::SinrSeries>> by_scheme;
    std::vector<PowerLog> logs;
    for (const auto &layout_dir : sorted_dirs(run_dir))
    {
        for (const auto &path : sorted_files(layout_dir, "series_"))
        {
            auto s = read_with_context(path, read_series_csv);
            by_scheme[s.scheme].push_back(std::move(s));
        }
        const auto log_path = layout_dir / "packets_single_link.csv";
        if (fs::exists(log_path))
            logs.push_back(read_with_context(log_path, read_packet_log_csv));
    }
    if (by_scheme.empty())
        throw ValidationError("no series files under " + run_dir.string());

    SetStats acc;
    json summary = header_json(settings, variant);
    summary["set"] = {{"subject_of_interest", set.subject_of_interest}, {"interferer", set.interferer}};
    json schemes;
    for (const auto &[scheme, streams] : by_scheme)
        schemes[std::string(link::to_string(scheme))] = scheme_stats(settings, scheme, streams, acc);
    summary["schemes"] = schemes;
    summary["dependence"] = dependence_stats(settings, logs);

    write_curves(out_dir, acc.curves, settings);
    write_file(out_dir / "summary.json", [&](std::ostream &os) { os << summary.dump(2) << '\n'; });
    return acc;
}

void write_average(const Settings &settings, const Variant &variant, const std::vector<SetStats> &sets,
                   const fs::path &dir)
{
    std::map<CurveKey, std::vector<stats::ThresholdCurve>> grouped;
    std::map<link::Scheme, std::vector<double>> pooled;
    for (const auto &s : sets)
    {
        for (const auto &[key, curve] : s.curves)
            grouped[key].push_back(curve);
        for (const auto &[scheme, values] : s.pooled_db)
            pooled[scheme].insert(pooled[scheme].end(), values.begin(), values.end());
    }
    std::map<CurveKey, stats::ThresholdCurve> averaged;
    json counts;
    for (const auto &[key, curves] : grouped)
    {
        averaged[key] = stats::average_curves(curves);
        counts[key.file_name()] = curves.size();
    }
    write_curves(dir, averaged, settings);

    json summary = header_json(settings, variant);
    summary["sets"] = sets.size();
    json schemes;
    for (const auto &[scheme, values] : pooled)
        schemes[std::string(link::to_string(scheme))] = {
            {"n", values.size()},
            {"outage_threshold_db",
             {{"probability", settings.outage_probability},
              {"value", stats::outage_threshold(values, settings.outage_probability)}}}};
    summary["schemes"] = schemes;
    summary["curves_averaged_over_sets"] = counts;
    write_file(dir / "summary.json", [&](std::ostream &os) { os << summary.dump(2) << '\n'; });
}

} // namespace

void cmd_stats(const Settings &settings, const fs::path &out, const std::string &config_name)
{
    const fs::path root = out / "stats";
    Manifest manifest(root, "stats", config_name, settings);
    const auto variants = settings.variants();
    const auto sets = settings.analysis_sets();
    std::vector<SetStats> results(variants.size() * sets.size());

    parallel_for(results.size(), settings.workers,
                 [&](std::size_t task)
                 {
                     const auto &variant = variants[task / sets.size()];
                     const auto &set = sets[task % sets.size()];
                     results[task] = process_set(settings, variant, set,
                                                 out / "run" / variant.name() / set_name(set),
                                                 root / variant.name() / set_name(set));
                     manifest.complete_set(variant.name() + "/" + set_name(set));
                 });

    for (std::size_t v = 0; v < variants.size(); ++v)
    {
        const std::vector<SetStats> part(results.begin() + static_cast<std::ptrdiff_t>(v * sets.size()),
                                         results.begin() + static_cast<std::ptrdiff_t>((v + 1) * sets.size()));
        write_average(settings, variants[v], part, root / variants[v].name() / "average");
    }
    manifest.finish();
}

} // namespace wbansim::cli
