#pragma once

// Parameter sweeps over coupling and detuning, deterministic CSV/JSON
// emission, entanglement-death scans, and the figure-data pipeline.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "plot.hpp"
#include "transform.hpp"
#include "version.hpp"

namespace rabi3 {

struct SweepSpec {
    double wa = 1.0;
    std::vector<double> wc_list;
    double g_min = 0.0;
    double g_max = 0.0;
    int g_steps = 1;
    int cutoff = -1;  // -1 selects the automatic policy per grid point
    std::string format = "csv";
    std::string out_path;  // empty: no file written

    void validate() const {
        if (!(wa > 0.0)) throw InvalidParams("sweep needs wa > 0");
        if (wc_list.empty()) throw InvalidParams("wc_list must not be empty");
        for (double wc : wc_list)
            if (!(wc > 0.0)) throw InvalidParams("wc values must be > 0");
        if (!(g_min >= 0.0)) throw InvalidParams("g_min must be >= 0");
        const bool single = g_max == g_min && g_steps == 1;
        const bool range = g_max > g_min && g_steps >= 2;
        if (!single && !range)
            throw InvalidParams("need g_max > g_min with g_steps >= 2, or a single point with "
                                "g_max == g_min and g_steps == 1");
        if (cutoff != -1 && cutoff < 1) throw InvalidParams("cutoff must be >= 1 or -1 for auto");
        if (format != "csv" && format != "json") throw InvalidParams("format must be csv or json");
    }
    std::vector<double> g_grid() const {
        std::vector<double> g(g_steps);
        for (int i = 0; i < g_steps; ++i)
            g[i] = g_steps == 1 ? g_min : g_min + (g_max - g_min) * double(i) / (g_steps - 1);
        return g;
    }
};

struct SweepRow {
    double wc = 0, g = 0;
    double chi = 0, c3 = 0;
    double e_exact = 0, e_transformed = 0, e_quadratic = 0, rel_err = 0;
    double fidelity = 0;
    double ent_exact = 0, ent_transformed = 0;
    int cutoff_used = 0;
    std::string status = "ok";
};

namespace detail {

inline std::string fmt(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string status_from(const char* what) {
    std::string s(what);
    s = s.substr(0, s.find(':'));
    std::replace(s.begin(), s.end(), ' ', '-');
    return s.empty() ? "error" : s;
}

inline std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

using ColumnGetter = std::function<std::string(const SweepRow&)>;

struct Column {
    std::string name;
    ColumnGetter get;
};

inline std::vector<Column> all_columns() {
    return {
        {"wc", [](const SweepRow& r) { return fmt(r.wc); }},
        {"g", [](const SweepRow& r) { return fmt(r.g); }},
        {"chi", [](const SweepRow& r) { return fmt(r.chi); }},
        {"c3", [](const SweepRow& r) { return fmt(r.c3); }},
        {"e_exact", [](const SweepRow& r) { return fmt(r.e_exact); }},
        {"e_transformed", [](const SweepRow& r) { return fmt(r.e_transformed); }},
        {"e_quadratic", [](const SweepRow& r) { return fmt(r.e_quadratic); }},
        {"rel_err", [](const SweepRow& r) { return fmt(r.rel_err); }},
        {"fidelity", [](const SweepRow& r) { return fmt(r.fidelity); }},
        {"ent_exact", [](const SweepRow& r) { return fmt(r.ent_exact); }},
        {"ent_transformed", [](const SweepRow& r) { return fmt(r.ent_transformed); }},
        {"cutoff_used", [](const SweepRow& r) { return std::to_string(r.cutoff_used); }},
        {"status", [](const SweepRow& r) { return r.status; }},
    };
}

inline void write_csv_stream(std::ostream& out, const std::vector<SweepRow>& rows,
                             const std::vector<Column>& cols, const std::string& spec_line,
                             long long wall_ms) {
    if (rows.empty()) throw EmptySeries("csv writer received no rows");
    for (size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c].name;
    out << "\n";
    for (const auto& r : rows) {
        for (size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c].get(r);
        out << "\n";
    }
    out << "# meta: tool=rabi3 version=" << version << "\n";
    out << "# spec: " << spec_line << "\n";
    out << "# generated: " << timestamp_utc() << " walltime_ms=" << wall_ms << "\n";
}

} // namespace detail

inline std::string spec_summary(const SweepSpec& s) {
    std::string wc;
    for (size_t i = 0; i < s.wc_list.size(); ++i)
        wc += (i ? "," : "") + detail::fmt(s.wc_list[i]);
    return "wa=" + detail::fmt(s.wa) + " wc=" + wc + " g=[" + detail::fmt(s.g_min) + "," +
           detail::fmt(s.g_max) + "] steps=" + std::to_string(s.g_steps) +
           " cutoff=" + (s.cutoff == -1 ? std::string("auto") : std::to_string(s.cutoff)) +
           " format=" + s.format;
}

// One grid point: exact and transformed solutions plus derived observables.
// The reduced state of every exact solve is validated (unit trace, symmetry,
// positivity) before its entanglement enters the row.
inline SweepRow compute_row(double wa, double wc, double g, int cutoff) {
    SweepRow row;
    row.wc = wc;
    row.g = g;
    row.cutoff_used = cutoff > 0 ? cutoff : auto_cutoff(wa, wc, g);
    try {
        row.chi = solve_chi(wa, wc, g);
        const TransformCoeffs c = coeffs_at(wa, wc, g, row.chi);
        row.c3 = c.C3;
        row.e_transformed = c.lam[0];
        row.e_quadratic = small_g_energy_law(wa, wc, g);

        const ExactGround ex = solve_exact(ModelParams{wa, wc, g, row.cutoff_used});
        row.e_exact = ex.energy;
        row.rel_err = std::abs(row.e_transformed - row.e_exact) / std::abs(row.e_exact);

        const TransformedSolution tr = transformed_ground(wa, wc, g, row.cutoff_used, row.chi);
        row.fidelity = fidelity(tr.state, ex.state);

        TwoQubitRDM rdm_ex = two_qubit_rdm(ex.state);
        rdm_ex.validate();
        row.ent_exact = pairwise_entanglement(rdm_ex);

        TwoQubitRDM rdm_tr = rdm_from_moments(row.chi, c.K[0]);
        rdm_tr.validate();
        row.ent_transformed = pairwise_entanglement(rdm_tr);
    } catch (const Error& e) {
        row.status = detail::status_from(e.what());
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.chi = row.c3 = row.e_exact = row.e_transformed = row.e_quadratic = nan;
        row.rel_err = row.fidelity = row.ent_exact = row.ent_transformed = nan;
    }
    return row;
}

inline void write_rows_file(const std::string& path, const std::string& format,
                            const std::vector<SweepRow>& rows, const std::string& spec_line,
                            long long wall_ms) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    if (format == "csv") {
        detail::write_csv_stream(out, rows, detail::all_columns(), spec_line, wall_ms);
    } else {
        nlohmann::json j;
        j["meta"] = {{"tool", "rabi3"},
                     {"version", version},
                     {"spec", spec_line},
                     {"generated", detail::timestamp_utc()},
                     {"walltime_ms", wall_ms}};
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"wc", r.wc},
                                 {"g", r.g},
                                 {"chi", r.chi},
                                 {"c3", r.c3},
                                 {"e_exact", r.e_exact},
                                 {"e_transformed", r.e_transformed},
                                 {"e_quadratic", r.e_quadratic},
                                 {"rel_err", r.rel_err},
                                 {"fidelity", r.fidelity},
                                 {"ent_exact", r.ent_exact},
                                 {"ent_transformed", r.ent_transformed},
                                 {"cutoff_used", r.cutoff_used},
                                 {"status", r.status}});
        }
        out << j.dump(2) << "\n";
    }
    if (!out) throw Error("write failed: " + path);
}

// Deterministic row order: wc outer, g inner. Per-point solver failures are
// recorded in the status column instead of aborting the sweep.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SweepRow> rows;
    rows.reserve(spec.wc_list.size() * size_t(spec.g_steps));
    for (double wc : spec.wc_list)
        for (double g : spec.g_grid()) rows.push_back(compute_row(spec.wa, wc, g, spec.cutoff));
    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    if (!spec.out_path.empty())
        write_rows_file(spec.out_path, spec.format, rows, spec_summary(spec), wall);
    return rows;
}

// Death policy: scan g in [0, 3*wa] at step 0.05*wa; once a sample exceeds
// 1e-6 the scan is armed, and the first armed sample below 1e-12 brackets
// the death point, refined by bisection to 1e-3*wa.
inline double find_entanglement_death(double wa, double wc, const std::string& which) {
    if (!(wa > 0.0) || !(wc > 0.0)) throw InvalidParams("death scan needs wa > 0, wc > 0");
    if (which != "exact" && which != "transformed")
        throw InvalidParams("which must be exact or transformed");

    const auto ent_at = [&](double g) {
        if (which == "transformed") {
            const double chi = solve_chi(wa, wc, g);
            const TransformCoeffs c = coeffs_at(wa, wc, g, chi);
            return pairwise_entanglement(rdm_from_moments(chi, c.K[0]));
        }
        const ExactGround ex = solve_converged(wa, wc, g, 1e-9);
        return pairwise_entanglement(two_qubit_rdm(ex.state));
    };

    const double step = 0.05 * wa;
    bool armed = false;
    double peak = 0.0, floor_after_peak = std::numeric_limits<double>::infinity();
    double g_prev = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double g = step * i;
        const double n = ent_at(g);
        if (armed) floor_after_peak = std::min(floor_after_peak, n);
        peak = std::max(peak, n);
        if (n > 1e-6) {
            armed = true;
        } else if (armed && n < 1e-12) {
            double lo = g_prev, hi = g;
            while (hi - lo > 1e-3 * wa) {
                const double mid = 0.5 * (lo + hi);
                if (ent_at(mid) < 1e-12) hi = mid;
                else lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        g_prev = g;
    }
    if (!armed)
        throw NoDeathFound(which + " entanglement never exceeded 1e-6 on [0, 3*wa]; peak " +
                           detail::fmt(peak));
    throw NoDeathFound(which + " entanglement never fell below 1e-12 on [0, 3*wa]; minimum after "
                       "arming " + detail::fmt(floor_after_peak) + ", peak " + detail::fmt(peak));
}

struct FigureSet {
    std::vector<std::string> files;
    double wall_seconds = 0.0;
    std::vector<SweepRow> short_range;  // g in [0, 1], all detunings
    std::vector<SweepRow> long_range;   // g in [0, 3], all detunings
};

// Emits the eight figure data files:
//   fig1a chi, fig1b c3, fig1c energies, fig1d fidelity      (g in [0,1])
//   fig2a/b/c entanglement per detuning wc = 0.8, 1.0, 1.2   (g in [0,3])
//   energy_combined: every column on the short grid
// plus one SVG per data file when svg is set.
inline FigureSet write_figures(const std::string& dir, bool svg = false, int points = 201,
                               double wa = 1.0) {
    if (points < 1) throw InvalidParams("points must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(dir);
    const std::vector<double> wcs{0.8 * wa, 1.0 * wa, 1.2 * wa};

    SweepSpec short_spec{wa, wcs, 0.0, 1.0 * wa, points, -1, "csv", ""};
    SweepSpec long_spec{wa, wcs, 0.0, 3.0 * wa, points, -1, "csv", ""};
    if (points == 1) short_spec.g_max = long_spec.g_max = 0.0;

    FigureSet out;
    out.short_range = run_sweep(short_spec);
    out.long_range = run_sweep(long_spec);

    const auto cols = detail::all_columns();
    const auto pick = [&](std::initializer_list<const char*> names) {
        std::vector<detail::Column> sel;
        for (const char* n : names)
            for (const auto& c : cols)
                if (c.name == n) sel.push_back(c);
        return sel;
    };
    const auto wall_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };
    const auto emit = [&](const std::string& name, const std::vector<SweepRow>& rows,
                          std::vector<detail::Column> sel, const std::string& spec_line) {
        const std::string path = (std::filesystem::path(dir) / name).string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot open " + path);
        detail::write_csv_stream(f, rows, sel, spec_line, wall_ms());
        out.files.push_back(path);
    };

    const std::string short_line = spec_summary(short_spec);
    emit("fig1a.csv", out.short_range, pick({"wc", "g", "chi"}), short_line);
    emit("fig1b.csv", out.short_range, pick({"wc", "g", "c3"}), short_line);
    emit("fig1c.csv", out.short_range,
         pick({"wc", "g", "e_exact", "e_transformed", "e_quadratic", "rel_err"}), short_line);
    emit("fig1d.csv", out.short_range, pick({"wc", "g", "fidelity"}), short_line);

    auto ent_cols = pick({"wc", "g", "ent_exact", "ent_transformed"});
    ent_cols.push_back({"ent_smallg_law", [wa](const SweepRow& r) {
                            return detail::fmt(small_g_entanglement_law(wa, r.wc, r.g));
                        }});
    const char* panel[3] = {"fig2a.csv", "fig2b.csv", "fig2c.csv"};
    for (int k = 0; k < 3; ++k) {
        std::vector<SweepRow> rows;
        for (const auto& r : out.long_range)
            if (r.wc == wcs[k]) rows.push_back(r);
        emit(panel[k], rows, ent_cols, spec_summary(long_spec) + " panel_wc=" + detail::fmt(wcs[k]));
    }
    emit("energy_combined.csv", out.short_range, cols, short_line);

    if (svg) {
        const auto by_wc = [&](const std::vector<SweepRow>& rows, auto getter) {
            std::vector<PlotSeries> series;
            for (double wc : wcs) {
                PlotSeries s{"wc=" + detail::fmt(wc), {}};
                for (const auto& r : rows)
                    if (r.wc == wc) s.points.emplace_back(r.g, getter(r));
                series.push_back(std::move(s));
            }
            return series;
        };
        const auto svg_path = [&](const char* name) {
            const std::string p = (std::filesystem::path(dir) / name).string();
            out.files.push_back(p);
            return p;
        };
        write_svg(svg_path("fig1a.svg"), "displacement parameter", "g", "chi",
                  by_wc(out.short_range, [](const SweepRow& r) { return r.chi; }));
        write_svg(svg_path("fig1b.svg"), "residual coupling", "g", "C3",
                  by_wc(out.short_range, [](const SweepRow& r) { return r.c3; }));
        {
            auto series = by_wc(out.short_range, [](const SweepRow& r) { return r.e_exact; });
            auto tr = by_wc(out.short_range, [](const SweepRow& r) { return r.e_transformed; });
            for (auto& s : tr) {
                s.name += " transformed";
                series.push_back(std::move(s));
            }
            write_svg(svg_path("fig1c.svg"), "ground energy", "g", "E", series);
        }
        write_svg(svg_path("fig1d.svg"), "ground-state fidelity", "g", "F",
                  by_wc(out.short_range, [](const SweepRow& r) { return r.fidelity; }));
        const char* panel_svg[3] = {"fig2a.svg", "fig2b.svg", "fig2c.svg"};
        for (int k = 0; k < 3; ++k) {
            std::vector<PlotSeries> series(3);
            series[0].name = "exact";
            series[1].name = "transformed";
            series[2].name = "small-g law";
            for (const auto& r : out.long_range)
                if (r.wc == wcs[k]) {
                    series[0].points.emplace_back(r.g, r.ent_exact);
                    series[1].points.emplace_back(r.g, r.ent_transformed);
                    series[2].points.emplace_back(r.g, small_g_entanglement_law(wa, r.wc, r.g));
                }
            write_svg(svg_path(panel_svg[k]), std::string("pairwise entanglement wc=") +
                      detail::fmt(wcs[k]), "g", "N", series);
        }
        write_svg(svg_path("energy_combined.svg"), "ground energy, all detunings", "g", "E",
                  [&] {
                      auto series =
                          by_wc(out.short_range, [](const SweepRow& r) { return r.e_exact; });
                      auto tr = by_wc(out.short_range,
                                      [](const SweepRow& r) { return r.e_transformed; });
                      for (auto& s : tr) {
                          s.name += " transformed";
                          series.push_back(std::move(s));
                      }
                      return series;
                  }());
    }

    out.wall_seconds = double(wall_ms()) / 1000.0;
    return out;
}

} // namespace rabi3
