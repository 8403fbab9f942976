// Command-line front end: point solves, parameter sweeps, entanglement
// death scans, and figure-data regeneration.
//
// Exit codes: 0 success, 1 bad usage or invalid parameters, 2 a solver
// reported a failure (no root, no death, cutoff ceiling, ...).

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rabi3/rabi3.hpp"

namespace {

int parse_cutoff(const std::string& text) {
    if (text == "auto") return -1;
    try {
        size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw rabi3::InvalidParams("cutoff must be an integer or 'auto', got '" + text + "'");
    }
}

nlohmann::json row_json(const rabi3::SweepRow& r) {
    return {{"wc", r.wc},
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
            {"status", r.status}};
}

void print_point_text(double wa, const rabi3::SweepRow& r) {
    using rabi3::detail::fmt;
    std::cout << "wa=" << fmt(wa) << "\n"
              << "wc=" << fmt(r.wc) << "\n"
              << "g=" << fmt(r.g) << "\n"
              << "chi=" << fmt(r.chi) << "\n"
              << "c3=" << fmt(r.c3) << "\n"
              << "e_exact=" << fmt(r.e_exact) << "\n"
              << "e_transformed=" << fmt(r.e_transformed) << "\n"
              << "e_quadratic=" << fmt(r.e_quadratic) << "\n"
              << "rel_err=" << fmt(r.rel_err) << "\n"
              << "fidelity=" << fmt(r.fidelity) << "\n"
              << "ent_exact=" << fmt(r.ent_exact) << "\n"
              << "ent_transformed=" << fmt(r.ent_transformed) << "\n"
              << "cutoff_used=" << r.cutoff_used << "\n";
}

std::vector<rabi3::PlotSeries> energy_series(const std::vector<rabi3::SweepRow>& rows,
                                             const std::vector<double>& wcs) {
    std::vector<rabi3::PlotSeries> series;
    for (double wc : wcs) {
        rabi3::PlotSeries ex{"exact wc=" + rabi3::detail::fmt(wc), {}};
        rabi3::PlotSeries tr{"transformed wc=" + rabi3::detail::fmt(wc), {}};
        for (const auto& r : rows)
            if (r.wc == wc) {
                ex.points.emplace_back(r.g, r.e_exact);
                tr.points.emplace_back(r.g, r.e_transformed);
            }
        series.push_back(std::move(ex));
        series.push_back(std::move(tr));
    }
    return series;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground state of three qubits ultrastrongly coupled to an oscillator"};
    app.set_version_flag("--version", std::string("rabi3 ") + rabi3::version);
    app.set_config("--config", "", "read options from an INI file");
    app.require_subcommand(1);

    // point
    double p_wa = 1.0, p_wc = 1.0, p_g = 0.0;
    std::string p_cutoff = "auto", p_format = "text";
    auto* point = app.add_subcommand("point", "solve one parameter point");
    point->add_option("--wa", p_wa, "qubit splitting")->capture_default_str();
    point->add_option("--wc", p_wc, "oscillator frequency")->capture_default_str();
    point->add_option("--g", p_g, "coupling")->capture_default_str();
    point->add_option("--cutoff", p_cutoff, "Fock cutoff or 'auto'")->capture_default_str();
    point->add_option("--format", p_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // sweep
    rabi3::SweepSpec spec;
    spec.wc_list = {1.0};
    spec.g_max = 1.0;
    spec.g_steps = 101;
    std::string s_cutoff = "auto", s_svg;
    auto* sweep = app.add_subcommand("sweep", "sweep coupling for one or more detunings");
    sweep->add_option("--wa", spec.wa, "qubit splitting")->capture_default_str();
    sweep->add_option("--wc", spec.wc_list, "oscillator frequencies (repeatable)")
        ->capture_default_str();
    sweep->add_option("--g-min", spec.g_min, "lowest coupling")->capture_default_str();
    sweep->add_option("--g-max", spec.g_max, "highest coupling")->capture_default_str();
    sweep->add_option("--g-steps", spec.g_steps, "number of grid points")->capture_default_str();
    sweep->add_option("--cutoff", s_cutoff, "Fock cutoff or 'auto'")->capture_default_str();
    sweep->add_option("--format", spec.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_option("--out", spec.out_path, "output file (stdout when omitted)");
    sweep->add_option("--svg", s_svg, "also write an energy plot to this path");

    // death
    double d_wa = 1.0, d_wc = 1.0;
    std::string d_which = "exact", d_format = "text";
    auto* death = app.add_subcommand("death", "locate the entanglement death coupling");
    death->add_option("--wa", d_wa, "qubit splitting")->capture_default_str();
    death->add_option("--wc", d_wc, "oscillator frequency")->capture_default_str();
    death->add_option("--which", d_which, "exact or transformed")
        ->check(CLI::IsMember({"exact", "transformed"}))
        ->capture_default_str();
    death->add_option("--format", d_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // figures
    std::string f_dir = "figures";
    int f_points = 201;
    bool f_svg = false;
    auto* figures = app.add_subcommand("figures", "regenerate the figure data files");
    figures->add_option("--out-dir", f_dir, "output directory")->capture_default_str();
    figures->add_option("--points", f_points, "grid points per sweep")->capture_default_str();
    figures->add_flag("--svg", f_svg, "also write SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*point) {
            const int cutoff = parse_cutoff(p_cutoff);
            rabi3::ModelParams{p_wa, p_wc, p_g, cutoff == -1 ? 30 : cutoff}.validate();
            const rabi3::SweepRow row = rabi3::compute_row(p_wa, p_wc, p_g, cutoff);
            if (row.status != "ok") throw rabi3::Error("point solve failed: " + row.status);
            if (p_format == "json")
                std::cout << row_json(row).dump(2) << "\n";
            else
                print_point_text(p_wa, row);
        } else if (*sweep) {
            spec.cutoff = parse_cutoff(s_cutoff);
            const auto t0 = std::chrono::steady_clock::now();
            const auto rows = rabi3::run_sweep(spec);
            if (spec.out_path.empty()) {
                const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
                if (spec.format == "csv") {
                    rabi3::detail::write_csv_stream(std::cout, rows, rabi3::detail::all_columns(),
                                                    rabi3::spec_summary(spec), wall);
                } else {
                    nlohmann::json j;
                    j["meta"] = {{"tool", "rabi3"},
                                 {"version", rabi3::version},
                                 {"spec", rabi3::spec_summary(spec)},
                                 {"generated", rabi3::detail::timestamp_utc()},
                                 {"walltime_ms", wall}};
                    j["rows"] = nlohmann::json::array();
                    for (const auto& r : rows) j["rows"].push_back(row_json(r));
                    std::cout << j.dump(2) << "\n";
                }
            } else {
                std::cout << "wrote " << spec.out_path << " (" << rows.size() << " rows)\n";
            }
            if (!s_svg.empty()) {
                rabi3::write_svg(s_svg, "ground energy", "g", "E",
                                 energy_series(rows, spec.wc_list));
                std::cout << "wrote " << s_svg << "\n";
            }
        } else if (*death) {
            const double gd = rabi3::find_entanglement_death(d_wa, d_wc, d_which);
            if (d_format == "json")
                std::cout << nlohmann::json{{"wa", d_wa},
                                            {"wc", d_wc},
                                            {"which", d_which},
                                            {"g_death", gd}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << "g_death=" << rabi3::detail::fmt(gd) << "\n";
        } else if (*figures) {
            const rabi3::FigureSet figs = rabi3::write_figures(f_dir, f_svg, f_points);
            for (const auto& f : figs.files) std::cout << f << "\n";
            std::cout << "done in " << rabi3::detail::fmt(figs.wall_seconds) << " s\n";
        }
    } catch (const rabi3::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const rabi3::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
