// SPDX-License-Identifier: Apache-2.0
//
// holo: near-field polarized XL-MIMO channel and capacity toolkit
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


#include "holo/commands.hpp"

#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "holo/report.hpp"
#include "holo/validation.hpp"

namespace holo
{

using nlohmann::json;

namespace
{

struct CommonOptions
{
    std::string config;
    std::vector<std::string> sets;
    std::string out_dir;
};

void add_common(CLI::App* sub, CommonOptions& o, bool config_required)
{
    auto* c = sub->add_option("config", o.config, "Scenario file (JSON)");
    if (config_required)
        c->required();
    sub->add_option("--set", o.sets, "Override a config value, e.g. --set snr.value_db=40")->take_all();
    sub->add_option("--out", o.out_dir, "Directory for results.csv and summary.json");
}

void print_matrix(std::ostream& os, const std::string& title, const CMat& w)
{
    const bool real = w.imag().cwiseAbs().maxCoeff() == 0.0;
    os << title << " (" << w.rows() << "x" << w.cols() << (real ? ", real" : ", complex") << ")\n";
    for (Eigen::Index i = 0; i < w.rows(); ++i)
    {
        os << "  ";
        for (Eigen::Index j = 0; j < w.cols(); ++j)
        {
            os << (j ? "  " : "") << format_number(w(i, j).real());
            if (!real)
                os << (w(i, j).imag() < 0 ? "-" : "+") << format_number(std::abs(w(i, j).imag())) << "j";
        }
        os << '\n';
    }
}

void print_eigs(std::ostream& os, const std::vector<double>& e)
{
    os << "  eigenvalues:";
    for (double v : e)
        os << ' ' << format_number(v);
    os << '\n';
}

json matrix_json(const CMat& w)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < w.rows(); ++i)
    {
        json r = json::array(), c = json::array();
        for (Eigen::Index j = 0; j < w.cols(); ++j)
        {
            r.push_back(w(i, j).real());
            c.push_back(w(i, j).imag());
        }
        re.push_back(r);
        im.push_back(c);
    }
    return {{"re", re}, {"im", im}};
}

CMat finite_w(const ScenarioConfig& cfg)
{
    return finite_gramian(cfg.array(), cfg.rx(), cfg.reference_distance(), cfg.lambda_m).w;
}

int cmd_gramian(const CommonOptions& o, const std::string& mode, std::ostream& out)
{
    const ScenarioConfig cfg = load_config(o.config, o.sets);
    const std::string hash = scenario_hash(cfg);

    json summary;
    summary["scenario_hash"] = hash;
    summary["mode"] = mode;
    std::ostringstream csv;
    csv << "scenario_hash,mode,kind,i,j,re,im\n";

    auto emit = [&](const std::string& name, const CMat& w) {
        const auto eigs = eig_sorted(w);
        print_matrix(out, name + " Gramian", w);
        print_eigs(out, eigs);
        summary[name] = {{"matrix", matrix_json(w)}, {"eigenvalues", eigs}};
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j)
                csv << hash << ',' << name << ",entry," << i << ',' << j << ',' << format_number(w(i, j).real())
                    << ',' << format_number(w(i, j).imag()) << '\n';
        for (std::size_t k = 0; k < eigs.size(); ++k)
            csv << hash << ',' << name << ",eig," << k << ",," << format_number(eigs[k]) << ",0\n";
        return eigs;
    };

    CMat wf, wa;
    std::vector<double> ef, ea;
    if (mode == "finite" || mode == "both")
    {
        wf = finite_w(cfg);
        ef = emit("finite", wf);
    }
    if (mode == "asymptotic" || mode == "both")
    {
        wa = asymptotic_from_config(cfg).w_bar.cast<cplx>();
        ea = emit("asymptotic", wa);
    }
    if (mode == "both")
    {
        const double scale = wa.cwiseAbs().maxCoeff();
        const Mat gap = (wf - wa).cwiseAbs() / scale;
        out << "relative gap |finite - asymptotic| / max|asymptotic|\n";
        print_matrix(out, "gap", gap.cast<cplx>());
        std::vector<double> eg(ea.size());
        for (std::size_t k = 0; k < ea.size(); ++k)
            eg[k] = ea[k] > 0.0 ? std::abs(ef[k] - ea[k]) / ea[k] : std::abs(ef[k] - ea[k]);
        out << "  eigenvalue gap:";
        for (double v : eg)
            out << ' ' << format_number(v);
        out << '\n';
        summary["gap"] = {{"matrix_max", gap.maxCoeff()}, {"eigenvalues", eg}};
    }

    if (!o.out_dir.empty())
    {
        write_file(o.out_dir, "results.csv", csv.str());
        write_file(o.out_dir, "summary.json", summary.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_capacity(const CommonOptions& o, const std::string& mode, std::ostream& out)
{
    const ScenarioConfig cfg = load_config(o.config, o.sets);
    if (cfg.xi_abs == 0.0)
        throw DomainError("no usable channel: constants.xi_abs is zero");
    const std::string hash = scenario_hash(cfg);
    const SnrConfig snr = cfg.snr();

    const RateReport rep = mode == "asymptotic" ? spectral_efficiency(asymptotic_from_config(cfg).w_bar, snr)
                                                : spectral_efficiency(finite_w(cfg), snr);

    out << "snr0 " << format_number(snr.snr0) << " (" << to_string(snr.convention) << ")\n";
    out << "se_bits_per_hz " << format_number(rep.se) << '\n';
    out << "dof_effective " << format_number(rep.effective_dof) << '\n';
    out << "n_active " << rep.allocation.active_count << '\n';
    print_eigs(out, rep.eigenvalues);
    out << "  powers:";
    for (double p : rep.allocation.powers)
        out << ' ' << format_number(p);
    out << '\n';
    if (rep.snr_th1)
        out << "snr_th1 " << format_number(*rep.snr_th1) << '\n';
    if (rep.snr_th2)
        out << "snr_th2 " << format_number(*rep.snr_th2) << '\n';

    if (!o.out_dir.empty())
    {
        SweepResult single;
        single.pol = {cfg.t_pol, cfg.r_pol};
        single.convention = snr.convention;
        SweepRow row;
        row.x = 2.0 * cfg.m_half * cfg.delta_t_m;
        row.se = rep.se;
        row.dof = rep.effective_dof;
        row.n_active = rep.allocation.active_count;
        row.eigenvalues = rep.eigenvalues;
        single.rows.push_back(row);
        single.x_star = row.x;
        single.se_star = rep.se;
        std::ostringstream csv;
        write_results_csv(csv, hash, {single});

        json summary;
        summary["scenario_hash"] = hash;
        summary["mode"] = mode;
        summary["snr_convention"] = to_string(snr.convention);
        summary["snr0"] = snr.snr0;
        summary["report"] = rate_report_json(rep);
        write_file(o.out_dir, "results.csv", csv.str());
        write_file(o.out_dir, "summary.json", summary.dump(2) + "\n");
    }
    return kExitOk;
}

// theta and D of a receiver in the y-z plane, as the ULA closed forms expect
std::pair<double, double> polar_of(const Vec3& c)
{
    if (c.x() != 0.0)
        throw DomainError("this sweep places the receiver in the y-z plane; set x0_m = 0");
    return {std::atan2(c.y(), c.z()), c.norm()};
}

int cmd_sweep(const CommonOptions& o, std::ostream& out)
{
    const ScenarioConfig cfg = load_config(o.config, o.sets);
    if (!cfg.sweep)
        throw ConfigError("config: the sweep command needs a 'sweep' section");
    const SweepConfig& sw = *cfg.sweep;
    const std::string hash = scenario_hash(cfg);
    const SnrConfig snr = cfg.snr();
    const Vec3 centre = cfg.rx_center();
    const auto [theta, d] = polar_of(centre);

    std::vector<PolPair> pairs = sw.pol_pairs;
    if (pairs.empty())
        pairs.push_back({cfg.t_pol, cfg.r_pol});

    const auto grid = linspace(sw.start, sw.stop, static_cast<std::size_t>(sw.points));
    const auto normalized = linspace(sw.aperture_over_d_start, sw.aperture_over_d_stop,
                                     static_cast<std::size_t>(sw.aperture_over_d_points));
    std::vector<double> finite_fractions = sw.fractions;
    if (finite_fractions.empty())
        finite_fractions = {1.0, 0.99, 0.95};

    std::vector<SweepResult> results;
    for (const PolPair& p : pairs)
    {
        switch (sw.variable)
        {
        case SweepVariable::aperture:
            if (cfg.n_r > 1)
                results.push_back(rx_separation_sweep(p.t_pol, p.r_pol, cfg.n_r, {cfg.delta_r_in_lambda}, grid, d,
                                                      snr, cfg.m_half, cfg.lambda_m, theta, finite_fractions));
            else if (sw.array == ArrayKind::ula)
                results.push_back(optimal_aperture_ula(p.t_pol, p.r_pol, theta, d, snr, grid, sw.fractions));
            else
                results.push_back(
                    upa_aperture_sweep(p.t_pol, p.r_pol, theta, d, snr, sw.aspect_lx_over_ly, grid, sw.fractions));
            break;
        case SweepVariable::elevation: {
            std::vector<double> rad(grid);
            for (double& v : rad)
                v *= kPi / 180.0;
            SweepResult r = optimal_aperture_curve(SweepVariable::elevation, p.t_pol, p.r_pol, theta, d, rad, snr,
                                                   normalized, sw.array, sw.aspect_lx_over_ly);
            for (std::size_t i = 0; i < r.rows.size(); ++i)
                r.rows[i].x = grid[i];
            r.x_star *= 180.0 / kPi;
            results.push_back(std::move(r));
            break;
        }
        case SweepVariable::distance:
            results.push_back(optimal_aperture_curve(SweepVariable::distance, p.t_pol, p.r_pol, theta, d, grid, snr,
                                                     normalized, sw.array, sw.aspect_lx_over_ly));
            break;
        case SweepVariable::rx_separation:
            results.push_back(rx_separation_sweep(p.t_pol, p.r_pol, cfg.n_r, grid,
                                                  {2.0 * cfg.m_half * cfg.delta_t_m}, d, snr, cfg.m_half,
                                                  cfg.lambda_m, theta, finite_fractions));
            break;
        case SweepVariable::joint_aperture_rx_sep:
            results.push_back(rx_separation_sweep(
                p.t_pol, p.r_pol, cfg.n_r,
                linspace(sw.rx_sep_start_lambda, sw.rx_sep_stop_lambda, static_cast<std::size_t>(sw.rx_sep_points)),
                grid, d, snr, cfg.m_half, cfg.lambda_m, theta, finite_fractions));
            break;
        }
    }

    out << "sweep " << to_string(sw.variable) << ", snr0 " << format_number(snr.snr0) << " ("
        << to_string(snr.convention) << "), D " << format_number(d) << " m\n";
    for (const auto& r : results)
    {
        out << "  (" << r.pol.t_pol << "x" << r.pol.r_pol << ") se* " << format_number(r.se_star) << " at x* "
            << format_number(r.x_star);
        if (r.y_star)
            out << ", y* " << format_number(*r.y_star);
        if (r.variable == SweepVariable::aperture || r.variable == SweepVariable::joint_aperture_rx_sep)
            out << ", lambda*/D " << format_number(r.x_star / d);
        out << '\n';
        for (const auto& f : r.fractions)
        {
            out << "    " << format_number(100.0 * f.fraction) << "% at x " << format_number(f.x);
            if (f.y)
                out << ", y " << format_number(*f.y);
            out << '\n';
        }
    }

    if (!o.out_dir.empty())
    {
        std::ostringstream csv;
        write_results_csv(csv, hash, results);
        json summary = sweep_summary_json(hash, results, d);
        summary["snr0"] = snr.snr0;
        summary["snr_convention"] = to_string(snr.convention);
        write_file(o.out_dir, "results.csv", csv.str());
        write_file(o.out_dir, "summary.json", summary.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_validate(const CommonOptions& o, const std::string& suite, std::size_t seeds, std::ostream& out)
{
    std::string hash;
    if (!o.config.empty())
        hash = scenario_hash(load_config(o.config, o.sets));

    SuiteReport rep;
    if (suite == "quadrature")
        rep = run_quadrature_suite(seeds);
    else if (suite == "lemma1")
        rep = run_lemma1_suite(seeds);
    else
        rep = run_riemann_suite();

    // one line per label: worst case against its tolerance
    std::vector<std::string> labels;
    for (const auto& c : rep.cases)
        if (std::find(labels.begin(), labels.end(), c.label) == labels.end())
            labels.push_back(c.label);
    out << "suite " << rep.suite << ": " << rep.cases.size() << " cases, " << rep.failures() << " failed\n";
    for (const auto& l : labels)
    {
        double tol = 0.0;
        std::size_t fails = 0;
        for (const auto& c : rep.cases)
            if (c.label == l)
            {
                tol = c.tolerance;
                fails += c.pass() ? 0 : 1;
            }
        out << "  " << l << ": max " << format_number(rep.max_error(l)) << " tol " << format_number(tol)
            << (fails ? " FAIL" : " ok") << '\n';
    }
    for (const auto& c : rep.cases)
        if (!c.pass())
            out << "  failed: seed " << c.seed << ' ' << c.label << ' ' << format_number(c.error) << '\n';

    if (!o.out_dir.empty())
    {
        std::ostringstream csv;
        csv << "suite,seed,label,error,tolerance,pass\n";
        for (const auto& c : rep.cases)
            csv << rep.suite << ',' << c.seed << ',' << c.label << ',' << format_number(c.error) << ','
                << format_number(c.tolerance) << ',' << (c.pass() ? 1 : 0) << '\n';
        json summary = {{"suite", rep.suite}, {"cases", rep.cases.size()}, {"failures", rep.failures()},
                        {"pass", rep.pass()}};
        if (!hash.empty())
            summary["scenario_hash"] = hash;
        write_file(o.out_dir, "results.csv", csv.str());
        write_file(o.out_dir, "summary.json", summary.dump(2) + "\n");
    }
    return rep.pass() ? kExitOk : kExitValidationFailure;
}

} // namespace

AsymptoticGramian asymptotic_from_config(const ScenarioConfig& cfg)
{
    if (cfg.n_r != 1)
        throw DomainError("asymptotic Gramian: closed forms exist only for n_r = 1");
    const Vec3 rx = cfg.rx_center();
    const double d = rx.norm();
    const ArraySpec a = cfg.array();

    if (cfg.k_half == 0)
    {
        const double l = a.half_length_y();
        if (rx.x() == 0.0)
            return ula_gramian(cfg.t_pol, cfg.r_pol, l / d, std::atan2(rx.y(), rx.z()), d);
        return ula_gramian_offset(cfg.t_pol, cfg.r_pol, l, rx, d);
    }
    if (cfg.m_half == 0)
        throw DomainError("asymptotic Gramian: a UPA needs m_half > 0 (use k_half = 0 for a ULA)");
    return upa_gramian(cfg.t_pol, cfg.r_pol, upa_geometry(a.half_length_x(), a.half_length_y(), rx), d);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Near-field polarized XL-MIMO channel, Gramian and capacity toolkit", "holo"};
    app.require_subcommand(1);

    CommonOptions g_opt, c_opt, s_opt, v_opt;
    std::string g_mode = "finite", c_mode = "finite", suite = "quadrature";
    std::size_t seeds = 100;

    auto* g = app.add_subcommand("gramian", "Print the normalized Gramian and its eigenvalues");
    add_common(g, g_opt, true);
    g->add_option("--mode", g_mode, "finite | asymptotic | both")
        ->check(CLI::IsMember({"finite", "asymptotic", "both"}));

    auto* c = app.add_subcommand("capacity", "Waterfilling rate, effective DoF and stream thresholds");
    add_common(c, c_opt, true);
    c->add_option("--mode", c_mode, "finite | asymptotic")->check(CLI::IsMember({"finite", "asymptotic"}));

    auto* s = app.add_subcommand("sweep", "Parameter sweep described by the config's sweep section");
    add_common(s, s_opt, true);

    auto* v = app.add_subcommand("validate", "Run an oracle suite and report the worst errors");
    add_common(v, v_opt, false);
    v->add_option("--suite", suite, "lemma1 | quadrature | riemann")
        ->check(CLI::IsMember({"lemma1", "quadrature", "riemann"}));
    v->add_option("--seeds", seeds, "Number of seeded geometries")->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDomainError;
    }

    try
    {
        if (*g)
            return cmd_gramian(g_opt, g_mode, out);
        if (*c)
            return cmd_capacity(c_opt, c_mode, out);
        if (*s)
            return cmd_sweep(s_opt, out);
        return cmd_validate(v_opt, suite, seeds, out);
    }
    catch (const ConfigError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    catch (const DomainError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    catch (const NumericError& e)
    {
        err << "numeric error: " << e.what() << '\n';
        return kExitDomainError;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("holo");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace holo
