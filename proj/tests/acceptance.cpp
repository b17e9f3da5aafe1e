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

// Acceptance run: one line per criterion, non-zero exit status if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holo/channel.hpp"
#include "holo/commands.hpp"
#include "holo/holographic.hpp"
#include "holo/sweep.hpp"
#include "holo/validation.hpp"

using namespace holo;
namespace fs = std::filesystem;

namespace
{

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail)
{
    std::printf("criterion %2d [%s] %s: %s\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double deg(double d)
{
    return d * kPi / 180.0;
}

// 1. one element straight below the receiver
void single_element_limit()
{
    const ArraySpec a{0.005, 0, 0, 3};
    const CMat w = finite_gramian(a, RxSpec::single({0.0, 0.0, 4.0}, 3), 4.0).w;
    CMat expect = CMat::Zero(3, 3);
    expect(0, 0) = expect(1, 1) = 1.0;
    const double err = (w - expect).cwiseAbs().maxCoeff();
    report(1, err <= 1e-14, "single-element limit", fmt("max|W - diag(1,1,0)| = %.3g (tol 1e-14)", err));
}

// 2. linear closed form against long finite arrays
void ula_convergence()
{
    const double d = 4.0;
    double worst_final = 0.0, worst_slope = 1e9, best_slope = 0.0;
    for (double rho : {0.25, 1.0, 2.5})
        for (double th : {0.0, 20.0, 40.0})
        {
            const Mat ref = ula_gramian(3, 3, rho, deg(th), d).w_bar;
            std::vector<double> errs;
            for (int m : {1000, 10000, 100000})
            {
                const ArraySpec a{rho * d / m, m, 0, 3};
                const Vec3 rx(0.0, d * std::sin(deg(th)), d * std::cos(deg(th)));
                const Mat w = finite_gramian(a, RxSpec::single(rx, 3), d).w.real();
                errs.push_back((w - ref).norm() / ref.norm());
            }
            worst_final = std::max(worst_final, errs.back());
            for (std::size_t i = 1; i < errs.size(); ++i)
            {
                const double slope = std::log10(errs[i - 1] / errs[i]);
                worst_slope = std::min(worst_slope, slope);
                best_slope = std::max(best_slope, slope);
            }
        }
    // first order: each decade in M buys one decade in error
    const bool pass = worst_final <= 1e-3 && worst_slope >= 0.8 && best_slope <= 1.2;
    std::ostringstream os;
    os << fmt("max rel. Frobenius error at M=1e5 = %.3g (tol 1e-3)", worst_final)
       << fmt(", error decades per decade of M in [%.3f", worst_slope) << fmt(", %.3f] (required [0.8, 1.2])", best_slope);
    report(2, pass, "linear closed form convergence", os.str());
}

// 3 and 4. planar closed forms against quadrature
void planar_closed_forms()
{
    const SuiteReport rep = run_quadrature_suite(100);
    const double e3 = rep.max_error("upa_3x3_vs_2d");
    const double e2 = rep.max_error("upa_2x3_vs_2d");
    const double e1 = rep.max_error("upa_2x3_vs_1d");
    const double et = rep.max_error("trace_identity");
    std::ostringstream os;
    os << "100 geometries, (3x3) vs 2-D " << fmt("%.3g", e3) << ", (2x3) vs 2-D " << fmt("%.3g", e2)
       << " (tol 1e-8), (2x3) vs 1-D " << fmt("%.3g", e1) << " (tol 1e-9)";
    report(3, e3 <= 1e-8 && e2 <= 1e-8 && e1 <= 1e-9, "planar closed forms vs quadrature", os.str());
    report(4, et <= 1e-12, "trace identity", fmt("max rel. error over 100 geometries = %.3g (tol 1e-12)", et));
}

// 5. reactive-term bound
void reactive_bound()
{
    const SuiteReport rep = run_lemma1_suite(100);
    double worst_general = 0.0, worst_tpol3 = 0.0;
    std::size_t fail_general = 0, fail_tpol3 = 0, n_tpol3 = 0;
    for (const auto& c : rep.cases)
    {
        if (c.label.rfind("general", 0) == 0)
        {
            worst_general = std::max(worst_general, c.error);
            fail_general += c.pass() ? 0 : 1;
        }
        else
        {
            ++n_tpol3;
            worst_tpol3 = std::max(worst_tpol3, c.error);
            fail_tpol3 += c.pass() ? 0 : 1;
        }
    }
    std::ostringstream os;
    os << "100 geometries, measured/bound: general max " << fmt("%.4g", worst_general) << " (" << fail_general
       << " violations), three-dipole form max " << fmt("%.4g", worst_tpol3) << " (" << fail_tpol3 << " of "
       << n_tpol3 << " violations); required <= 1 for both";
    report(5, fail_general == 0 && fail_tpol3 == 0, "reactive-term bound", os.str());
}

// 6. optimal normalized apertures at 50 dB
void optimal_aperture_table()
{
    const SnrCalibration cal = calibrate_snr_convention(50.0, 1.8120);
    SnrConfig snr = SnrConfig::from_db(50.0);
    if (cal.chosen == SnrConvention::per_eq6)
    {
        snr.snr0 /= 3.0;
        snr.convention = SnrConvention::per_eq6;
    }
    const auto grid = linspace(1e-3, 8.0, 4000);

    struct Row
    {
        double theta, p33, p32, p22;
    };
    const Row table[] = {{0, 1.8120, 1.4290, 0.0885},  {10, 1.8510, 1.4815, 0.0995}, {20, 1.9660, 1.6425, 0.1545},
                         {30, 2.1405, 1.8975, 1.1475}, {40, 2.3405, 2.1830, 1.7100}, {50, 2.5180, 2.4205, 2.0730},
                         {60, 2.6305, 2.5615, 2.2960}, {70, 2.6430, 2.5790, 2.3875}, {80, 2.5170, 2.4470, 2.3390}};

    double worst = 0.0, anchor33 = 0.0, anchor22 = 0.0;
    std::string worst_cell;
    int cells_off = 0;
    for (const Row& r : table)
    {
        const double got[3] = {optimal_aperture_ula(3, 3, deg(r.theta), 1.0, snr, grid).x_star,
                               optimal_aperture_ula(2, 3, deg(r.theta), 1.0, snr, grid).x_star,
                               optimal_aperture_ula(2, 2, deg(r.theta), 1.0, snr, grid).x_star};
        const double want[3] = {r.p33, r.p32, r.p22};
        const char* names[3] = {"3x3", "2x3", "2x2"};
        for (int k = 0; k < 3; ++k)
        {
            const double dev = std::abs(got[k] - want[k]);
            cells_off += dev > 0.03 ? 1 : 0;
            if (dev > worst)
            {
                worst = dev;
                worst_cell = std::string(names[k]) + " at " + fmt("%.0f deg", r.theta) + fmt(" (got %.4f", got[k]) +
                             fmt(", table %.4f)", want[k]);
            }
        }
        if (r.theta == 0)
            anchor33 = std::abs(got[0] - r.p33);
        if (r.theta == 40)
            anchor22 = std::abs(got[2] - r.p22);
    }
    const bool anchors = anchor33 <= 0.02 && anchor22 <= 0.02;
    std::ostringstream os;
    os << "convention " << (cal.chosen == SnrConvention::direct ? "direct" : "per_eq6") << fmt(", |dev| (3x3, 0 deg) = %.4f", anchor33)
       << fmt(", (2x2, 40 deg) = %.4f (tol 0.02)", anchor22) << fmt("; full table max |dev| = %.4f (tol 0.03), ", worst)
       << cells_off << " of 27 cells outside, worst " << worst_cell;
    report(6, anchors && worst <= 0.03, "optimal aperture table", os.str());
}

// 7. apertures reaching 90% of the optimum
void ninety_percent_apertures()
{
    const SnrConfig snr = SnrConfig::from_db(50.0);
    const auto unit = linspace(1e-3, 8.0, 4000);
    auto scaled = [&](double d) {
        std::vector<double> g(unit);
        for (double& v : g)
            v *= d;
        return g;
    };
    const auto r4 = optimal_aperture_ula(3, 3, 0.0, 4.0, snr, scaled(4.0), {0.9});
    const auto r8 = optimal_aperture_ula(3, 3, 0.0, 8.0, snr, scaled(8.0), {0.9});
    const double l4 = r4.fractions[0].x, l8 = r8.fractions[0].x;
    const double ratio = r4.x_star / l4;
    const bool pass = std::abs(l4 - 1.9400) <= 0.05 && std::abs(l8 - 4.3680) <= 0.05 && std::abs(ratio - 3.7) <= 0.3;

    // diagnostic only: 95% of the optimum with the SNR falling as 1/D^2 from 50 dB at D=4
    SnrConfig fixed_power = snr;
    fixed_power.snr0 = snr.snr0 * (4.0 / 8.0) * (4.0 / 8.0);
    const double d95_4 = optimal_aperture_ula(3, 3, 0.0, 4.0, snr, scaled(4.0), {0.95}).fractions[0].x;
    const double d95_8 = optimal_aperture_ula(3, 3, 0.0, 8.0, fixed_power, scaled(8.0), {0.95}).fractions[0].x;

    std::ostringstream os;
    os << fmt("Lambda90(D=4) = %.4f m (want 1.9400 +- 0.05)", l4) << fmt(", Lambda90(D=8) = %.4f m (want 4.3680 +- 0.05)", l8)
       << fmt(", Lambda*/Lambda90 at D=4 = %.3f (want 3.7 +- 0.3)", ratio)
       << fmt(" [not scored: 95%% of optimum with SNR ~ 1/D^2 gives %.4f m", d95_4) << fmt(" and %.4f m]", d95_8);
    report(7, pass, "90%-of-optimum apertures", os.str());
}

// 8. finite panel eigenvalues against the planar closed form
void panel_eigenvalues()
{
    double worst = 0.0;
    for (double theta : {0.0, kPi / 6})
    {
        const auto rows = eigenvalue_size_study(2.0, {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}, 4.0, theta, 0.005, 0.01);
        for (const auto& r : rows)
            for (double g : r.rel_gap)
                worst = std::max(worst, g);
    }
    report(8, worst <= 0.02, "finite panel eigenvalues",
           fmt("max rel. eigenvalue gap over L_y grid, theta in {0, pi/6} = %.4g (tol 0.02)", worst));
}

// 9. waterfilling optimality conditions
void waterfilling_properties()
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto log_snr = linspace(-3.0, 8.0, 23);
    std::size_t cases = 0, kkt_fail = 0, budget_fail = 0, class_fail = 0;
    double worst_budget = 0.0;
    for (int n = 0; n < 10000; ++n)
    {
        std::vector<double> rho = {u(gen), u(gen), u(gen)};
        for (double& r : rho)
            r = std::max(r, 1e-6);
        std::sort(rho.begin(), rho.end(), std::greater<>());
        const double th1 = 1.0 / rho[1] - 1.0 / rho[0];
        const double th2 = 2.0 / rho[2] - 1.0 / rho[0] - 1.0 / rho[1];
        for (double e : log_snr)
        {
            ++cases;
            const double s = std::pow(10.0, e);
            const auto a = waterfill(rho, s);
            const double level_inv = 1.0 / a.water_level;
            double total = 0.0;
            bool kkt = true;
            for (std::size_t i = 0; i < 3; ++i)
            {
                total += a.powers[i];
                if (static_cast<int>(i) < a.active_count)
                    kkt = kkt && a.powers[i] > 0.0 &&
                          std::abs(a.powers[i] + 1.0 / rho[i] - level_inv) <= 1e-10 * level_inv;
                else
                    kkt = kkt && a.powers[i] == 0.0 && rho[i] <= a.water_level;
            }
            const double budget_err = std::abs(total - s) / std::max(1.0, s);
            worst_budget = std::max(worst_budget, budget_err);
            kkt_fail += kkt ? 0 : 1;
            budget_fail += budget_err <= 1e-10 ? 0 : 1;
            const int expect = 1 + (s > th1 ? 1 : 0) + (s > th2 ? 1 : 0);
            class_fail += a.active_count == expect ? 0 : 1;
        }
    }
    std::ostringstream os;
    os << cases << " cases: KKT violations " << kkt_fail << ", budget mismatches " << budget_fail
       << fmt(" (max rel. %.2g, tol 1e-10)", worst_budget) << ", stream-count misclassifications " << class_fail;
    report(9, kkt_fail == 0 && budget_fail == 0 && class_fail == 0, "waterfilling properties", os.str());
}

// 10. three receive antennas, finite linear array
void multi_antenna_receiver()
{
    const SnrConfig snr = SnrConfig::from_db(40.0);
    const auto grid = linspace(0.25, 12.0, 48);
    const PolPair pairs[] = {{3, 3}, {2, 3}, {2, 2}};
    std::vector<SweepResult> res;
    for (const PolPair& p : pairs)
        res.push_back(rx_separation_sweep(p.t_pol, p.r_pol, 3, {0.5}, grid, 3.0, snr, 20, 0.01));

    auto streams_at_star = [](const SweepResult& r) {
        for (const auto& row : r.rows)
            if (row.x == r.x_star)
                return row.n_active;
        return 0;
    };
    const int n33 = streams_at_star(res[0]), n23 = streams_at_star(res[1]), n22 = streams_at_star(res[2]);
    const double deficit = (res[0].se_star - res[1].se_star) / res[0].se_star;
    std::size_t order_violations = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (res[0].rows[i].se < res[1].rows[i].se || res[1].rows[i].se < res[2].rows[i].se)
            ++order_violations;

    const bool pass = n33 == 9 && n23 == 9 && deficit < 0.05 && order_violations == 0;
    std::ostringstream os;
    os << "D=3 m, M=20, 40 dB, N_r=3, spacing lambda/2: active streams at optimum (3x3) " << n33
       << fmt(" at %.2f m", res[0].x_star) << ", (2x3) " << n23 << fmt(" at %.2f m", res[1].x_star) << ", (2x2) " << n22
       << " (want 9 for 3x3 and 2x3)" << fmt("; (2x3) deficit %.2f%% (tol 5%%)", 100.0 * deficit)
       << "; ordering violations " << order_violations << " of " << grid.size();
    report(10, pass, "multi-antenna receiver", os.str());
}

// 11. repeated sweep runs
void determinism()
{
    const fs::path dir = fs::temp_directory_path() / "holo_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "sweep.json";
    std::ofstream(cfg) << R"({
  "tx": {"m_half": 20},
  "rx": {"d_m": 3.0, "n_r": 3},
  "snr": {"value_db": 40.0},
  "sweep": {"variable": "joint_aperture_rx_sep", "start": 1.0, "stop": 8.0, "points": 8,
            "rx_sep_start_lambda": 0.5, "rx_sep_stop_lambda": 2.0, "rx_sep_points": 4,
            "pol_pairs": [[3, 3], [2, 3], [2, 2]]}
})";
    std::ofstream(dir / "ula.json") << R"({
  "rx": {"d_m": 4.0, "theta_deg": 30.0},
  "sweep": {"variable": "aperture", "start": 0.05, "stop": 32.0, "points": 400, "fractions": [1.0, 0.9],
            "pol_pairs": [[3, 3], [2, 3], [2, 2]]}
})";

    bool same = true;
    std::size_t bytes = 0;
    for (const char* name : {"sweep.json", "ula.json"})
    {
        std::ostringstream out, err;
        const std::string a = (dir / (std::string(name) + ".a")).string();
        const std::string b = (dir / (std::string(name) + ".b")).string();
        const int ca = run_cli({"sweep", (dir / name).string(), "--out", a}, out, err);
        const int cb = run_cli({"sweep", (dir / name).string(), "--out", b}, out, err);
        same = same && ca == 0 && cb == 0;
        for (const char* f : {"results.csv", "summary.json"})
        {
            std::ifstream fa(fs::path(a) / f, std::ios::binary), fb(fs::path(b) / f, std::ios::binary);
            std::ostringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            same = same && !sa.str().empty() && sa.str() == sb.str();
            bytes += sa.str().size();
        }
    }
    fs::remove_all(dir);
    report(11, same, "determinism",
           std::string("two runs of two sweep configs, ") + std::to_string(bytes) + " bytes compared, " +
               (same ? "identical" : "different"));
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    single_element_limit();
    ula_convergence();
    planar_closed_forms();
    reactive_bound();
    optimal_aperture_table();
    ninety_percent_apertures();
    panel_eigenvalues();
    waterfilling_properties();
    multi_antenna_receiver();
    determinism();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 11 criteria failed (%.1f s)\n", g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
