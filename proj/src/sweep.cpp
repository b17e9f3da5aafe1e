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


#include "holo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "holo/parallel.hpp"

namespace holo
{

namespace
{

using RateFn = std::function<RateReport(double)>;

SweepRow make_row(double x, const RateReport& r)
{
    SweepRow row;
    row.x = x;
    row.se = r.se;
    row.dof = r.effective_dof;
    row.n_active = r.allocation.active_count;
    row.eigenvalues = r.eigenvalues;
    return row;
}

void check_grid(const std::vector<double>& grid)
{
    if (grid.empty())
        throw DomainError("sweep: grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("sweep: grid values must be strictly increasing");
}

void check_fractions(const std::vector<double>& fractions)
{
    for (double f : fractions)
        if (!(f > 0.0) || f > 1.0)
            throw DomainError("sweep: fractions must lie in (0, 1]");
}

std::size_t argmax_row(const std::vector<SweepRow>& rows)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].se > rows[best].se)
            best = i;
    return best;
}

// Grid scan, then Brent (golden section with parabolic steps) on the bracket around the
// best grid point, then the smallest aperture reaching each requested fraction.
SweepResult sweep_1d(SweepVariable variable, PolPair pol, const SnrConfig& snr, const std::vector<double>& grid,
                     const std::vector<double>& fractions, const RateFn& rate)
{
    check_grid(grid);
    check_fractions(fractions);

    SweepResult out;
    out.variable = variable;
    out.pol = pol;
    out.convention = snr.convention;
    out.rows.resize(grid.size());
    par::for_each_index(grid.size(), [&](std::size_t i) { out.rows[i] = make_row(grid[i], rate(grid[i])); });

    const std::size_t best = argmax_row(out.rows);
    out.x_star = grid[best];
    out.se_star = out.rows[best].se;

    if (grid.size() > 1)
    {
        const double lo = grid[best == 0 ? 0 : best - 1];
        const double hi = grid[std::min(best + 1, grid.size() - 1)];
        const int bits = std::numeric_limits<double>::digits / 2;
        const auto res = boost::math::tools::brent_find_minima([&](double x) { return -rate(x).se; }, lo, hi, bits);
        if (-res.second > out.se_star)
        {
            out.x_star = res.first;
            out.se_star = -res.second;
        }
    }

    for (double f : fractions)
    {
        FractionTarget t;
        t.fraction = f;
        const double goal = f * out.se_star;
        if (f >= 1.0)
        {
            t.x = out.x_star;
        }
        else
        {
            std::size_t i = 0;
            while (i < out.rows.size() && out.rows[i].se < goal)
                ++i;
            if (i == out.rows.size())
                t.x = out.x_star;
            else if (i == 0)
                t.x = grid[0];
            else
            {
                auto gap = [&](double x) { return rate(x).se - goal; };
                std::uintmax_t iters = 200;
                const auto br = boost::math::tools::toms748_solve(gap, grid[i - 1], grid[i], out.rows[i - 1].se - goal,
                                                                  out.rows[i].se - goal,
                                                                  boost::math::tools::eps_tolerance<double>(40), iters);
                t.x = br.second;
            }
        }
        out.fractions.push_back(t);
    }
    return out;
}

std::pair<double, double> upa_half_lengths(double aperture, double aspect)
{
    const double l_y = aperture / (2.0 * std::sqrt(1.0 + aspect * aspect));
    return {aspect * l_y, l_y};
}

} // namespace

std::string to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::aperture: return "aperture";
    case SweepVariable::elevation: return "elevation";
    case SweepVariable::distance: return "distance";
    case SweepVariable::rx_separation: return "rx_separation";
    case SweepVariable::joint_aperture_rx_sep: return "joint_aperture_rx_sep";
    }
    return "aperture";
}

SweepVariable sweep_variable_from_string(const std::string& s)
{
    for (auto v : {SweepVariable::aperture, SweepVariable::elevation, SweepVariable::distance,
                   SweepVariable::rx_separation, SweepVariable::joint_aperture_rx_sep})
        if (to_string(v) == s)
            return v;
    throw ConfigError("unknown sweep variable '" + s + "'");
}

std::vector<double> linspace(double start, double stop, std::size_t points)
{
    if (points == 0)
        return {};
    if (points == 1)
        return {start};
    std::vector<double> v(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        v[i] = start + step * static_cast<double>(i);
    v.back() = stop;
    return v;
}

SweepResult optimal_aperture_ula(int t_pol, int r_pol, double theta, double d, const SnrConfig& snr,
                                 const std::vector<double>& grid, const std::vector<double>& fractions)
{
    snr.validate();
    if (!grid.empty() && grid.front() < 0.0)
        throw DomainError("optimal_aperture_ula: apertures must be non-negative");
    auto rate = [&](double aperture) {
        return spectral_efficiency(ula_gramian(t_pol, r_pol, aperture / (2.0 * d), theta, d).w_bar, snr);
    };
    return sweep_1d(SweepVariable::aperture, {t_pol, r_pol}, snr, grid, fractions, rate);
}

double aperture_for_fraction(double fraction, int t_pol, int r_pol, double theta, double d, const SnrConfig& snr,
                             const std::vector<double>& grid)
{
    const SweepResult r = optimal_aperture_ula(t_pol, r_pol, theta, d, snr, grid, {fraction});
    return r.fractions.front().x;
}

SweepResult upa_aperture_sweep(int t_pol, int r_pol, double theta, double d, const SnrConfig& snr, double aspect,
                               const std::vector<double>& grid, const std::vector<double>& fractions)
{
    snr.validate();
    if (!(aspect > 0.0))
        throw DomainError("upa_aperture_sweep: aspect ratio must be positive");
    if (!grid.empty() && !(grid.front() > 0.0))
        throw DomainError("upa_aperture_sweep: apertures must be positive");
    const Vec3 rx = polar_to_cartesian({d, theta});
    auto rate = [&](double aperture) {
        const auto [l_x, l_y] = upa_half_lengths(aperture, aspect);
        return spectral_efficiency(upa_gramian(t_pol, r_pol, upa_geometry(l_x, l_y, rx), d).w_bar, snr);
    };
    return sweep_1d(SweepVariable::aperture, {t_pol, r_pol}, snr, grid, fractions, rate);
}

SweepResult optimal_aperture_curve(SweepVariable variable, int t_pol, int r_pol, double theta, double d,
                                   const std::vector<double>& values, const SnrConfig& snr,
                                   const std::vector<double>& normalized_grid, ArrayKind kind, double aspect)
{
    if (variable != SweepVariable::elevation && variable != SweepVariable::distance)
        throw DomainError("optimal_aperture_curve: variable must be elevation or distance");
    check_grid(values);

    SweepResult out;
    out.variable = variable;
    out.pol = {t_pol, r_pol};
    out.convention = snr.convention;
    out.rows.resize(values.size());

    par::for_each_index(values.size(), [&](std::size_t i) {
        const double th = variable == SweepVariable::elevation ? values[i] : theta;
        const double dd = variable == SweepVariable::distance ? values[i] : d;
        std::vector<double> grid(normalized_grid);
        for (double& g : grid)
            g *= dd;
        const SweepResult inner = kind == ArrayKind::ula
                                      ? optimal_aperture_ula(t_pol, r_pol, th, dd, snr, grid)
                                      : upa_aperture_sweep(t_pol, r_pol, th, dd, snr, aspect, grid);
        RateReport at_star;
        if (kind == ArrayKind::ula)
            at_star = spectral_efficiency(ula_gramian(t_pol, r_pol, inner.x_star / (2.0 * dd), th, dd).w_bar, snr);
        else
        {
            const auto [l_x, l_y] = upa_half_lengths(inner.x_star, aspect);
            at_star = spectral_efficiency(
                upa_gramian(t_pol, r_pol, upa_geometry(l_x, l_y, polar_to_cartesian({dd, th})), dd).w_bar, snr);
        }
        out.rows[i] = make_row(values[i], at_star);
        out.rows[i].lambda_star = inner.x_star;
    });

    const std::size_t best = argmax_row(out.rows);
    out.x_star = out.rows[best].x;
    out.se_star = out.rows[best].se;
    return out;
}

SweepResult rx_separation_sweep(int t_pol, int r_pol, int n_r, const std::vector<double>& delta_r_grid_lambda,
                                const std::vector<double>& aperture_grid, double d, const SnrConfig& snr, int m,
                                double lambda, double theta, const std::vector<double>& fractions)
{
    snr.validate();
    check_grid(delta_r_grid_lambda);
    check_grid(aperture_grid);
    check_fractions(fractions);
    if (m < 1)
        throw DomainError("rx_separation_sweep: M must be at least 1");
    if (n_r < 1)
        throw DomainError("rx_separation_sweep: n_r must be at least 1");
    if (!(aperture_grid.front() > 0.0) || !(delta_r_grid_lambda.front() > 0.0))
        throw DomainError("rx_separation_sweep: apertures and spacings must be positive");
    if (!(lambda > 0.0))
        throw DomainError("rx_separation_sweep: lambda must be positive");

    const Vec3 centre = polar_to_cartesian({d, theta});
    const std::size_t ny = delta_r_grid_lambda.size();
    const std::size_t n = aperture_grid.size() * ny;

    SweepResult out;
    out.variable = ny > 1 && aperture_grid.size() > 1 ? SweepVariable::joint_aperture_rx_sep
                                                       : (ny > 1 ? SweepVariable::rx_separation
                                                                 : SweepVariable::aperture);
    out.pol = {t_pol, r_pol};
    out.convention = snr.convention;
    out.rows.resize(n);

    par::for_each_index(n, [&](std::size_t idx) {
        const double aperture = aperture_grid[idx / ny];
        const double sep = delta_r_grid_lambda[idx % ny];
        ArraySpec a;
        a.delta_t = aperture / (2.0 * m);
        a.m_half = m;
        a.k_half = 0;
        a.t_pol = t_pol;
        const RxSpec rx = RxSpec::line(centre, n_r, sep * lambda, r_pol, LineAxis::y);
        const FiniteGramian w = finite_gramian(a, rx, d, lambda);
        out.rows[idx] = make_row(aperture, spectral_efficiency(w.w, snr));
        out.rows[idx].y = sep;
    });

    const std::size_t best = argmax_row(out.rows);
    out.x_star = out.rows[best].x;
    out.y_star = out.rows[best].y;
    out.se_star = out.rows[best].se;

    for (double f : fractions)
    {
        FractionTarget t;
        t.fraction = f;
        bool found = false;
        for (const auto& row : out.rows)
        {
            if (row.se < f * out.se_star)
                continue;
            if (!found || row.x < t.x || (row.x == t.x && *row.y < *t.y))
            {
                t.x = row.x;
                t.y = row.y;
                found = true;
            }
        }
        out.fractions.push_back(t);
    }
    return out;
}

std::vector<EigenStudyRow> eigenvalue_size_study(double l_x, const std::vector<double>& l_y_grid, double d,
                                                 double theta, double delta_t, double lambda)
{
    check_grid(l_y_grid);
    if (!(l_x > 0.0) || !(delta_t > 0.0) || !(d > 0.0))
        throw DomainError("eigenvalue_size_study: l_x, delta_t and D must be positive");

    const Vec3 rx = polar_to_cartesian({d, theta});
    std::vector<EigenStudyRow> rows(l_y_grid.size());
    const auto k_half = static_cast<int>(std::lround(l_x / delta_t));

    for (std::size_t i = 0; i < l_y_grid.size(); ++i)
    {
        ArraySpec a;
        a.delta_t = delta_t;
        a.k_half = k_half;
        a.m_half = static_cast<int>(std::lround(l_y_grid[i] / delta_t));
        a.t_pol = 3;
        if (a.m_half < 1 || a.k_half < 1)
            throw DomainError("eigenvalue_size_study: panel must be at least one spacing wide in x and y");

        const auto fin = eig_sorted(finite_gramian(a, RxSpec::single(rx, 3), d, lambda).w);
        const auto asym =
            eig_sorted(upa_gramian_3x3(upa_geometry(a.half_length_x(), a.half_length_y(), rx), d).w_bar);

        EigenStudyRow& row = rows[i];
        row.l_y = l_y_grid[i];
        for (int k = 0; k < 3; ++k)
        {
            row.finite[k] = fin[k];
            row.asymptotic[k] = asym[k];
            row.rel_gap[k] = std::abs(fin[k] - asym[k]) / asym[k];
        }
    }
    return rows;
}

SnrCalibration calibrate_snr_convention(double snr_db, double target)
{
    const std::vector<double> grid = linspace(1e-3, 8.0, 4000);
    SnrConfig direct = SnrConfig::from_db(snr_db);
    SnrConfig eq6 = direct;
    eq6.snr0 = direct.snr0 / 3.0;
    eq6.convention = SnrConvention::per_eq6;

    SnrCalibration c;
    c.target = target;
    c.normalized_direct = optimal_aperture_ula(3, 3, 0.0, 1.0, direct, grid).x_star;
    c.normalized_per_eq6 = optimal_aperture_ula(3, 3, 0.0, 1.0, eq6, grid).x_star;
    c.chosen = std::abs(c.normalized_direct - target) <= std::abs(c.normalized_per_eq6 - target)
                   ? SnrConvention::direct
                   : SnrConvention::per_eq6;
    return c;
}

} // namespace holo
