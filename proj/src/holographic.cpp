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


#include "holo/holographic.hpp"

#include <cmath>
#include <string>

#include "holo/parallel.hpp"

namespace holo
{

namespace
{

constexpr double kDegenerateRatio = 1e-6;

void check_ula_pols(int t_pol, int r_pol)
{
    if (t_pol != 2 && t_pol != 3)
        throw DomainError("asymptotic gramian: t_pol must be 2 or 3, got " + std::to_string(t_pol));
    if (r_pol < 1 || r_pol > 3)
        throw DomainError("asymptotic gramian: r_pol must be 1, 2 or 3, got " + std::to_string(r_pol));
}

void check_upa(const UpaGeometry& g, double d)
{
    if (!(d > 0.0))
        throw DomainError("upa gramian: reference distance must be positive");
    if (!(g.l_x > 0.0) || !(g.l_y > 0.0))
        throw DomainError("upa gramian: half-lengths must be positive");
    if (!(g.z0 > kDegenerateRatio * g.distance()))
        throw DomainError("upa gramian: receiver is (nearly) in the panel plane, z0/D < 1e-6");
}

AsymptoticGramian make(const Mat3& full, ArrayKind kind, int t_pol, int r_pol)
{
    AsymptoticGramian out;
    out.w_bar = full.topLeftCorner(r_pol, r_pol);
    out.kind = kind;
    out.t_pol = t_pol;
    out.r_pol = r_pol;
    return out;
}

} // namespace

double PsiSet::operator[](int k) const
{
    switch (k)
    {
    case 2: return psi2;
    case 3: return psi3;
    case 4: return psi4;
    case 5: return psi5;
    case 6: return psi6;
    default: throw DomainError("psi index must lie in 2..6");
    }
}

PsiSet psi_set(double rho, double theta, double d)
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw DomainError("psi_set: rho must be non-negative");
    if (!(d > 0.0))
        throw DomainError("psi_set: D must be positive");
    if (!(std::abs(theta) < kPi / 2))
        throw DomainError("psi_set: |theta| must be below pi/2");

    const double s = std::sin(theta), c = std::cos(theta);
    if (!(c > kDegenerateRatio))
        throw DomainError("psi_set: cos(theta) below 1e-6, receiver nearly on the array axis");

    const double q = 1.0 + rho * rho;
    const double den = q * q - 4.0 * rho * rho * s * s;

    PsiSet p;
    p.rho = rho;
    p.theta = theta;
    p.d = d;

    // arctan((rho - s)/c) + arctan((rho + s)/c), folded into one atan2
    const double x = 2.0 * rho * c;
    const double view = rho == 0.0 ? 1.0 : std::atan2(x, 1.0 - rho * rho) / x;
    const double d2 = d * d;

    p.psi2 = view / d2;
    p.psi3 = -s / den / (d2 * d);
    const double bracket = (q - 2.0 * s * s) / den + view;
    p.psi4 = bracket / (2.0 * c * c * d2 * d2);
    p.psi5 = -q * s / (den * den) / (d2 * d2 * d);
    p.psi6 = ((q * q - 4.0 * s * s) / (den * den) / (4.0 * c * c) + 3.0 * bracket / (8.0 * c * c * c * c)) /
             (d2 * d2 * d2);
    return p;
}

AsymptoticGramian ula_gramian(int t_pol, int r_pol, double rho, double theta, double d)
{
    check_ula_pols(t_pol, r_pol);
    const PsiSet p = psi_set(rho, theta, d);
    const double dc = d * std::cos(theta);
    const double dc2 = dc * dc;

    Mat3 w = Mat3::Zero();
    w(0, 0) = p.psi2;
    if (t_pol == 3)
    {
        w(1, 1) = p.psi4 * dc2;
        w(1, 2) = w(2, 1) = p.psi3 * dc;
        w(2, 2) = p.psi2 - p.psi4 * dc2;
    }
    else
    {
        w(1, 1) = dc2 * dc2 * p.psi6;
        w(1, 2) = w(2, 1) = dc2 * dc * p.psi5;
        w(2, 2) = dc2 * p.psi4 - dc2 * dc2 * p.psi6;
    }
    return make(d * d * w, ArrayKind::ula, t_pol, r_pol);
}

double partial_sum_sk(int k, long long big_m, double delta_t, double d, double theta)
{
    if (k < 2 || k > 6)
        throw DomainError("partial_sum_sk: k must lie in 2..6");
    if (big_m < 0)
        throw DomainError("partial_sum_sk: M must be non-negative");
    if (!(delta_t > 0.0) || !(d > 0.0))
        throw DomainError("partial_sum_sk: delta_t and D must be positive");

    const double ds = d * std::sin(theta), dc = d * std::cos(theta);
    const auto n = static_cast<std::size_t>(2 * big_m + 1);
    const bool odd = (k % 2) == 1;

    const double sum = par::blocked_sum<double>(n, 0.0, [&](std::size_t i) {
        const double y = (static_cast<double>(i) - static_cast<double>(big_m)) * delta_t - ds;
        const double r2 = y * y + dc * dc;
        return odd ? y / std::pow(r2, (k + 1) / 2) : 1.0 / std::pow(r2, k / 2);
    });
    return sum / static_cast<double>(n);
}

Phi2Value phi2(double l_x, double l_y, double x0, double y0, double z0, Phi2Method method)
{
    if (!(l_x > 0.0) || !(l_y > 0.0))
        throw DomainError("phi2: half-lengths must be positive");
    if (!(z0 > 0.0))
        throw DomainError("phi2: z0 must be positive");

    Phi2Value out;
    out.method = method;

    if (method == Phi2Method::single_integral)
    {
        UpaGeometry g;
        g.l_x = l_x;
        g.l_y = l_y;
        g.x0 = x0;
        g.y0 = y0;
        g.z0 = z0;
        const auto r = integrate([&](double x) { return psi_column(x, g).psi2; }, -l_x, l_x);
        out.value = r.value / (2.0 * l_x);
        return out;
    }

    QuadratureOptions inner;
    inner.rel_tol = 1e-13;
    inner.abs_tol = 1e-15;
    QuadratureOptions outer;
    outer.abs_tol = 1e-12;
    const auto r = integrate(
        [&](double x) {
            const double hx2 = (x - x0) * (x - x0) + z0 * z0;
            return integrate([&](double y) { return 1.0 / (hx2 + (y - y0) * (y - y0)); }, -l_y, l_y, inner).value;
        },
        -l_x, l_x, outer);
    out.value = r.value / (4.0 * l_x * l_y);
    return out;
}

AsymptoticGramian upa_gramian_3x3(const UpaGeometry& g, double d)
{
    check_upa(g, d);
    const double p2 = phi2(g.l_x, g.l_y, g.x0, g.y0, g.z0).value;

    const double cxp = (g.l_x - g.x0) / g.h_x_plus, sxp = g.z0 / g.h_x_plus;
    const double cxm = (g.l_x + g.x0) / g.h_x_minus, sxm = g.z0 / g.h_x_minus;
    const double cyp = (g.l_y - g.y0) / g.h_y_plus, syp = g.z0 / g.h_y_plus;
    const double cym = (g.l_y + g.y0) / g.h_y_minus, sym = g.z0 / g.h_y_minus;

    const double lg = std::log(g.d_mm * g.d_pp / (g.d_pm * g.d_mp));
    const double a11 = cxp * g.gamma_y_plus + cxm * g.gamma_y_minus;
    const double a22 = cyp * g.gamma_x_plus + cym * g.gamma_x_minus;
    const double a13 = -(sxp * g.gamma_y_plus - sxm * g.gamma_y_minus);
    const double a23 = -(syp * g.gamma_x_plus - sym * g.gamma_x_minus);

    Mat3 a;
    a << a11, lg, a13, lg, a22, a23, a13, a23, -(a11 + a22);

    const double d2 = d * d;
    const Mat3 w = p2 * d2 * Eigen::Vector3d(0.5, 0.5, 1.0).asDiagonal().toDenseMatrix() +
                   d2 / (8.0 * g.l_x * g.l_y) * a;
    return make(w, ArrayKind::upa, 3, 3);
}

AsymptoticGramian upa_gramian_2x3(const UpaGeometry& g, double d)
{
    check_upa(g, d);
    const double p2 = phi2(g.l_x, g.l_y, g.x0, g.y0, g.z0).value;

    const double ax_p = g.l_x - g.x0, ax_m = g.l_x + g.x0;
    const double ay_p = g.l_y - g.y0, ay_m = g.l_y + g.y0;

    const double cxp = ax_p / g.h_x_plus, sxp = g.z0 / g.h_x_plus;
    const double cxm = ax_m / g.h_x_minus, sxm = g.z0 / g.h_x_minus;
    const double cyp = ay_p / g.h_y_plus, syp = g.z0 / g.h_y_plus;
    const double cym = ay_m / g.h_y_minus, sym = g.z0 / g.h_y_minus;

    const double gxp = g.gamma_x_plus, gxm = g.gamma_x_minus;
    const double gyp = g.gamma_y_plus, gym = g.gamma_y_minus;
    const double spp = g.sigma_pp, spm = g.sigma_pm, smp = g.sigma_mp, smm = g.sigma_mm;

    const double dpp2 = g.d_pp * g.d_pp, dpm2 = g.d_pm * g.d_pm;
    const double dmp2 = g.d_mp * g.d_mp, dmm2 = g.d_mm * g.d_mm;
    const double lg = std::log(g.d_mm * g.d_pp / (g.d_pm * g.d_mp));

    auto cube = [](double v) { return v * v * v; };

    // s^3 / c * sigma with the cosine cancelled against the matching factor of sigma
    const double bx_m = cube(sxm) * g.h_x_minus * (ay_p / dmp2 + ay_m / dmm2);
    const double bx_p = cube(sxp) * g.h_x_plus * (ay_p / dpp2 + ay_m / dpm2);
    const double by_m = cube(sym) * g.h_y_minus * (ax_p / dpm2 + ax_m / dmm2);
    const double by_p = cube(syp) * g.h_y_plus * (ax_p / dpp2 + ax_m / dmp2);

    const double star = -cyp * gxp + (4.0 - cxp * cxp) * cxp * gyp + (4.0 - cxm * cxm) * cxm * gym - cym * gxm +
                        sxp * sxp * (spp + spm) + sxm * sxm * (smp + smm);
    const double bullet = 4.0 * lg - g.z0 * g.z0 * (1.0 / dpp2 + 1.0 / dmm2 - 1.0 / dpm2 - 1.0 / dmp2);
    const double bb = bx_m - bx_p + cube(sxm) * gym - cube(sxp) * gyp;
    const double ss = -cxp * gyp + (4.0 - cyp * cyp) * cyp * gxp + (4.0 - cym * cym) * cym * gxm - cxm * gym +
                      syp * syp * (spp + smp) + sym * sym * (spm + smm);
    const double bs = by_m - by_p + cube(sym) * gxm - cube(syp) * gxp;
    const double box = (1.0 + cyp * cyp) * cyp * gxp + (1.0 + cym * cym) * cym * gxm +
                       (1.0 + cxp * cxp) * cxp * gyp + (1.0 + cxm * cxm) * cxm * gym -
                       sxp * sxp * (spp + spm) - sxm * sxm * (smp + smm) - syp * syp * (spp + smp) -
                       sym * sym * (spm + smm);

    Mat3 a;
    a << star, bullet, bb, bullet, ss, bs, bb, bs, box;

    const double d2 = d * d;
    Mat3 w = d2 / (32.0 * g.l_x * g.l_y) * a;
    w(0, 0) += 0.5 * p2 * d2;
    w(1, 1) += 0.5 * p2 * d2;
    return make(w, ArrayKind::upa, 2, 3);
}

AsymptoticGramian upa_gramian(int t_pol, int r_pol, const UpaGeometry& g, double d)
{
    check_ula_pols(t_pol, r_pol);
    AsymptoticGramian full = t_pol == 3 ? upa_gramian_3x3(g, d) : upa_gramian_2x3(g, d);
    return make(full.w_bar, ArrayKind::upa, t_pol, r_pol);
}

AsymptoticGramian ula_gramian_offset(int t_pol, int r_pol, double l, const Vec3& rx, double d, double eps)
{
    check_ula_pols(t_pol, r_pol);
    if (!(l > 0.0))
        throw DomainError("ula_gramian_offset: half-length must be positive");
    if (!(eps > 0.0) || !(eps < 0.1))
        throw DomainError("ula_gramian_offset: eps must lie in (0, 0.1)");

    const Mat w1 = upa_gramian(t_pol, 3, upa_geometry(eps * l, l, rx), d).w_bar;
    const Mat w2 = upa_gramian(t_pol, 3, upa_geometry(2.0 * eps * l, l, rx), d).w_bar;
    const Mat3 w = (4.0 * w1 - w2) / 3.0;
    return make(w, ArrayKind::ula, t_pol, r_pol);
}

} // namespace holo
