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


#include <cmath>

#include "holo/holographic.hpp"

namespace holo
{

namespace
{

void check_oracle_args(const UpaGeometry& g, double d, int t_pol, int r_pol)
{
    if (t_pol < 1 || t_pol > 3 || r_pol < 1 || r_pol > 3)
        throw DomainError("oracle: polarisation counts must lie in 1..3");
    if (!(g.l_x > 0.0) || !(g.l_y > 0.0) || !(g.z0 > 0.0) || !(d > 0.0))
        throw DomainError("oracle: needs positive half-lengths, z0 and D");
}

AsymptoticGramian wrap(const Mat3& w, int t_pol, int r_pol)
{
    AsymptoticGramian out;
    out.w_bar = w.topLeftCorner(r_pol, r_pol);
    out.kind = ArrayKind::upa;
    out.t_pol = t_pol;
    out.r_pol = r_pol;
    return out;
}

} // namespace

PsiColumn psi_column(double x, const UpaGeometry& g)
{
    const double dx = x - g.x0;
    const double h2 = dx * dx + g.z0 * g.z0; // R^2 - y0^2
    const double h = std::sqrt(h2);
    const double ly = g.l_y, y0 = g.y0;
    const double r2 = h2 + y0 * y0;

    const double den = (ly * ly + r2) * (ly * ly + r2) - 4.0 * ly * ly * y0 * y0;
    const double bracket_core = (ly * ly + r2 - 2.0 * y0 * y0) / den;

    PsiColumn p{};
    p.psi2 = std::atan2(2.0 * ly * h, h2 - (ly * ly - y0 * y0)) / (2.0 * ly * h);
    p.psi3 = -y0 / den;
    p.psi4 = 0.5 / h2 * (bracket_core + p.psi2);
    p.psi5 = -y0 * (r2 + ly * ly) / (den * den);
    p.psi6 = 0.25 / h2 * ((r2 + ly * ly) * (r2 + ly * ly) - 4.0 * y0 * y0 * r2) / (den * den) +
             0.375 / (h2 * h2) * (bracket_core + p.psi2);
    return p;
}

AsymptoticGramian quadrature_oracle(const UpaGeometry& g, double d, int t_pol, int r_pol, GkOrder order)
{
    check_oracle_args(g, d, t_pol, r_pol);

    QuadratureOptions inner;
    inner.order = order;
    inner.rel_tol = 1e-13;
    inner.abs_tol = 1e-14;
    QuadratureOptions outer;
    outer.order = order;
    outer.rel_tol = 1e-12;
    outer.abs_tol = 1e-11;

    const double d2 = d * d;
    Mat3 w = Mat3::Zero();
    for (int i = 0; i < r_pol; ++i)
        for (int j = i; j < r_pol; ++j)
        {
            auto entry = [&](double x, double y) {
                const double v[3] = {x - g.x0, y - g.y0, -g.z0};
                const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
                double acc = 0.0;
                for (int p = 0; p < t_pol; ++p)
                {
                    const double pi = (i == p ? 1.0 : 0.0) - v[i] * v[p] / r2;
                    const double pj = (j == p ? 1.0 : 0.0) - v[j] * v[p] / r2;
                    acc += pi * pj;
                }
                return acc / r2;
            };
            const auto res = integrate(
                [&](double x) {
                    const auto col = integrate([&](double y) { return entry(x, y); }, -g.l_y, g.l_y, inner);
                    return d2 * col.value / (2.0 * g.l_y);
                },
                -g.l_x, g.l_x, outer);
            w(i, j) = w(j, i) = res.value / (2.0 * g.l_x);
        }
    return wrap(w, t_pol, r_pol);
}

AsymptoticGramian single_integral_oracle(const UpaGeometry& g, double d, int t_pol, int r_pol)
{
    check_oracle_args(g, d, t_pol, r_pol);
    if (t_pol == 1)
        throw DomainError("single_integral_oracle: t_pol must be 2 or 3");

    const double z0 = g.z0;
    auto integrand = [&](double x) -> Mat3 {
        const PsiColumn p = psi_column(x, g);
        const double dx = x - g.x0;
        Mat3 m;
        if (t_pol == 3)
        {
            m << p.psi2 - dx * dx * p.psi4, -dx * p.psi3, z0 * dx * p.psi4,
                 -dx * p.psi3, (dx * dx + z0 * z0) * p.psi4, z0 * p.psi3,
                 z0 * dx * p.psi4, z0 * p.psi3, p.psi2 - z0 * z0 * p.psi4;
        }
        else
        {
            const double z2 = z0 * z0, z3 = z2 * z0;
            const double a = p.psi4 + z2 * p.psi6;
            m << p.psi2 - dx * dx * a, -dx * (p.psi3 + z2 * p.psi5), dx * z3 * p.psi6,
                 -dx * (p.psi3 + z2 * p.psi5), dx * dx * a + z2 * z2 * p.psi6, z3 * p.psi5,
                 dx * z3 * p.psi6, z3 * p.psi5, z2 * (p.psi4 - z2 * p.psi6);
        }
        return m;
    };

    QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    Mat3 w = Mat3::Zero();
    for (int i = 0; i < r_pol; ++i)
        for (int j = i; j < r_pol; ++j)
        {
            const auto res = integrate([&](double x) { return integrand(x)(i, j); }, -g.l_x, g.l_x, opt);
            w(i, j) = w(j, i) = d * d * res.value / (2.0 * g.l_x);
        }
    return wrap(w, t_pol, r_pol);
}

} // namespace holo
