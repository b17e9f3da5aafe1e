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


#include "holo/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "holo/parallel.hpp"

namespace holo
{

namespace
{

double uniform(std::mt19937_64& g, double lo, double hi)
{
    return lo + (hi - lo) * std::generate_canonical<double, 53>(g);
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

} // namespace

bool SuiteReport::pass() const
{
    return failures() == 0;
}

std::size_t SuiteReport::failures() const
{
    std::size_t n = 0;
    for (const auto& c : cases)
        n += c.pass() ? 0 : 1;
    return n;
}

double SuiteReport::max_error(const std::string& label) const
{
    double m = 0.0;
    for (const auto& c : cases)
        if (c.label == label)
            m = std::max(m, c.error);
    return m;
}

double max_rel_error(const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("max_rel_error: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

UpaGeometry seeded_upa_geometry(std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    const double l_x = uniform(g, 0.1, 4.0);
    const double l_y = uniform(g, 0.1, 4.0);
    const double x0 = uniform(g, -4.0, 4.0);
    const double y0 = uniform(g, -4.0, 4.0);
    const double z0 = uniform(g, 0.5, 10.0);
    return upa_geometry(l_x, l_y, Vec3(x0, y0, z0));
}

Lemma1Case seeded_lemma1_case(std::uint64_t seed)
{
    std::mt19937_64 g(seed ^ 0x9e3779b97f4a7c15ULL);
    static const double lambdas[3] = {0.005, 0.01, 0.1};

    Lemma1Case c;
    c.constants.lambda = lambdas[seed % 3];
    c.constants.xi = std::polar(uniform(g, 0.5, 2.0), uniform(g, -kPi, kPi));

    const double d = std::exp(uniform(g, std::log(0.2), std::log(19.0)));
    c.array.m_half = static_cast<int>(g() % 4);
    c.array.k_half = static_cast<int>(g() % 4);
    c.array.delta_t = d * uniform(g, 0.05, 0.3);
    c.array.t_pol = 1 + static_cast<int>(seed % 3);

    const double hx = c.array.half_length_x(), hy = c.array.half_length_y();
    c.rx = Vec3(uniform(g, -hx, hx), uniform(g, -hy, hy), d);
    return c;
}

SuiteReport run_quadrature_suite(std::size_t seeds)
{
    SuiteReport rep;
    rep.suite = "quadrature";
    std::vector<std::array<SuiteCase, 4>> per(seeds);

    par::for_each_index(seeds, [&](std::size_t s) {
        const UpaGeometry geo = seeded_upa_geometry(s);
        const double d = geo.distance();

        const Mat w33 = upa_gramian_3x3(geo, d).w_bar;
        const Mat w23 = upa_gramian_2x3(geo, d).w_bar;
        const Mat q33 = quadrature_oracle(geo, d, 3, 3).w_bar;
        const Mat q23 = quadrature_oracle(geo, d, 2, 3).w_bar;
        const Mat s23 = single_integral_oracle(geo, d, 2, 3).w_bar;
        const double p2 = phi2(geo.l_x, geo.l_y, geo.x0, geo.y0, geo.z0).value;

        per[s][0] = {s, "upa_3x3_vs_2d", max_rel_error(w33, q33), 1e-8};
        per[s][1] = {s, "upa_2x3_vs_2d", max_rel_error(w23, q23), 1e-8};
        per[s][2] = {s, "upa_2x3_vs_1d", max_rel_error(w23, s23), 1e-9};
        per[s][3] = {s, "trace_identity", std::abs(w33.trace() - 2.0 * d * d * p2) / (2.0 * d * d * p2), 1e-12};
    });

    for (const auto& a : per)
        rep.cases.insert(rep.cases.end(), a.begin(), a.end());
    return rep;
}

SuiteReport run_lemma1_suite(std::size_t seeds)
{
    SuiteReport rep;
    rep.suite = "lemma1";
    for (std::size_t s = 0; s < seeds; ++s)
    {
        const Lemma1Case c = seeded_lemma1_case(s);
        for (int r_pol = 1; r_pol <= 3; ++r_pol)
        {
            const Lemma1Report r = lemma1_verify(c.array, c.rx, c.constants, c.array.t_pol, r_pol);
            const std::string tag = "t" + std::to_string(c.array.t_pol) + "r" + std::to_string(r_pol);
            rep.cases.push_back({s, "general_" + tag, r.measured_sup_norm / r.bound_general, 1.0});
            if (r.bound_tpol3)
                rep.cases.push_back({s, "tpol3_" + tag, r.measured_sup_norm / *r.bound_tpol3, 1.0});
        }
    }
    return rep;
}

SuiteReport run_riemann_suite()
{
    SuiteReport rep;
    rep.suite = "riemann";
    struct Point
    {
        double rho, theta;
    };
    const Point points[] = {{1.0, kPi / 6}, {0.25, 40.0 * kPi / 180}, {2.5, 20.0 * kPi / 180}};
    const double d = 4.0;
    std::uint64_t id = 0;

    for (const auto& p : points)
    {
        const PsiSet psi = psi_set(p.rho, p.theta, d);
        for (int k = 2; k <= 6; ++k)
        {
            double prev = -1.0, worst_ratio = 0.0;
            for (long long m = 100; m <= 1000000; m *= 10)
            {
                const double l = p.rho * d;
                const double err = std::abs(partial_sum_sk(k, m, l / static_cast<double>(m), d, p.theta) - psi[k]) /
                                   std::abs(psi[k]);
                if (prev > 0.0)
                    worst_ratio = std::max(worst_ratio, err / prev);
                prev = err;
            }
            rep.cases.push_back({id++, "k" + std::to_string(k) + "_rho" + fmt(p.rho) + "_theta" + fmt(p.theta),
                                 worst_ratio, 1.0});
        }
    }
    return rep;
}

} // namespace holo
