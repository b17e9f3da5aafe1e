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


#include "holo/geometry.hpp"

#include <cmath>
#include <string>

namespace holo
{

namespace
{

void check_pol(int pol, const char* what)
{
    if (pol < 1 || pol > 3)
        throw DomainError(std::string(what) + " must be 1, 2 or 3, got " + std::to_string(pol));
}

} // namespace

std::size_t ArraySpec::rows() const
{
    return parity == Parity::odd ? static_cast<std::size_t>(2 * m_half + 1)
                                 : static_cast<std::size_t>(2 * m_half);
}

std::size_t ArraySpec::cols() const
{
    return parity == Parity::odd ? static_cast<std::size_t>(2 * k_half + 1)
                                 : static_cast<std::size_t>(2 * k_half);
}

double ArraySpec::row_offset(std::size_t i) const
{
    const double m = static_cast<double>(i) - static_cast<double>(m_half);
    return parity == Parity::odd ? m : m + 0.5;
}

double ArraySpec::col_offset(std::size_t j) const
{
    const double k = static_cast<double>(j) - static_cast<double>(k_half);
    return parity == Parity::odd ? k : k + 0.5;
}

double ArraySpec::half_length_x() const
{
    return parity == Parity::odd ? k_half * delta_t : (k_half - 0.5) * delta_t;
}

double ArraySpec::half_length_y() const
{
    return parity == Parity::odd ? m_half * delta_t : (m_half - 0.5) * delta_t;
}

void ArraySpec::validate() const
{
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
        throw DomainError("array: delta_t must be positive");
    if (m_half < 0 || k_half < 0)
        throw DomainError("array: m_half and k_half must be non-negative");
    if (parity == Parity::even && (m_half < 1 || k_half < 1))
        throw DomainError("array: even parity needs m_half >= 1 and k_half >= 1");
    check_pol(t_pol, "array: t_pol");
}

void RxSpec::validate() const
{
    if (positions.empty())
        throw DomainError("rx: at least one receive antenna is required");
    for (const auto& p : positions)
        if (!(p.z() > 0.0) || !p.allFinite())
            throw DomainError("rx: every receive position needs z > 0");
    check_pol(r_pol, "rx: r_pol");
    if (positions.size() > 1 && !(delta_r > 0.0))
        throw DomainError("rx: delta_r must be positive when n_r > 1");
}

RxSpec RxSpec::single(const Vec3& position, int r_pol)
{
    RxSpec rx;
    rx.positions = {position};
    rx.r_pol = r_pol;
    return rx;
}

RxSpec RxSpec::line(const Vec3& center, int n_r, double delta_r, int r_pol, LineAxis axis)
{
    if (n_r < 1)
        throw DomainError("rx: n_r must be at least 1");
    RxSpec rx;
    rx.r_pol = r_pol;
    rx.delta_r = delta_r;
    const Vec3 dir = axis == LineAxis::y ? Vec3(0.0, 1.0, 0.0) : Vec3(1.0, 0.0, 0.0);
    for (int i = 0; i < n_r; ++i)
    {
        const double offset = (i - 0.5 * (n_r - 1)) * delta_r;
        rx.positions.push_back(center + offset * dir);
    }
    return rx;
}

double UpaGeometry::distance() const
{
    return std::sqrt(x0 * x0 + y0 * y0 + z0 * z0);
}

std::vector<Vec3> element_positions(const ArraySpec& spec)
{
    spec.validate();
    std::vector<Vec3> out;
    out.reserve(spec.num_elements());
    for (std::size_t j = 0; j < spec.cols(); ++j)
        for (std::size_t i = 0; i < spec.rows(); ++i)
            out.emplace_back(spec.col_offset(j) * spec.delta_t, spec.row_offset(i) * spec.delta_t, 0.0);
    return out;
}

Vec3 polar_to_cartesian(const PolarPlacement& p)
{
    if (!(p.distance > 0.0))
        throw DomainError("polar placement: distance must be positive");
    if (!(std::abs(p.elevation) < kPi / 2))
        throw DomainError("polar placement: |elevation| must be below pi/2");
    return {0.0, p.distance * std::sin(p.elevation), p.distance * std::cos(p.elevation)};
}

UpaGeometry upa_geometry(double l_x, double l_y, const Vec3& rx)
{
    if (!(l_x > 0.0) || !(l_y > 0.0))
        throw DomainError("upa geometry: half-lengths must be positive");
    if (!(rx.z() > 0.0))
        throw DomainError("upa geometry: receiver needs z0 > 0");

    UpaGeometry g;
    g.l_x = l_x;
    g.l_y = l_y;
    g.x0 = rx.x();
    g.y0 = rx.y();
    g.z0 = rx.z();

    const double ax_p = l_x - g.x0, ax_m = l_x + g.x0;
    const double ay_p = l_y - g.y0, ay_m = l_y + g.y0;
    const double z0 = g.z0;

    auto dist = [z0](double a, double b) { return std::sqrt(a * a + b * b + z0 * z0); };
    g.d_pp = dist(ax_p, ay_p);
    g.d_pm = dist(ax_p, ay_m);
    g.d_mp = dist(ax_m, ay_p);
    g.d_mm = dist(ax_m, ay_m);

    g.h_x_plus = std::hypot(ax_p, z0);
    g.h_x_minus = std::hypot(ax_m, z0);
    g.h_y_plus = std::hypot(ay_p, z0);
    g.h_y_minus = std::hypot(ay_m, z0);

    // angle subtended by a segment whose end points lie at signed distances a, b
    // from the foot of the perpendicular of length h
    auto view = [](double a, double b, double h) { return std::atan2(a, h) + std::atan2(b, h); };
    g.gamma_y_plus = view(ay_p, ay_m, g.h_x_plus);
    g.gamma_y_minus = view(ay_p, ay_m, g.h_x_minus);
    g.gamma_x_plus = view(ax_p, ax_m, g.h_y_plus);
    g.gamma_x_minus = view(ax_p, ax_m, g.h_y_minus);

    g.beta_x_plus = std::atan2(z0, ax_p);
    g.beta_x_minus = std::atan2(z0, ax_m);
    g.beta_y_plus = std::atan2(z0, ay_p);
    g.beta_y_minus = std::atan2(z0, ay_m);

    g.sigma_pp = ax_p * ay_p / (g.d_pp * g.d_pp);
    g.sigma_pm = ax_p * ay_m / (g.d_pm * g.d_pm);
    g.sigma_mp = ax_m * ay_p / (g.d_mp * g.d_mp);
    g.sigma_mm = ax_m * ay_m / (g.d_mm * g.d_mm);
    return g;
}

double rayleigh_spacing_product(double d, double lambda, int m_streams)
{
    if (!(d > 0.0) || !(lambda > 0.0) || m_streams < 1)
        throw DomainError("rayleigh spacing: inputs must be positive");
    return d * lambda / m_streams;
}

} // namespace holo
