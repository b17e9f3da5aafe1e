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

#ifndef HOLO_GEOMETRY_HPP
#define HOLO_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "holo/types.hpp"

namespace holo
{

// Element counts per row/column. Odd is the canonical (2M+1) layout; even places
// 2M elements at half-integer offsets (m + 1/2) * delta_t.
enum class Parity
{
    odd,
    even
};

/// Transmit panel in the z = 0 plane: columns k along x, rows m along y.
struct ArraySpec
{
    double delta_t = 0.0; // inter-element spacing [m]
    int m_half = 0;       // rows m = -M..M along y
    int k_half = 0;       // columns k = -K..K along x
    int t_pol = 3;        // dipoles per element, x,y,z order
    Parity parity = Parity::odd;

    std::size_t rows() const;
    std::size_t cols() const;
    std::size_t num_elements() const { return rows() * cols(); }

    // Signed index offset of row i in [0, rows()), in units of delta_t
    double row_offset(std::size_t i) const;
    double col_offset(std::size_t j) const;

    // Half-lengths of the aperture along x and y (K delta_t, M delta_t)
    double half_length_x() const;
    double half_length_y() const;

    void validate() const; // throws DomainError
};

enum class LineAxis
{
    x,
    y
};

/// One or more receive antennas, each with r_pol dipoles.
struct RxSpec
{
    std::vector<Vec3> positions;
    int r_pol = 3;
    double delta_r = 0.0; // spacing used when positions form a line

    std::size_t n_r() const { return positions.size(); }
    void validate() const;

    static RxSpec single(const Vec3& position, int r_pol);

    // n_r antennas centred on `center`, spacing delta_r, parallel to `axis`
    static RxSpec line(const Vec3& center, int n_r, double delta_r, int r_pol,
                       LineAxis axis = LineAxis::y);
};

struct PolarPlacement
{
    double distance = 0.0;  // D [m]
    double elevation = 0.0; // theta [rad], |theta| < pi/2
};

/// Vertex distances, edge view angles, tilt angles and sigma products of a
/// 2L_x x 2L_y panel seen from (x0, y0, z0).
///
/// Vertices are labelled by the signs of (x, y): d_pm is the vertex (+L_x, -L_y).
/// gamma_y_plus / gamma_y_minus are the angles subtended at the receiver by the
/// edges x = +L_x / x = -L_x; gamma_x_plus / gamma_x_minus by the edges y = +L_y /
/// y = -L_y. beta_x_plus is the angle between the panel plane and the triangle
/// spanned by the receiver and the edge x = +L_x, with
/// cos(beta_x_plus) = (L_x - x0) / sqrt((L_x - x0)^2 + z0^2).
struct UpaGeometry
{
    double l_x = 0.0, l_y = 0.0;
    double x0 = 0.0, y0 = 0.0, z0 = 0.0;

    double d_pp = 0.0, d_pm = 0.0, d_mp = 0.0, d_mm = 0.0;
    double gamma_x_plus = 0.0, gamma_x_minus = 0.0;
    double gamma_y_plus = 0.0, gamma_y_minus = 0.0;
    double beta_x_plus = 0.0, beta_x_minus = 0.0;
    double beta_y_plus = 0.0, beta_y_minus = 0.0;
    double sigma_pp = 0.0, sigma_pm = 0.0, sigma_mp = 0.0, sigma_mm = 0.0;

    // Perpendicular distances from the receiver to the lines containing each edge
    double h_x_plus = 0.0, h_x_minus = 0.0, h_y_plus = 0.0, h_y_minus = 0.0;

    double distance() const; // |rx|, distance to the panel centre
};

std::vector<Vec3> element_positions(const ArraySpec& spec);

Vec3 polar_to_cartesian(const PolarPlacement& p);

UpaGeometry upa_geometry(double l_x, double l_y, const Vec3& rx);

// Rayleigh spacing criterion for confronted ULAs: delta_t * delta_r = D lambda / M
double rayleigh_spacing_product(double d, double lambda, int m_streams);

} // namespace holo

#endif
