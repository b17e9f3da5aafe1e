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


#ifndef HOLO_HOLOGRAPHIC_HPP
#define HOLO_HOLOGRAPHIC_HPP

#include "holo/geometry.hpp"
#include "holo/quadrature.hpp"
#include "holo/types.hpp"

namespace holo
{

struct PsiSet
{
    double psi2 = 0.0, psi3 = 0.0, psi4 = 0.0, psi5 = 0.0, psi6 = 0.0;
    double rho = 0.0, theta = 0.0, d = 0.0;

    double operator[](int k) const; // psi_k for k in 2..6
};

enum class ArrayKind
{
    ula,
    upa
};

struct AsymptoticGramian
{
    Mat w_bar; // r_pol x r_pol, real symmetric
    ArrayKind kind = ArrayKind::ula;
    int t_pol = 3;
    int r_pol = 3;
};

enum class Phi2Method
{
    single_integral,
    double_quadrature
};

struct Phi2Value
{
    double value = 0.0; // [1/m^2]
    Phi2Method method = Phi2Method::single_integral;
};

// psi_2 .. psi_6 of a ULA of half-length L = rho * D seen from (0, D sin(theta), D cos(theta))
PsiSet psi_set(double rho, double theta, double d);

AsymptoticGramian ula_gramian(int t_pol, int r_pol, double rho, double theta, double d);

// Riemann sum s_M^(k) that converges to psi_k when M delta_t -> L
double partial_sum_sk(int k, long long big_m, double delta_t, double d, double theta);

Phi2Value phi2(double l_x, double l_y, double x0, double y0, double z0,
               Phi2Method method = Phi2Method::single_integral);

AsymptoticGramian upa_gramian_3x3(const UpaGeometry& g, double d);
AsymptoticGramian upa_gramian_2x3(const UpaGeometry& g, double d);
AsymptoticGramian upa_gramian(int t_pol, int r_pol, const UpaGeometry& g, double d);

// ULA of half-length l along y with the receiver off the array axis (x0 != 0). Evaluated as
// a UPA of half-width eps * l along x, Richardson-extrapolated to eps -> 0.
AsymptoticGramian ula_gramian_offset(int t_pol, int r_pol, double l, const Vec3& rx, double d,
                                     double eps = 1e-6);

// Entries of the asymptotic Gramian as nested 2-D quadrature of the projector product over
// the panel. Shares nothing with the closed forms and serves as their reference.
AsymptoticGramian quadrature_oracle(const UpaGeometry& g, double d, int t_pol, int r_pol,
                                    GkOrder order = GkOrder::gk15);

// Same Gramian as a 1-D integral over x of the ULA functions psi_k(x) of each column
AsymptoticGramian single_integral_oracle(const UpaGeometry& g, double d, int t_pol, int r_pol);

// psi_k(x) for the column of the panel at abscissa x, k in 2..6
struct PsiColumn
{
    double psi2, psi3, psi4, psi5, psi6;
};
PsiColumn psi_column(double x, const UpaGeometry& g);

} // namespace holo

#endif
