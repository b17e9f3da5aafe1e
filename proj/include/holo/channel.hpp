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


#ifndef HOLO_CHANNEL_HPP
#define HOLO_CHANNEL_HPP

#include <optional>

#include "holo/geometry.hpp"
#include "holo/types.hpp"

namespace holo
{

struct PhysicalConstants
{
    double lambda = 0.01;  // wavelength [m]
    cplx xi{1.0, 0.0};     // coupling constant, permittivity absorbed
    void validate() const; // throws DomainError
};

enum class ChannelModel
{
    exact,
    radiative
};

struct ChannelMatrix
{
    CMat entries; // (n_r * r_pol) x (n_elements * t_pol)
    ChannelModel model = ChannelModel::radiative;
};

struct FiniteGramian
{
    CMat w; // (n_r * r_pol) square, normalised so that |xi/lambda|^2 never enters
};

struct Lemma1Report
{
    double d_inf = 0.0;
    double bound_general = 0.0;
    std::optional<double> bound_tpol3;
    double measured_sup_norm = 0.0;

    // Closed-form norm of the single-element error at d_inf for t_pol = 3
    std::optional<double> exact_tpol3_norm;

    bool within_general() const { return measured_sup_norm <= bound_general; }
    bool within_tpol3() const { return !bound_tpol3 || measured_sup_norm <= *bound_tpol3; }
};

// I - r r^T / |r|^2 for a non-zero r
Mat3 projector(const Vec3& r);

CMat3 exact_block(const Vec3& tx, const Vec3& rx, const PhysicalConstants& c);
CMat3 radiative_block(const Vec3& tx, const Vec3& rx, const PhysicalConstants& c);

ChannelMatrix stack_channel(const ArraySpec& a, const RxSpec& rx, const PhysicalConstants& c,
                            ChannelModel model);

// Normalised Gramian D^2 / (N |xi/lambda|^2) * H H^H of the radiative channel.
// lambda only matters for n_r > 1, where it sets the phase between receive antennas.
FiniteGramian finite_gramian(const ArraySpec& a, const RxSpec& rx, double d_ref, double lambda = 0.01);

double lemma1_bound_general(double d, const PhysicalConstants& c);
double lemma1_bound_tpol3(double d, const PhysicalConstants& c);
double lemma1_exact_tpol3(double r, const PhysicalConstants& c);

// Supremum over the transmit elements of the spectral norm of H H^H - H_rad H_rad^H,
// both restricted to the first r_pol rows and t_pol columns of each block
Lemma1Report lemma1_verify(const ArraySpec& a, const Vec3& rx, const PhysicalConstants& c, int t_pol,
                           int r_pol);

namespace serial
{

// Plain nested loops, no OpenMP, no blocking. Reference for tests and benchmarks.
ChannelMatrix stack_channel(const ArraySpec& a, const RxSpec& rx, const PhysicalConstants& c,
                            ChannelModel model);
FiniteGramian finite_gramian(const ArraySpec& a, const RxSpec& rx, double d_ref, double lambda = 0.01);

} // namespace serial

} // namespace holo

#endif
