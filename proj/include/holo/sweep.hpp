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


#ifndef HOLO_SWEEP_HPP
#define HOLO_SWEEP_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "holo/capacity.hpp"
#include "holo/holographic.hpp"

namespace holo
{

enum class SweepVariable
{
    aperture,
    elevation,
    distance,
    rx_separation,
    joint_aperture_rx_sep
};

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s); // throws ConfigError

struct PolPair
{
    int t_pol = 3;
    int r_pol = 3;
};

struct SweepRow
{
    double x = 0.0;
    std::optional<double> y; // second grid coordinate of 2-D sweeps
    double se = 0.0;
    double dof = 0.0;
    int n_active = 0;
    std::vector<double> eigenvalues;
    std::optional<double> lambda_star; // optimal aperture, for elevation / distance curves
};

struct FractionTarget
{
    double fraction = 1.0;
    double x = 0.0;
    std::optional<double> y;
};

struct SweepResult
{
    SweepVariable variable = SweepVariable::aperture;
    PolPair pol;
    std::vector<SweepRow> rows;

    // Refined argmax; y_star only for 2-D sweeps
    double x_star = 0.0;
    std::optional<double> y_star;
    double se_star = 0.0;

    std::vector<FractionTarget> fractions;
    SnrConvention convention = SnrConvention::direct;
};

// Spectral efficiency of the asymptotic ULA Gramian versus aperture Lambda = 2L (grid in meters)
SweepResult optimal_aperture_ula(int t_pol, int r_pol, double theta, double d, const SnrConfig& snr,
                                 const std::vector<double>& grid, const std::vector<double>& fractions = {});

double aperture_for_fraction(double fraction, int t_pol, int r_pol, double theta, double d, const SnrConfig& snr,
                             const std::vector<double>& grid);

// Same for the UPA closed forms, Lambda_UPA = 2 sqrt(Lx^2 + Ly^2), Lx / Ly = aspect
SweepResult upa_aperture_sweep(int t_pol, int r_pol, double theta, double d, const SnrConfig& snr, double aspect,
                               const std::vector<double>& grid, const std::vector<double>& fractions = {});

// Optimal aperture and rate as a function of elevation (values in rad, d fixed) or distance
// (values in m, theta fixed). normalized_grid holds Lambda / D candidates.
SweepResult optimal_aperture_curve(SweepVariable variable, int t_pol, int r_pol, double theta, double d,
                                   const std::vector<double>& values, const SnrConfig& snr,
                                   const std::vector<double>& normalized_grid, ArrayKind kind = ArrayKind::ula,
                                   double aspect = 1.0);

// Finite ULA transmitter (2M+1 elements, K = 0) against n_r receive antennas on a line
// parallel to y. Rows are indexed by aperture (x, m) and spacing (y, in wavelengths).
SweepResult rx_separation_sweep(int t_pol, int r_pol, int n_r, const std::vector<double>& delta_r_grid_lambda,
                                const std::vector<double>& aperture_grid, double d, const SnrConfig& snr, int m,
                                double lambda, double theta = 0.0,
                                const std::vector<double>& fractions = {1.0, 0.99, 0.95});

struct EigenStudyRow
{
    double l_y = 0.0;
    std::array<double, 3> finite{};
    std::array<double, 3> asymptotic{};
    std::array<double, 3> rel_gap{}; // |finite - asymptotic| / asymptotic
};

std::vector<EigenStudyRow> eigenvalue_size_study(double l_x, const std::vector<double>& l_y_grid, double d,
                                                 double theta, double delta_t, double lambda);

struct SnrCalibration
{
    SnrConvention chosen = SnrConvention::direct;
    double normalized_direct = 0.0;  // Lambda* / D with snr0 = 10^(dB/10)
    double normalized_per_eq6 = 0.0; // with snr0 = 10^(dB/10) / 3
    double target = 0.0;
};

// Lambda*/D of (3x3), theta = 0 under both conventions, compared with `target`
SnrCalibration calibrate_snr_convention(double snr_db = 50.0, double target = 1.8120);

std::vector<double> linspace(double start, double stop, std::size_t points);

} // namespace holo

#endif
