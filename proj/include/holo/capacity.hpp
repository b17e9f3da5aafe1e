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


#ifndef HOLO_CAPACITY_HPP
#define HOLO_CAPACITY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "holo/channel.hpp"
#include "holo/types.hpp"

namespace holo
{

enum class SnrConvention
{
    direct, // snr0 = 10^(dB/10)
    per_eq6 // snr0 = P_bar / (sigma2 t_pol) * |xi/lambda|^2 / D^2
};

struct SnrConfig
{
    double snr0 = 1.0; // linear
    SnrConvention convention = SnrConvention::direct;

    void validate() const;

    static SnrConfig from_db(double db);
    static SnrConfig from_link_budget(double p_bar, double sigma2, int t_pol, const PhysicalConstants& c, double d);
};

struct PowerAllocation
{
    std::vector<double> powers; // one per eigenvalue, same order
    double water_level = 0.0;   // theta: active iff rho_i > theta
    int active_count = 0;
};

struct RateReport
{
    double se = 0.0; // [bit/s/Hz]
    std::vector<double> eigenvalues;
    PowerAllocation allocation;
    double effective_dof = 0.0; // C / log2(snr); NaN when snr <= 1
    std::optional<double> snr_th1, snr_th2;
};

// Real eigenvalues of a Hermitian matrix, descending; magnitudes below 1e-12 * trace become 0
std::vector<double> eig_sorted(const CMat& w);
std::vector<double> eig_sorted(const Mat& w);

PowerAllocation waterfill(const std::vector<double>& eigs, double snr0);

RateReport spectral_efficiency(const CMat& w, const SnrConfig& snr);
RateReport spectral_efficiency(const Mat& w, const SnrConfig& snr);

// Rate of the stacked channel with total transmit power p_total and noise variance sigma2.
// Powers in the allocation are absolute; effective_dof is taken against p_total / sigma2.
RateReport capacity_finite(const ChannelMatrix& h, double p_total, double sigma2);

double effective_dof(const std::function<double(double)>& rate_fn, double snr);
double effective_dof(double se, double snr);

} // namespace holo

#endif
