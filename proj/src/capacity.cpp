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


#include "holo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace holo
{

namespace
{

constexpr double kZeroEig = 1e-12;
constexpr double kHermTol = 1e-12;

std::vector<double> sorted_from(const Eigen::VectorXd& ev, double trace)
{
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    const double floor = kZeroEig * std::max(std::abs(trace), std::numeric_limits<double>::min());
    for (double& v : out)
    {
        if (std::abs(v) <= floor)
            v = 0.0;
        else if (v < 0.0)
        {
            std::ostringstream os;
            os << "eig_sorted: matrix is not positive semidefinite (eigenvalue " << v << ", trace " << trace << ")";
            throw DomainError(os.str());
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RateReport rate_from_eigs(std::vector<double> eigs, double snr0)
{
    RateReport rep;
    rep.allocation = waterfill(eigs, snr0);
    for (std::size_t i = 0; i < eigs.size(); ++i)
        rep.se += std::log2(1.0 + eigs[i] * rep.allocation.powers[i]);

    if (eigs.size() >= 3)
    {
        if (eigs[1] > 0.0)
            rep.snr_th1 = 1.0 / eigs[1] - 1.0 / eigs[0];
        if (eigs[2] > 0.0)
            rep.snr_th2 = 2.0 / eigs[2] - 1.0 / eigs[0] - 1.0 / eigs[1];
    }
    rep.effective_dof = snr0 > 1.0 ? rep.se / std::log2(snr0) : std::numeric_limits<double>::quiet_NaN();
    rep.eigenvalues = std::move(eigs);
    return rep;
}

} // namespace

void SnrConfig::validate() const
{
    if (!(snr0 > 0.0) || !std::isfinite(snr0))
        throw DomainError("snr: reference SNR must be positive and finite");
}

SnrConfig SnrConfig::from_db(double db)
{
    SnrConfig s;
    s.snr0 = std::pow(10.0, db / 10.0);
    s.convention = SnrConvention::direct;
    s.validate();
    return s;
}

SnrConfig SnrConfig::from_link_budget(double p_bar, double sigma2, int t_pol, const PhysicalConstants& c, double d)
{
    c.validate();
    if (!(p_bar > 0.0) || !(sigma2 > 0.0) || !(d > 0.0) || t_pol < 1 || t_pol > 3)
        throw DomainError("snr: link budget needs positive power, noise, distance and t_pol in 1..3");
    SnrConfig s;
    s.snr0 = p_bar / (sigma2 * t_pol) * std::norm(c.xi / c.lambda) / (d * d);
    s.convention = SnrConvention::per_eq6;
    s.validate();
    return s;
}

std::vector<double> eig_sorted(const CMat& w)
{
    if (w.rows() != w.cols() || w.size() == 0)
        throw DomainError("eig_sorted: expected a non-empty square matrix");
    const double scale = std::max(w.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    if ((w - w.adjoint()).cwiseAbs().maxCoeff() > kHermTol * scale)
        throw DomainError("eig_sorted: matrix is not Hermitian");
    const CMat herm = 0.5 * (w + w.adjoint());
    const Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("eig_sorted: eigensolver did not converge");
    return sorted_from(es.eigenvalues(), herm.trace().real());
}

std::vector<double> eig_sorted(const Mat& w)
{
    return eig_sorted(CMat(w.cast<cplx>()));
}

PowerAllocation waterfill(const std::vector<double>& eigs, double snr0)
{
    if (!(snr0 > 0.0) || !std::isfinite(snr0))
        throw DomainError("waterfill: SNR budget must be positive");
    if (!std::is_sorted(eigs.begin(), eigs.end(), std::greater<>()))
        throw DomainError("waterfill: eigenvalues must be sorted in descending order");

    std::size_t usable = 0;
    while (usable < eigs.size() && eigs[usable] > 0.0)
        ++usable;
    if (usable == 0)
        throw DomainError("waterfill: no usable channel (all eigenvalues are zero)");

    std::vector<double> inv_prefix(usable + 1, 0.0);
    for (std::size_t i = 0; i < usable; ++i)
        inv_prefix[i + 1] = inv_prefix[i] + 1.0 / eigs[i];

    PowerAllocation out;
    out.powers.assign(eigs.size(), 0.0);
    for (std::size_t n = usable; n >= 1; --n)
    {
        const double level = static_cast<double>(n) / (snr0 + inv_prefix[n]);
        if (level < eigs[n - 1] || n == 1)
        {
            out.water_level = level;
            out.active_count = static_cast<int>(n);
            for (std::size_t i = 0; i < n; ++i)
                out.powers[i] = std::max(0.0, 1.0 / level - 1.0 / eigs[i]);
            break;
        }
    }
    return out;
}

RateReport spectral_efficiency(const CMat& w, const SnrConfig& snr)
{
    snr.validate();
    return rate_from_eigs(eig_sorted(w), snr.snr0);
}

RateReport spectral_efficiency(const Mat& w, const SnrConfig& snr)
{
    snr.validate();
    return rate_from_eigs(eig_sorted(w), snr.snr0);
}

RateReport capacity_finite(const ChannelMatrix& h, double p_total, double sigma2)
{
    if (!(p_total > 0.0) || !(sigma2 > 0.0))
        throw DomainError("capacity_finite: power and noise variance must be positive");
    if (h.entries.size() == 0 || !h.entries.allFinite())
        throw DomainError("capacity_finite: channel must be non-empty and finite");

    const CMat gram = h.entries * h.entries.adjoint();
    RateReport rep = rate_from_eigs(eig_sorted(gram), p_total / sigma2);
    for (double& p : rep.allocation.powers)
        p *= sigma2;
    return rep;
}

double effective_dof(const std::function<double(double)>& rate_fn, double snr)
{
    return effective_dof(rate_fn(snr), snr);
}

double effective_dof(double se, double snr)
{
    if (!(snr > 1.0))
        throw DomainError("effective_dof: snr must exceed 1");
    return se / std::log2(snr);
}

} // namespace holo
