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


// Straightforward sequential versions of the channel kernels. They share no code
// with the blocked OpenMP path beyond the per-element block formulas.

#include "holo/channel.hpp"

#include <cmath>

namespace holo::serial
{

ChannelMatrix stack_channel(const ArraySpec& a, const RxSpec& rx, const PhysicalConstants& c,
                            ChannelModel model)
{
    a.validate();
    rx.validate();
    c.validate();
    const auto tx = element_positions(a);
    const int rp = rx.r_pol, tp = a.t_pol;

    ChannelMatrix out;
    out.model = model;
    out.entries = CMat::Zero(static_cast<Eigen::Index>(rx.n_r()) * rp, static_cast<Eigen::Index>(tx.size()) * tp);
    for (std::size_t e = 0; e < tx.size(); ++e)
        for (std::size_t i = 0; i < rx.n_r(); ++i)
        {
            const CMat3 blk = model == ChannelModel::exact ? exact_block(tx[e], rx.positions[i], c)
                                                           : radiative_block(tx[e], rx.positions[i], c);
            for (int q = 0; q < rp; ++q)
                for (int p = 0; p < tp; ++p)
                    out.entries(static_cast<Eigen::Index>(i) * rp + q, static_cast<Eigen::Index>(e) * tp + p) =
                        blk(q, p);
        }
    return out;
}

FiniteGramian finite_gramian(const ArraySpec& a, const RxSpec& rx, double d_ref, double lambda)
{
    a.validate();
    rx.validate();
    if (!(d_ref > 0.0))
        throw DomainError("finite_gramian: reference distance must be positive");
    if (rx.n_r() > 1 && !(lambda > 0.0))
        throw DomainError("finite_gramian: lambda must be positive when n_r > 1");

    const auto tx = element_positions(a);
    const std::size_t nr = rx.n_r();
    const int rp = rx.r_pol, tp = a.t_pol;
    const auto dim = static_cast<Eigen::Index>(nr) * rp;

    CMat w = CMat::Zero(dim, dim);
    for (const auto& t : tx)
    {
        for (std::size_t i = 0; i < nr; ++i)
        {
            const Vec3 ri = t - rx.positions[i];
            const double di = ri.norm();
            if (!(di > 0.0))
                throw DomainError("finite_gramian: transmit element coincides with a receive antenna");
            const Mat3 pi = projector(ri);
            for (std::size_t j = 0; j < nr; ++j)
            {
                const Vec3 rj = t - rx.positions[j];
                const double dj = rj.norm();
                const Mat3 pj = projector(rj);
                const cplx ph = i == j ? cplx(1.0 / (di * di), 0.0)
                                       : std::polar(1.0 / (di * dj), -2.0 * kPi * (di - dj) / lambda);
                for (int q = 0; q < rp; ++q)
                    for (int s = 0; s < rp; ++s)
                    {
                        double acc = 0.0;
                        for (int p = 0; p < tp; ++p)
                            acc += pi(q, p) * pj(s, p);
                        w(static_cast<Eigen::Index>(i) * rp + q, static_cast<Eigen::Index>(j) * rp + s) += ph * acc;
                    }
            }
        }
    }
    FiniteGramian g;
    g.w = d_ref * d_ref / static_cast<double>(tx.size()) * w;
    return g;
}

} // namespace holo::serial
