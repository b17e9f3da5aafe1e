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


#include "holo/channel.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "holo/parallel.hpp"

namespace holo
{

namespace
{

void check_pol(int pol, const char* what)
{
    if (pol < 1 || pol > 3)
        throw DomainError(std::string(what) + " must be 1, 2 or 3");
}

// Common prefactor xi / (lambda r) * exp(-j 2 pi r / lambda)
cplx spherical_wave(double r, const PhysicalConstants& c)
{
    return c.xi / (c.lambda * r) * std::polar(1.0, -2.0 * kPi * r / c.lambda);
}

double separation(const Vec3& tx, const Vec3& rx)
{
    const double r = (rx - tx).norm();
    if (!(r > 0.0))
        throw DomainError("channel: transmit element coincides with a receive antenna");
    return r;
}

} // namespace

void PhysicalConstants::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("constants: lambda must be positive");
    if (xi == cplx(0.0, 0.0) || !std::isfinite(xi.real()) || !std::isfinite(xi.imag()))
        throw DomainError("constants: xi must be finite and non-zero");
}

Mat3 projector(const Vec3& r)
{
    const double r2 = r.squaredNorm();
    if (!(r2 > 0.0))
        throw DomainError("projector: zero direction vector");
    return Mat3::Identity() - r * r.transpose() / r2;
}

CMat3 exact_block(const Vec3& tx, const Vec3& rx, const PhysicalConstants& c)
{
    c.validate();
    const double r = separation(tx, rx);
    const Vec3 u = (rx - tx) / r;

    const double two_pi_r = 2.0 * kPi * r;
    const cplx reactive = cplx(-c.lambda * c.lambda, c.lambda * two_pi_r) / (two_pi_r * two_pi_r);
    const cplx alpha = 1.0 + reactive;
    const cplx beta = 1.0 + 3.0 * reactive;

    const CMat3 shape = alpha * CMat3::Identity() - beta * (u * u.transpose()).cast<cplx>();
    return spherical_wave(r, c) * shape;
}

CMat3 radiative_block(const Vec3& tx, const Vec3& rx, const PhysicalConstants& c)
{
    c.validate();
    const double r = separation(tx, rx);
    return spherical_wave(r, c) * projector(rx - tx).cast<cplx>();
}

ChannelMatrix stack_channel(const ArraySpec& a, const RxSpec& rx, const PhysicalConstants& c,
                            ChannelModel model)
{
    a.validate();
    rx.validate();
    c.validate();

    const auto tx = element_positions(a);
    const auto rp = static_cast<Eigen::Index>(rx.r_pol);
    const auto tp = static_cast<Eigen::Index>(a.t_pol);

    ChannelMatrix out;
    out.model = model;
    out.entries.resize(static_cast<Eigen::Index>(rx.n_r()) * rp, static_cast<Eigen::Index>(tx.size()) * tp);

    // one column strip per element; strips are disjoint so the loop is race free
    par::for_each_index(tx.size(), [&](std::size_t e) {
        for (std::size_t i = 0; i < rx.n_r(); ++i)
        {
            const CMat3 blk = model == ChannelModel::exact ? exact_block(tx[e], rx.positions[i], c)
                                                           : radiative_block(tx[e], rx.positions[i], c);
            out.entries.block(static_cast<Eigen::Index>(i) * rp, static_cast<Eigen::Index>(e) * tp, rp, tp) =
                blk.topLeftCorner(rp, tp);
        }
    });
    return out;
}

FiniteGramian finite_gramian(const ArraySpec& a, const RxSpec& rx, double d_ref, double lambda)
{
    constexpr std::size_t kMaxRx = 16;
    a.validate();
    rx.validate();
    if (!(d_ref > 0.0))
        throw DomainError("finite_gramian: reference distance must be positive");
    if (rx.n_r() > 1 && !(lambda > 0.0))
        throw DomainError("finite_gramian: lambda must be positive when n_r > 1");

    const auto tx = element_positions(a);
    const std::size_t n = tx.size();
    const double scale = d_ref * d_ref / static_cast<double>(n);
    const int rp = rx.r_pol, tp = a.t_pol;

    FiniteGramian g;

    if (rx.n_r() == 1)
    {
        const Vec3 p0 = rx.positions.front();
        const Mat3 sum = par::blocked_sum<Mat3>(n, Mat3::Zero(), [&](std::size_t e) -> Mat3 {
            const Vec3 r = tx[e] - p0;
            const double r2 = r.squaredNorm();
            if (!(r2 > 0.0))
                throw DomainError("finite_gramian: transmit element coincides with the receiver");
            const Mat3 p = projector(r);
            Mat3 term = Mat3::Zero();
            term.topLeftCorner(rp, rp) =
                p.topLeftCorner(rp, tp) * p.topLeftCorner(rp, tp).transpose() / r2;
            return term;
        });
        g.w = (scale * sum.topLeftCorner(rp, rp)).cast<cplx>();
        return g;
    }

    const std::size_t nr = rx.n_r();
    const auto dim = static_cast<Eigen::Index>(nr * static_cast<std::size_t>(rp));
    const CMat zero = CMat::Zero(dim, dim);

    CMat sum = par::blocked_accumulate<CMat>(n, zero, [&](std::size_t e, CMat& acc) {
        // scratch on the stack for the usual handful of receive antennas
        Mat3 sel_local[kMaxRx];
        double dist_local[kMaxRx];
        std::vector<Mat3> sel_heap;
        std::vector<double> dist_heap;
        Mat3* s = sel_local;
        double* dist = dist_local;
        if (nr > kMaxRx)
        {
            sel_heap.resize(nr);
            dist_heap.resize(nr);
            s = sel_heap.data();
            dist = dist_heap.data();
        }
        for (std::size_t i = 0; i < nr; ++i)
        {
            const Vec3 r = tx[e] - rx.positions[i];
            dist[i] = r.norm();
            if (!(dist[i] > 0.0))
                throw DomainError("finite_gramian: transmit element coincides with a receive antenna");
            s[i] = projector(r);
        }
        for (std::size_t i = 0; i < nr; ++i)
        {
            const auto bi = static_cast<Eigen::Index>(i) * rp;
            const auto pi = s[i].topLeftCorner(rp, tp);
            acc.block(bi, bi, rp, rp) += (pi * pi.transpose() / (dist[i] * dist[i])).cast<cplx>();
            for (std::size_t j = i + 1; j < nr; ++j)
            {
                const auto bj = static_cast<Eigen::Index>(j) * rp;
                const cplx w = std::polar(1.0 / (dist[i] * dist[j]), -2.0 * kPi * (dist[i] - dist[j]) / lambda);
                const Mat3 prod = s[i].leftCols(tp) * s[j].leftCols(tp).transpose();
                for (Eigen::Index u = 0; u < rp; ++u)
                    for (Eigen::Index v = 0; v < rp; ++v)
                    {
                        acc(bi + u, bj + v) += w * prod(u, v);
                        acc(bj + v, bi + u) += std::conj(w) * prod(u, v);
                    }
            }
        }
    });
    g.w = scale * sum;
    return g;
}

double lemma1_bound_general(double d, const PhysicalConstants& c)
{
    const double k = std::norm(c.xi / c.lambda);
    const double a = c.lambda / (2.0 * kPi * d);
    const double two_pi = 2.0 * kPi;
    return 8.0 * k * c.lambda / (two_pi * d * d * d) * (1.0 + a) +
           32.0 * k * c.lambda * c.lambda / (two_pi * two_pi * two_pi * std::pow(d, 4)) * (1.0 + a * a);
}

double lemma1_bound_tpol3(double d, const PhysicalConstants& c)
{
    const double xi2 = std::norm(c.xi);
    return (1.0 + 2.0 / kPi) * xi2 / (2.0 * kPi * kPi * std::pow(d, 4)) +
           c.lambda * c.lambda * xi2 / (2.0 * std::pow(kPi, 5) * std::pow(d, 6));
}

double lemma1_exact_tpol3(double r, const PhysicalConstants& c)
{
    const double a = c.lambda / (2.0 * kPi * r);
    return std::norm(c.xi) * (1.0 + a * a) / (kPi * kPi * std::pow(r, 4));
}

Lemma1Report lemma1_verify(const ArraySpec& a, const Vec3& rx, const PhysicalConstants& c, int t_pol,
                           int r_pol)
{
    a.validate();
    c.validate();
    check_pol(t_pol, "lemma1: t_pol");
    check_pol(r_pol, "lemma1: r_pol");
    if (!(rx.z() > 0.0))
        throw DomainError("lemma1: receiver needs z > 0");

    const auto tx = element_positions(a);
    const double k = std::norm(c.xi / c.lambda);

    Lemma1Report rep;
    rep.d_inf = std::numeric_limits<double>::infinity();
    for (const auto& p : tx)
        rep.d_inf = std::min(rep.d_inf, (rx - p).norm());

    rep.measured_sup_norm = par::parallel_max(
        tx.size(),
        [&](std::size_t e) {
            const double r = (rx - tx[e]).norm();
            const CMat h = exact_block(tx[e], rx, c).topLeftCorner(r_pol, t_pol);
            const Mat p = projector(rx - tx[e]).topLeftCorner(r_pol, t_pol);
            const CMat err = h * h.adjoint() - (k / (r * r) * (p * p.transpose())).cast<cplx>();
            const Eigen::SelfAdjointEigenSolver<CMat> es(err, Eigen::EigenvaluesOnly);
            return es.eigenvalues().cwiseAbs().maxCoeff();
        },
        0.0);

    rep.bound_general = lemma1_bound_general(rep.d_inf, c);
    if (t_pol == 3)
    {
        rep.bound_tpol3 = lemma1_bound_tpol3(rep.d_inf, c);
        rep.exact_tpol3_norm = lemma1_exact_tpol3(rep.d_inf, c);
    }
    return rep;
}

} // namespace holo
