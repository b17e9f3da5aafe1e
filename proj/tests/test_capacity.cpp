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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "holo/capacity.hpp"
#include "holo/holographic.hpp"

using namespace holo;
using boost::multiprecision::cpp_bin_float_50;

namespace
{

struct Brute
{
    double rate = -1.0;
    std::vector<double> powers;
};

// every active set, keep the best one that satisfies the KKT sign conditions
Brute brute_force_waterfill(const std::vector<double>& rho, double budget)
{
    const std::size_t n = rho.size();
    Brute best;
    for (unsigned mask = 1; mask < (1u << n); ++mask)
    {
        double inv = 0.0;
        int count = 0;
        bool positive = true;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
            {
                positive = positive && rho[i] > 0.0;
                inv += rho[i] > 0.0 ? 1.0 / rho[i] : 0.0;
                ++count;
            }
        if (!positive)
            continue;

        const double mu = (budget + inv) / count; // 1 / water level
        std::vector<double> p(n, 0.0);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (mask & (1u << i))
            {
                p[i] = mu - 1.0 / rho[i];
                ok = ok && p[i] > 0.0;
            }
            else
                ok = ok && rho[i] * mu <= 1.0;
        }
        if (!ok)
            continue;
        double rate = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            rate += std::log2(1.0 + rho[i] * p[i]);
        if (rate > best.rate)
            best = {rate, p};
    }
    return best;
}

// roots of the characteristic polynomial of a symmetric 3x3 matrix, trigonometric form in 50 digits
std::vector<double> cubic_roots_mp(const Mat& a)
{
    using F = cpp_bin_float_50;
    F m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = F(a(i, j));
    const F q = (m[0][0] + m[1][1] + m[2][2]) / 3;
    const F p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    const F p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) + (m[2][2] - q) * (m[2][2] - q) +
                 2 * p1;
    const F p = sqrt(p2 / 6);
    F b[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            b[i][j] = (m[i][j] - (i == j ? q : F(0))) / p;
    const F det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                  b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    F r = det / 2;
    if (r > 1)
        r = 1;
    if (r < -1)
        r = -1;
    const F phi = acos(r) / 3;
    const F pi = boost::math::constants::pi<F>();
    const F e1 = q + 2 * p * cos(phi);
    const F e3 = q + 2 * p * cos(phi + 2 * pi / 3);
    const F e2 = 3 * q - e1 - e3;
    std::vector<double> out = {e1.convert_to<double>(), e2.convert_to<double>(), e3.convert_to<double>()};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace

TEST_CASE("waterfill: worked examples")
{
    const auto one = waterfill({1.0, 0.0, 0.0}, 10.0);
    CHECK(one.active_count == 1);
    CHECK(one.powers[0] == doctest::Approx(10.0));

    const auto eq = waterfill({2.0, 2.0}, 4.0);
    CHECK(eq.active_count == 2);
    CHECK(eq.powers[0] == doctest::Approx(2.0));
    CHECK(eq.powers[1] == doctest::Approx(2.0));

    // level 1 / (s + 1/rho1) crosses rho2 exactly at the first threshold
    const std::vector<double> rho = {1.0, 0.5, 0.1};
    const double th1 = 1.0 / 0.5 - 1.0;
    CHECK(waterfill(rho, th1 * 0.999).active_count == 1);
    CHECK(waterfill(rho, th1).active_count == 1);
    CHECK(waterfill(rho, th1 * 1.001).active_count == 2);
}

TEST_CASE("waterfill: matches an exhaustive active-set search")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 2000; ++n)
    {
        std::vector<double> rho = {u(gen), u(gen), u(gen)};
        if (n % 5 == 0)
            rho[2] = 0.0;
        std::sort(rho.begin(), rho.end(), std::greater<>());
        if (rho[0] == 0.0)
            continue;
        const double budget = std::pow(10.0, -2.0 + 7.0 * u(gen));
        const auto wf = waterfill(rho, budget);
        const auto ref = brute_force_waterfill(rho, budget);
        double rate = 0.0, total = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
        {
            rate += std::log2(1.0 + rho[i] * wf.powers[i]);
            total += wf.powers[i];
            CHECK(wf.powers[i] == doctest::Approx(ref.powers[i]).epsilon(1e-9).scale(budget));
        }
        CHECK(rate == doctest::Approx(ref.rate).epsilon(1e-10));
        CHECK(std::abs(total - budget) <= 1e-12 * std::max(1.0, budget));
    }
}

TEST_CASE("waterfill: rejects unusable input")
{
    try
    {
        waterfill({0.0, 0.0, 0.0}, 10.0);
        FAIL("expected a DomainError");
    }
    catch (const DomainError& e)
    {
        CHECK(std::string(e.what()).find("no usable channel") != std::string::npos);
    }
    CHECK_THROWS_AS(waterfill({0.1, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(waterfill({1.0}, 0.0), DomainError);
}

TEST_CASE("eigenvalues: sorting, clamping and validation")
{
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = 0.5;
    d(1, 1) = 2.0;
    d(2, 2) = 1e-17;
    const auto e = eig_sorted(d);
    CHECK(e[0] == doctest::Approx(2.0));
    CHECK(e[1] == doctest::Approx(0.5));
    CHECK(e[2] == 0.0);

    Mat nonsym = Mat::Identity(2, 2);
    nonsym(0, 1) = 0.5;
    CHECK_THROWS_AS(eig_sorted(nonsym), DomainError);

    Mat indefinite = Mat::Identity(2, 2);
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(eig_sorted(indefinite), DomainError);

    CMat herm(2, 2);
    herm << cplx(2, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0);
    const auto h = eig_sorted(herm);
    CHECK(h[0] == doctest::Approx(3.0));
    CHECK(h[1] == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues of asymptotic gramians match extended-precision cubic roots")
{
    const std::vector<Mat> mats = {
        ula_gramian(3, 3, 1.0, 0.5, 4.0).w_bar,
        ula_gramian(2, 3, 2.5, -0.3, 4.0).w_bar,
        upa_gramian_3x3(upa_geometry(1.2, 0.8, {0.3, -0.5, 2.0}), 2.2).w_bar,
        upa_gramian_2x3(upa_geometry(2.0, 3.0, {-1.0, 0.4, 1.5}), 1.9).w_bar,
    };
    for (const Mat& w : mats)
    {
        const auto got = eig_sorted(w);
        const auto ref = cubic_roots_mp(w);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(got[i] - ref[i]) <= 1e-12 * ref[0]);
    }
}

TEST_CASE("spectral efficiency of the point-source gramian")
{
    Mat w = Mat::Zero(3, 3);
    w(0, 0) = w(1, 1) = 1.0;
    for (double s : {0.5, 10.0, 1e5})
    {
        const auto r = spectral_efficiency(w, SnrConfig{s});
        CHECK(r.se == doctest::Approx(2.0 * std::log2(1.0 + s / 2.0)).epsilon(1e-14));
        CHECK(r.allocation.active_count == 2);
    }
    // the quotient approaches the two transverse modes as the SNR grows
    double prev = 0.0;
    for (double s : {1e3, 1e10, 1e40, 1e200})
    {
        const double nu = spectral_efficiency(w, SnrConfig{s}).effective_dof;
        CHECK(nu > prev);
        CHECK(nu < 2.0);
        prev = nu;
    }
    CHECK(prev > 1.99);
    CHECK(std::isnan(spectral_efficiency(w, SnrConfig{0.5}).effective_dof));
}

TEST_CASE("stream count follows the thresholds")
{
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.01, 1.0), e(-3.0, 6.0);
    for (int n = 0; n < 3000; ++n)
    {
        std::vector<double> rho = {u(gen), u(gen), u(gen)};
        std::sort(rho.begin(), rho.end(), std::greater<>());
        Mat w = Mat::Zero(3, 3);
        for (int i = 0; i < 3; ++i)
            w(i, i) = rho[static_cast<std::size_t>(i)];
        const double s = std::pow(10.0, e(gen));
        const auto r = spectral_efficiency(w, SnrConfig{s});
        REQUIRE(r.snr_th1);
        REQUIRE(r.snr_th2);
        CHECK(*r.snr_th1 <= *r.snr_th2);
        const int expect = 1 + (s > *r.snr_th1 ? 1 : 0) + (s > *r.snr_th2 ? 1 : 0);
        CHECK(r.allocation.active_count == expect);
    }
}

TEST_CASE("rate is non-decreasing in SNR and invariant to eigenbasis rotation")
{
    const Mat w = ula_gramian(3, 3, 1.3, 0.2, 4.0).w_bar;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    const Mat rotated = rot * w * rot.transpose();
    double prev = 0.0;
    for (double db = -10.0; db <= 80.0; db += 2.5)
    {
        const auto snr = SnrConfig::from_db(db);
        const double se = spectral_efficiency(w, snr).se;
        CHECK(se >= prev);
        CHECK(spectral_efficiency(rotated, snr).se == doctest::Approx(se).epsilon(1e-12));
        prev = se;
    }
}

TEST_CASE("extended-precision rate for the broadside linear array")
{
    using F = cpp_bin_float_50;
    const Mat w = ula_gramian(3, 3, 1.0, 0.0, 4.0).w_bar;
    const double snr = 1e3;
    const auto r = spectral_efficiency(w, SnrConfig{snr});
    const auto rho = cubic_roots_mp(w);
    // all three modes are active at this SNR
    REQUIRE(r.allocation.active_count == 3);
    const F level = F(3) / (F(snr) + 1 / F(rho[0]) + 1 / F(rho[1]) + 1 / F(rho[2]));
    F se = 0;
    for (double v : rho)
        se += log(F(v) / level) / log(F(2));
    CHECK(std::abs(r.se - se.convert_to<double>()) < 1e-12 * r.se);
}

TEST_CASE("snr conventions")
{
    CHECK(SnrConfig::from_db(50.0).snr0 == doctest::Approx(1e5));
    CHECK(SnrConfig::from_db(50.0).convention == SnrConvention::direct);
    const PhysicalConstants c{0.01, cplx(1.0, 0.0)};
    const auto lb = SnrConfig::from_link_budget(1e5, 1.0, 3, c, 4.0);
    CHECK(lb.convention == SnrConvention::per_eq6);
    CHECK(lb.snr0 == doctest::Approx(1e5 / 3.0 * 1e4 / 16.0));
    CHECK_THROWS_AS(SnrConfig::from_link_budget(1.0, 0.0, 3, c, 4.0), DomainError);
    CHECK_THROWS_AS(spectral_efficiency(Mat(Mat::Identity(3, 3)), SnrConfig{-1.0}), DomainError);
}

TEST_CASE("effective dof helper")
{
    CHECK(effective_dof(3.0 * std::log2(1e4), 1e4) == doctest::Approx(3.0));
    CHECK(effective_dof([](double s) { return std::log2(s); }, 1e6) == doctest::Approx(1.0));
    CHECK_THROWS_AS(effective_dof(1.0, 1.0), DomainError);
}

TEST_CASE("finite capacity: one element and equal-norm orthogonal rows")
{
    const PhysicalConstants c{0.01, cplx(1.0, 0.0)};
    const double r = 3.0;
    ChannelMatrix h;
    h.entries = radiative_block({0, 0, 0}, {0, 0, r}, c);
    const double gain = std::norm(c.xi / (c.lambda * r));
    const double p = 2.0, sigma2 = 1e-3;
    const auto rep = capacity_finite(h, p, sigma2);
    CHECK(rep.eigenvalues[0] == doctest::Approx(gain));
    CHECK(rep.eigenvalues[1] == doctest::Approx(gain));
    CHECK(rep.se == doctest::Approx(2.0 * std::log2(1.0 + gain * p / (2.0 * sigma2))).epsilon(1e-13));
    CHECK(rep.allocation.powers[0] == doctest::Approx(1.0));
    CHECK(rep.allocation.powers[1] == doctest::Approx(1.0));

    ChannelMatrix zero;
    zero.entries = CMat::Zero(3, 6);
    CHECK_THROWS_AS(capacity_finite(zero, 1.0, 1.0), DomainError);
}

TEST_CASE("finite capacity equals the normalized-gramian rate")
{
    const PhysicalConstants c{0.01, cplx(1.0, 0.0)};
    const ArraySpec a{0.01, 100, 0, 3};
    const Vec3 rx(0.0, 0.4, 2.0);
    const double d = rx.norm();
    const double snr0 = 1e4;
    // P / sigma^2 chosen so that P |xi/lambda|^2 N / (sigma^2 N D^2) equals snr0
    const double n = static_cast<double>(a.num_elements());
    const double p_over_s = snr0 * d * d / (n * std::norm(c.xi / c.lambda));
    for (int rp : {2, 3})
    {
        const auto h = stack_channel(a, RxSpec::single(rx, rp), c, ChannelModel::radiative);
        const auto fin = capacity_finite(h, p_over_s, 1.0);
        const auto g = finite_gramian(a, RxSpec::single(rx, rp), d);
        const auto ref = spectral_efficiency(g.w, SnrConfig{snr0});
        CHECK(fin.se == doctest::Approx(ref.se).epsilon(1e-9));
        CHECK(fin.allocation.active_count == ref.allocation.active_count);
    }
}
