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


#ifndef HOLO_VALIDATION_HPP
#define HOLO_VALIDATION_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "holo/channel.hpp"
#include "holo/holographic.hpp"

namespace holo
{

struct SuiteCase
{
    std::uint64_t seed = 0;
    std::string label;
    double error = 0.0;     // observed error or ratio, see the suite
    double tolerance = 0.0; // pass iff error <= tolerance
    bool pass() const { return error <= tolerance; }
};

struct SuiteReport
{
    std::string suite;
    std::vector<SuiteCase> cases;

    bool pass() const;
    double max_error(const std::string& label) const;
    std::size_t failures() const;
};

// Panel half-lengths in [0.1, 4] m, receiver x0, y0 in [-4, 4] m, z0 in [0.5, 10] m
UpaGeometry seeded_upa_geometry(std::uint64_t seed);

struct Lemma1Case
{
    ArraySpec array;
    Vec3 rx;
    PhysicalConstants constants;
};

// Small random array and a receiver whose closest element lies at d_inf in [0.2, 20] m
Lemma1Case seeded_lemma1_case(std::uint64_t seed);

// Closed forms against the 2-D quadrature oracle (3x3, 2x3, tol 1e-8), the 1-D oracle
// (2x3, tol 1e-9) and the trace identity (tol 1e-12). Errors are max|A - B| / max|B|.
SuiteReport run_quadrature_suite(std::size_t seeds);

// measured / bound for the general bound and, for t_pol = 3, the simplified one; tol 1
SuiteReport run_lemma1_suite(std::size_t seeds);

// |s_M^(k) - psi_k| / |psi_k| for M = 10^2 .. 10^6; a case fails when the error grows with M
SuiteReport run_riemann_suite();

double max_rel_error(const Mat& a, const Mat& b);

} // namespace holo

#endif
