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


#ifndef HOLO_QUADRATURE_HPP
#define HOLO_QUADRATURE_HPP

#include <functional>

namespace holo
{

enum class GkOrder
{
    gk15, // 7-point Gauss, 15-point Kronrod
    gk31  // 15-point Gauss, 31-point Kronrod
};

struct QuadratureOptions
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-12; // relative to the L1 norm of the integrand
    GkOrder order = GkOrder::gk15;
    unsigned max_depth = 20;
};

struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    double l1 = 0.0;
};

// Adaptive Gauss-Kronrod integration of f over [a, b].
// Throws NumericError when the error estimate stays above max(abs_tol, rel_tol * L1).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt = {});

} // namespace holo

#endif
