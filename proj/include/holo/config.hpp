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


#ifndef HOLO_CONFIG_HPP
#define HOLO_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "holo/capacity.hpp"
#include "holo/channel.hpp"
#include "holo/sweep.hpp"

namespace holo
{

enum class RxMode
{
    polar,
    cartesian
};

struct SweepConfig
{
    SweepVariable variable = SweepVariable::aperture;
    double start = 0.0; // aperture [m], elevation [deg], distance [m], rx separation [lambda]
    double stop = 0.0;
    int points = 0;
    std::vector<double> fractions;
    ArrayKind array = ArrayKind::ula;
    double aspect_lx_over_ly = 1.0;
    std::vector<PolPair> pol_pairs; // empty: the pair given by tx.t_pol / rx.r_pol

    // Lambda / D candidates searched at every elevation / distance point
    double aperture_over_d_start = 1e-3;
    double aperture_over_d_stop = 8.0;
    int aperture_over_d_points = 4000;

    // Second axis of the joint aperture / rx-separation sweep
    double rx_sep_start_lambda = 0.5;
    double rx_sep_stop_lambda = 0.5;
    int rx_sep_points = 1;
};

struct ScenarioConfig
{
    double lambda_m = 0.01;
    double xi_abs = 1.0;

    double delta_t_m = 0.005;
    int m_half = 0;
    int k_half = 0;
    int t_pol = 3;

    RxMode rx_mode = RxMode::polar;
    double d_m = 4.0;
    double theta_deg = 0.0;
    double x0_m = 0.0, y0_m = 0.0, z0_m = 4.0;
    int n_r = 1;
    double delta_r_in_lambda = 0.5;
    int r_pol = 3;

    double snr_db = 50.0;
    SnrConvention convention = SnrConvention::direct;

    std::optional<SweepConfig> sweep;

    ArraySpec array() const;
    Vec3 rx_center() const;
    RxSpec rx() const;
    double reference_distance() const; // |rx_center|
    PhysicalConstants constants() const;
    SnrConfig snr() const; // per_eq6 uses the link budget of the constants and tx sections

    std::string canonical_json() const; // every field, sorted keys, resolved defaults
};

// Text of a JSON scenario plus `key.path=value` overrides. Throws ConfigError with the
// parser's line/column or the offending key path.
ScenarioConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                            const std::string& origin = "<config>");
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// 64-bit FNV-1a of the canonical JSON, as 16 hex digits
std::string scenario_hash(const ScenarioConfig& cfg);

std::string to_string(SnrConvention c);

} // namespace holo

#endif
