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


#ifndef HOLO_REPORT_HPP
#define HOLO_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/capacity.hpp"
#include "holo/sweep.hpp"

namespace holo
{

// %.12g, with "nan" / "inf" spelled out; the single number format of every output file
std::string format_number(double v);

// One row per grid point, fixed columns:
// scenario_hash,t_pol,r_pol,x,y,se_bits_per_hz,dof_effective,n_active,eig1..eigN,lambda_star
void write_results_csv(std::ostream& os, const std::string& hash, const std::vector<SweepResult>& results);

nlohmann::json rate_report_json(const RateReport& r);
nlohmann::json sweep_summary_json(const std::string& hash, const std::vector<SweepResult>& results,
                                  double reference_distance);

// Writes text to dir/name, creating dir when needed; throws ConfigError on I/O failure
void write_file(const std::string& dir, const std::string& name, const std::string& text);

} // namespace holo

#endif
