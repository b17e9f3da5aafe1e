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


#ifndef HOLO_COMMANDS_HPP
#define HOLO_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "holo/config.hpp"
#include "holo/holographic.hpp"

namespace holo
{

// Exit codes of every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitDomainError = 2;

// Entry point of the `holo` executable: gramian | capacity | sweep | validate
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Closed-form Gramian for the array and receiver of a scenario (n_r = 1, t_pol 2 or 3).
// k_half = 0 selects the ULA forms, otherwise the UPA forms with Lx = K delta_t, Ly = M delta_t.
AsymptoticGramian asymptotic_from_config(const ScenarioConfig& cfg);

} // namespace holo

#endif
