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


#include "holo/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace holo
{

using nlohmann::json;

namespace
{

json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json optional_json(const std::optional<double>& v)
{
    return v ? number_or_null(*v) : json(nullptr);
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_results_csv(std::ostream& os, const std::string& hash, const std::vector<SweepResult>& results)
{
    std::size_t n_eig = 0;
    for (const auto& r : results)
        for (const auto& row : r.rows)
            n_eig = std::max(n_eig, row.eigenvalues.size());

    os << "scenario_hash,t_pol,r_pol,x,y,se_bits_per_hz,dof_effective,n_active";
    for (std::size_t k = 1; k <= n_eig; ++k)
        os << ",eig" << k;
    os << ",lambda_star\n";

    for (const auto& r : results)
    {
        // the grid point closest to the refined optimum carries lambda_star for 1-D aperture sweeps
        std::size_t star_row = r.rows.size();
        if (r.variable == SweepVariable::aperture && !r.rows.empty())
        {
            star_row = 0;
            for (std::size_t i = 1; i < r.rows.size(); ++i)
                if (std::abs(r.rows[i].x - r.x_star) < std::abs(r.rows[star_row].x - r.x_star))
                    star_row = i;
        }

        for (std::size_t i = 0; i < r.rows.size(); ++i)
        {
            const SweepRow& row = r.rows[i];
            os << hash << ',' << r.pol.t_pol << ',' << r.pol.r_pol << ',' << format_number(row.x) << ','
               << (row.y ? format_number(*row.y) : "") << ',' << format_number(row.se) << ','
               << format_number(row.dof) << ',' << row.n_active;
            for (std::size_t k = 0; k < n_eig; ++k)
                os << ',' << (k < row.eigenvalues.size() ? format_number(row.eigenvalues[k]) : "");
            os << ',';
            if (row.lambda_star)
                os << format_number(*row.lambda_star);
            else if (i == star_row)
                os << format_number(r.x_star);
            os << '\n';
        }
    }
}

json rate_report_json(const RateReport& r)
{
    json j;
    j["se_bits_per_hz"] = r.se;
    j["eigenvalues"] = r.eigenvalues;
    j["powers"] = r.allocation.powers;
    j["water_level"] = r.allocation.water_level;
    j["n_active"] = r.allocation.active_count;
    j["dof_effective"] = number_or_null(r.effective_dof);
    j["snr_th1"] = optional_json(r.snr_th1);
    j["snr_th2"] = optional_json(r.snr_th2);
    return j;
}

json sweep_summary_json(const std::string& hash, const std::vector<SweepResult>& results, double reference_distance)
{
    json j;
    j["scenario_hash"] = hash;
    j["results"] = json::array();
    for (const auto& r : results)
    {
        json e;
        e["variable"] = to_string(r.variable);
        e["t_pol"] = r.pol.t_pol;
        e["r_pol"] = r.pol.r_pol;
        e["snr_convention"] = r.convention == SnrConvention::direct ? "direct" : "per_eq6";
        e["se_star"] = r.se_star;
        e["x_star"] = r.x_star;
        e["y_star"] = optional_json(r.y_star);
        if (r.variable == SweepVariable::aperture || r.variable == SweepVariable::joint_aperture_rx_sep)
        {
            e["lambda_star"] = r.x_star;
            e["lambda_star_over_d"] = r.x_star / reference_distance;
        }
        json fr = json::array();
        for (const auto& f : r.fractions)
            fr.push_back({{"fraction", f.fraction}, {"x", f.x}, {"y", optional_json(f.y)}});
        e["fraction_targets"] = fr;
        j["results"].push_back(e);
    }
    return j;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
}

} // namespace holo
