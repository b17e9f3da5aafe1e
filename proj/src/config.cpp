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


#include "holo/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

namespace holo
{

using nlohmann::json;

namespace
{

// Typed access to one JSON object; remembers which keys were read so that anything
// left over can be reported as unknown.
class Section
{
  public:
    Section(const json& root, const std::string& name) : name_(name)
    {
        if (root.contains(name))
        {
            obj_ = &root.at(name);
            if (!obj_->is_object())
                throw ConfigError("config: section '" + name + "' must be an object");
        }
    }

    bool present() const { return obj_ != nullptr; }

    double number(const std::string& key, double def)
    {
        const json* v = find(key);
        if (!v)
            return def;
        if (!v->is_number())
            throw ConfigError("config: key '" + path(key) + "' must be a number");
        return v->get<double>();
    }

    int integer(const std::string& key, int def)
    {
        const json* v = find(key);
        if (!v)
            return def;
        if (!v->is_number_integer())
            throw ConfigError("config: key '" + path(key) + "' must be an integer");
        return v->get<int>();
    }

    std::string text(const std::string& key, const std::string& def)
    {
        const json* v = find(key);
        if (!v)
            return def;
        if (!v->is_string())
            throw ConfigError("config: key '" + path(key) + "' must be a string");
        return v->get<std::string>();
    }

    const json* raw(const std::string& key) { return find(key); }

    void finish() const
    {
        if (!obj_)
            return;
        for (const auto& item : obj_->items())
            if (!seen_.count(item.key()))
                throw ConfigError("config: unknown key '" + path(item.key()) + "'");
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

  private:
    const json* find(const std::string& key)
    {
        seen_.insert(key);
        if (!obj_ || !obj_->contains(key))
            return nullptr;
        return &obj_->at(key);
    }

    const json* obj_ = nullptr;
    std::string name_;
    std::set<std::string> seen_;
};

void apply_override(json& root, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("config: override '" + assignment + "' must look like section.key=value");
    const std::string key_path = assignment.substr(0, eq);
    const std::string raw_value = assignment.substr(eq + 1);

    json value = json::parse(raw_value, nullptr, false);
    if (value.is_discarded())
        value = raw_value;

    json* node = &root;
    std::size_t start = 0;
    while (true)
    {
        const auto dot = key_path.find('.', start);
        const std::string part = key_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw ConfigError("config: override key '" + key_path + "' has an empty component");
        if (!node->is_object())
            throw ConfigError("config: override key '" + key_path + "' does not name an object member");
        if (dot == std::string::npos)
        {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null())
            *node = json::object();
        start = dot + 1;
    }
}

SnrConvention convention_from(const std::string& s)
{
    if (s == "direct")
        return SnrConvention::direct;
    if (s == "per_eq6")
        return SnrConvention::per_eq6;
    throw ConfigError("config: snr.convention must be 'direct' or 'per_eq6', got '" + s + "'");
}

void check_pol(int v, const char* key)
{
    if (v < 1 || v > 3)
        throw ConfigError(std::string("config: ") + key + " must be 1, 2 or 3");
}

SweepConfig parse_sweep(Section& s)
{
    SweepConfig sw;
    sw.variable = sweep_variable_from_string(s.text("variable", "aperture"));
    sw.start = s.number("start", 0.0);
    sw.stop = s.number("stop", 0.0);
    sw.points = s.integer("points", 0);

    if (const json* f = s.raw("fractions"))
    {
        if (!f->is_array())
            throw ConfigError("config: key 'sweep.fractions' must be an array of numbers");
        for (const auto& v : *f)
        {
            if (!v.is_number())
                throw ConfigError("config: key 'sweep.fractions' must be an array of numbers");
            sw.fractions.push_back(v.get<double>());
        }
    }

    const std::string array = s.text("array", "ula");
    if (array == "ula")
        sw.array = ArrayKind::ula;
    else if (array == "upa")
        sw.array = ArrayKind::upa;
    else
        throw ConfigError("config: sweep.array must be 'ula' or 'upa'");
    sw.aspect_lx_over_ly = s.number("aspect_lx_over_ly", 1.0);

    if (const json* p = s.raw("pol_pairs"))
    {
        if (!p->is_array())
            throw ConfigError("config: key 'sweep.pol_pairs' must be an array of [t_pol, r_pol] pairs");
        for (const auto& v : *p)
        {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
                throw ConfigError("config: key 'sweep.pol_pairs' must be an array of [t_pol, r_pol] pairs");
            PolPair pp{v[0].get<int>(), v[1].get<int>()};
            check_pol(pp.t_pol, "sweep.pol_pairs t_pol");
            check_pol(pp.r_pol, "sweep.pol_pairs r_pol");
            sw.pol_pairs.push_back(pp);
        }
    }

    sw.aperture_over_d_start = s.number("aperture_over_d_start", sw.aperture_over_d_start);
    sw.aperture_over_d_stop = s.number("aperture_over_d_stop", sw.aperture_over_d_stop);
    sw.aperture_over_d_points = s.integer("aperture_over_d_points", sw.aperture_over_d_points);
    sw.rx_sep_start_lambda = s.number("rx_sep_start_lambda", sw.rx_sep_start_lambda);
    sw.rx_sep_stop_lambda = s.number("rx_sep_stop_lambda", sw.rx_sep_stop_lambda);
    sw.rx_sep_points = s.integer("rx_sep_points", sw.rx_sep_points);
    s.finish();

    if (sw.points < 1)
        throw ConfigError("config: sweep.points must be at least 1");
    if (sw.points > 1 && !(sw.stop > sw.start))
        throw ConfigError("config: sweep.stop must exceed sweep.start");
    if (sw.rx_sep_points < 1 || (sw.rx_sep_points > 1 && !(sw.rx_sep_stop_lambda > sw.rx_sep_start_lambda)))
        throw ConfigError("config: rx separation grid needs rx_sep_points >= 1 and stop > start");
    if (sw.aperture_over_d_points < 2 || !(sw.aperture_over_d_stop > sw.aperture_over_d_start))
        throw ConfigError("config: aperture_over_d grid needs at least 2 points and stop > start");
    if (!(sw.aspect_lx_over_ly > 0.0))
        throw ConfigError("config: sweep.aspect_lx_over_ly must be positive");
    for (double f : sw.fractions)
        if (!(f > 0.0) || f > 1.0)
            throw ConfigError("config: sweep.fractions must lie in (0, 1]");
    return sw;
}

} // namespace

std::string to_string(SnrConvention c)
{
    return c == SnrConvention::direct ? "direct" : "per_eq6";
}

ArraySpec ScenarioConfig::array() const
{
    ArraySpec a;
    a.delta_t = delta_t_m;
    a.m_half = m_half;
    a.k_half = k_half;
    a.t_pol = t_pol;
    return a;
}

Vec3 ScenarioConfig::rx_center() const
{
    if (rx_mode == RxMode::polar)
        return polar_to_cartesian({d_m, theta_deg * kPi / 180.0});
    return {x0_m, y0_m, z0_m};
}

RxSpec ScenarioConfig::rx() const
{
    return RxSpec::line(rx_center(), n_r, delta_r_in_lambda * lambda_m, r_pol, LineAxis::y);
}

double ScenarioConfig::reference_distance() const
{
    return rx_center().norm();
}

PhysicalConstants ScenarioConfig::constants() const
{
    PhysicalConstants c;
    c.lambda = lambda_m;
    c.xi = cplx(xi_abs, 0.0);
    return c;
}

SnrConfig ScenarioConfig::snr() const
{
    if (convention == SnrConvention::direct)
        return SnrConfig::from_db(snr_db);
    return SnrConfig::from_link_budget(std::pow(10.0, snr_db / 10.0), 1.0, t_pol, constants(), reference_distance());
}

std::string ScenarioConfig::canonical_json() const
{
    json j;
    j["constants"] = {{"lambda_m", lambda_m}, {"xi_abs", xi_abs}};
    j["tx"] = {{"delta_t_m", delta_t_m}, {"m_half", m_half}, {"k_half", k_half}, {"t_pol", t_pol}};
    j["rx"] = {{"mode", rx_mode == RxMode::polar ? "polar" : "cartesian"},
               {"d_m", d_m},
               {"theta_deg", theta_deg},
               {"x0_m", x0_m},
               {"y0_m", y0_m},
               {"z0_m", z0_m},
               {"n_r", n_r},
               {"delta_r_in_lambda", delta_r_in_lambda},
               {"r_pol", r_pol}};
    j["snr"] = {{"value_db", snr_db}, {"convention", to_string(convention)}};
    if (sweep)
    {
        const SweepConfig& s = *sweep;
        json pairs = json::array();
        for (const auto& p : s.pol_pairs)
            pairs.push_back({p.t_pol, p.r_pol});
        j["sweep"] = {{"variable", to_string(s.variable)},
                      {"start", s.start},
                      {"stop", s.stop},
                      {"points", s.points},
                      {"fractions", s.fractions},
                      {"array", s.array == ArrayKind::ula ? "ula" : "upa"},
                      {"aspect_lx_over_ly", s.aspect_lx_over_ly},
                      {"pol_pairs", pairs},
                      {"aperture_over_d_start", s.aperture_over_d_start},
                      {"aperture_over_d_stop", s.aperture_over_d_stop},
                      {"aperture_over_d_points", s.aperture_over_d_points},
                      {"rx_sep_start_lambda", s.rx_sep_start_lambda},
                      {"rx_sep_stop_lambda", s.rx_sep_stop_lambda},
                      {"rx_sep_points", s.rx_sep_points}};
    }
    return j.dump();
}

ScenarioConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                            const std::string& origin)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object())
        throw ConfigError(origin + ": top level must be a JSON object");
    for (const auto& o : overrides)
        apply_override(root, o);

    static const std::set<std::string> sections = {"constants", "tx", "rx", "snr", "sweep"};
    for (const auto& item : root.items())
        if (!sections.count(item.key()))
            throw ConfigError("config: unknown section '" + item.key() + "'");

    ScenarioConfig cfg;

    Section cst(root, "constants");
    cfg.lambda_m = cst.number("lambda_m", cfg.lambda_m);
    cfg.xi_abs = cst.number("xi_abs", cfg.xi_abs);
    cst.finish();

    Section tx(root, "tx");
    cfg.delta_t_m = tx.number("delta_t_m", cfg.delta_t_m);
    cfg.m_half = tx.integer("m_half", cfg.m_half);
    cfg.k_half = tx.integer("k_half", cfg.k_half);
    cfg.t_pol = tx.integer("t_pol", cfg.t_pol);
    tx.finish();

    Section rx(root, "rx");
    const std::string mode = rx.text("mode", "polar");
    if (mode == "polar")
        cfg.rx_mode = RxMode::polar;
    else if (mode == "cartesian")
        cfg.rx_mode = RxMode::cartesian;
    else
        throw ConfigError("config: rx.mode must be 'polar' or 'cartesian', got '" + mode + "'");
    cfg.d_m = rx.number("d_m", cfg.d_m);
    cfg.theta_deg = rx.number("theta_deg", cfg.theta_deg);
    cfg.x0_m = rx.number("x0_m", cfg.x0_m);
    cfg.y0_m = rx.number("y0_m", cfg.y0_m);
    cfg.z0_m = rx.number("z0_m", cfg.z0_m);
    cfg.n_r = rx.integer("n_r", cfg.n_r);
    cfg.delta_r_in_lambda = rx.number("delta_r_in_lambda", cfg.delta_r_in_lambda);
    cfg.r_pol = rx.integer("r_pol", cfg.r_pol);
    rx.finish();

    Section snr(root, "snr");
    cfg.snr_db = snr.number("value_db", cfg.snr_db);
    cfg.convention = convention_from(snr.text("convention", "direct"));
    snr.finish();

    Section sw(root, "sweep");
    if (sw.present())
        cfg.sweep = parse_sweep(sw);

    if (!(cfg.lambda_m > 0.0))
        throw ConfigError("config: constants.lambda_m must be positive");
    if (!(cfg.xi_abs >= 0.0))
        throw ConfigError("config: constants.xi_abs must be non-negative");
    check_pol(cfg.t_pol, "tx.t_pol");
    check_pol(cfg.r_pol, "rx.r_pol");
    if (cfg.n_r < 1)
        throw ConfigError("config: rx.n_r must be at least 1");
    if (cfg.rx_mode == RxMode::polar && (!(cfg.d_m > 0.0) || !(std::abs(cfg.theta_deg) < 90.0)))
        throw ConfigError("config: polar receiver needs d_m > 0 and |theta_deg| < 90");
    try
    {
        cfg.array().validate();
        cfg.rx().validate();
    }
    catch (const DomainError& e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides, path);
}

std::string scenario_hash(const ScenarioConfig& cfg)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : cfg.canonical_json())
    {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

} // namespace holo
