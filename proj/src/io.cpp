#include "alist/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace alist {

namespace {

json complex_array(std::span<const cplx> v)
{
    json a = json::array();
    for (cplx c : v)
        a.push_back(json::array({c.real(), c.imag()}));
    return a;
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object())
        throw SchemaError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::vector<cplx> parse_complex_array(const json& a, const char* key)
{
    if (!a.is_array())
        throw SchemaError(std::string("field \"") + key + "\" must be an array of [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const json& p = a[k];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            std::ostringstream msg;
            msg << "field \"" << key << "\" entry " << k << " is not a [re, im] pair of numbers";
            throw SchemaError(msg.str());
        }
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

int parse_int(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_number_integer())
        throw SchemaError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

double parse_real(const json& v, const char* key)
{
    if (!v.is_number())
        throw SchemaError(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

std::optional<double> optional_real(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return std::nullopt;
    return parse_real(*it, key);
}

std::optional<Potential> optional_potential(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return std::nullopt;
    return potential_from_json(*it);
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

json to_json(const Potential& q)
{
    return {{"n_min", q.n_min()}, {"q", complex_array(q.values())}};
}

Potential potential_from_json(const json& j)
{
    const int n_min = parse_int(j, "n_min");
    return Potential(n_min, parse_complex_array(field(j, "q"), "q"));
}

json to_json(const ScatteringData& s)
{
    return {{"N", s.grid->size()},
            {"a", complex_array(s.a.samples())},
            {"b", complex_array(s.b.samples())},
            {"r", complex_array(s.r.samples())},
            {"c_inf", s.c_inf}};
}

ScatteringData scattering_from_json(const json& j)
{
    const int n = parse_int(j, "N");
    if (n < 4 || n % 2 != 0)
        throw SchemaError("field \"N\" must be an even integer >= 4");
    ScatteringData s;
    s.grid = make_grid(static_cast<std::size_t>(n));
    auto column = [&](const char* key) {
        std::vector<cplx> v = parse_complex_array(field(j, key), key);
        if (v.size() != static_cast<std::size_t>(n)) {
            std::ostringstream msg;
            msg << "field \"" << key << "\" has " << v.size() << " samples, expected N = " << n;
            throw SchemaError(msg.str());
        }
        return CircleFunction(s.grid, std::move(v));
    };
    s.a = column("a");
    s.b = column("b");
    s.r = column("r");
    s.c_inf = parse_real(field(j, "c_inf"), "c_inf");
    return s;
}

json to_json(const EvolutionReport& r)
{
    json j;
    j["t"] = r.t;
    j["q_ist"] = r.q_ist ? to_json(*r.q_ist) : json(nullptr);
    j["q_rk4"] = r.q_rk4 ? to_json(*r.q_rk4) : json(nullptr);
    j["sup_error"] = nullable(r.sup_error);
    j["l2_error"] = nullable(r.l2_error);
    j["c_inf_drift"] = nullable(r.c_inf_drift);
    j["rk4_log_c_drift"] = nullable(r.rk4_log_c_drift);
    j["ist_edge_amplitude"] = nullable(r.ist_edge_amplitude);
    j["rk4_edge_amplitude"] = nullable(r.rk4_edge_amplitude);
    j["oracle_window_breach"] = r.oracle_window_breach;
    j["warnings"] = r.warnings;
    return j;
}

EvolutionReport evolution_report_from_json(const json& j)
{
    EvolutionReport r;
    r.t = parse_real(field(j, "t"), "t");
    r.q_ist = optional_potential(j, "q_ist");
    r.q_rk4 = optional_potential(j, "q_rk4");
    r.sup_error = optional_real(j, "sup_error");
    r.l2_error = optional_real(j, "l2_error");
    r.c_inf_drift = optional_real(j, "c_inf_drift");
    r.rk4_log_c_drift = optional_real(j, "rk4_log_c_drift");
    r.ist_edge_amplitude = optional_real(j, "ist_edge_amplitude");
    r.rk4_edge_amplitude = optional_real(j, "rk4_edge_amplitude");
    if (const auto it = j.find("oracle_window_breach"); it != j.end()) {
        if (!it->is_boolean())
            throw SchemaError("field \"oracle_window_breach\" must be a boolean");
        r.oracle_window_breach = it->get<bool>();
    }
    if (const auto it = j.find("warnings"); it != j.end()) {
        if (!it->is_array())
            throw SchemaError("field \"warnings\" must be an array of strings");
        for (const json& w : *it) {
            if (!w.is_string())
                throw SchemaError("field \"warnings\" must be an array of strings");
            r.warnings.push_back(w.get<std::string>());
        }
    }
    return r;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_site_csv(std::ostream& os, const std::vector<SiteReconstruction>& sites)
{
    os << "n,re_q,im_q,residual,iterations\n";
    os << std::setprecision(17);
    for (const auto& s : sites)
        os << s.n << ',' << s.q.real() << ',' << s.q.imag() << ',' << s.residual << ',' << s.iterations << '\n';
}

void write_amplitude_dat(std::ostream& os, const Potential& q)
{
    os << "# n |q_n|\n" << std::setprecision(17);
    for (int n = q.n_min(); n <= q.n_max(); ++n)
        os << n << ' ' << std::abs(q(n)) << '\n';
}

void write_reflection_dat(std::ostream& os, const CircleFunction& r)
{
    os << "# theta |r| re_r im_r\n" << std::setprecision(17);
    for (std::size_t j = 0; j < r.size(); ++j)
        os << r.grid().theta(j) << ' ' << std::abs(r[j]) << ' ' << r[j].real() << ' ' << r[j].imag() << '\n';
}

void RunConfig::validate() const
{
    if (grid_n < 64 || grid_n % 2 != 0)
        throw ConfigError("grid size must be even and at least 64");
    if (!(tol > 0.0 && tol <= 1e-6))
        throw ConfigError("tolerance must lie in (0, 1e-6]");
    if (max_iter < 1)
        throw ConfigError("max-iter must be at least 1");
    if (window.lo > window.hi)
        throw ConfigError("window must be nonempty (LO <= HI)");
    if (!(dt > 0.0))
        throw ConfigError("dt must be positive");
}

} // namespace alist
