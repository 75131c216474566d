#pragma once

// File formats: Potential, ScatteringData and EvolutionReport as JSON with
// complex numbers as [re, im] pairs; per-site reconstruction tables as CSV;
// gnuplot-style .dat series for plots.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "alist/evolution.hpp"
#include "alist/inverse.hpp"
#include "alist/lattice.hpp"
#include "alist/scattering.hpp"

namespace alist {

/// Input does not match a schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RunConfig outside its admissible range.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using json = nlohmann::json;

json to_json(const Potential& q);
/// Throws SchemaError on shape errors; InvariantViolation if some |q_n| >= 1.
Potential potential_from_json(const json& j);

json to_json(const ScatteringData& s);
/// Rebuilds the grid from N. c_inf is taken from the file.
ScatteringData scattering_from_json(const json& j);

json to_json(const EvolutionReport& r);
EvolutionReport evolution_report_from_json(const json& j);

/// Throws SchemaError if the file is unreadable or not JSON.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Columns n, re_q, im_q, residual, iterations.
void write_site_csv(std::ostream& os, const std::vector<SiteReconstruction>& sites);

/// "n |q_n|" lines.
void write_amplitude_dat(std::ostream& os, const Potential& q);
/// "theta |r| re_r im_r" lines.
void write_reflection_dat(std::ostream& os, const CircleFunction& r);

struct RunConfig {
    std::size_t grid_n = 512;
    double tol = 1e-12;
    int max_iter = 200;
    SiteWindow window{-16, 16};
    double dt = 1e-3;
    std::uint64_t seed = 20240101;
    SolverMethod solver = SolverMethod::conjugate_gradient;

    /// Throws ConfigError: grid_n even and >= 64, tol in (0, 1e-6],
    /// max_iter >= 1, window nonempty, dt > 0.
    void validate() const;

    SolverOptions solver_options() const { return {solver, tol, max_iter}; }
};

} // namespace alist
