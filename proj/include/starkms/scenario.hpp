#pragma once

// Declarative scenario configs (JSON). Every field except "name" is optional:
//
// {
//   "name": "harmonic-kms",
//   "description": "...",
//   "phase_space": "R2n" | "T2",
//   "dof": 1,
//   "truncation": 4,
//   "hamiltonian": "H0",              // or "one_form": ["a1", "a2", ...]
//   "beta": ["1/2", "1"],             // exact rationals (strings or integers)
//   "t": ["0", "1"],
//   "probes": {"count": 10, "degree": 2, "weight": "-1/2", "range": 3, "seed": 7,
//              "poly_count": 50, "poly_degree": 4},
//   "nullspace": {"n_test": 2, "n_mu": 4, "rel_tol": 1e-8, "gap_threshold": 1000, "angle_tol": 1e-3},
//   "suites": ["moyal", "star_exp", ...]
// }

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "starkms/moyal.hpp"
#include "starkms/scalar.hpp"

namespace starkms
{

class config_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct ProbeSpec
{
    int count = 10;      // exp-polynomial probes (pairs use 2·count draws)
    int degree = 2;      // prefactor degree
    Rational weight = make_rational(-1, 2);
    long range = 3;
    std::uint64_t seed = 1;
    int poly_count = 20; // plain polynomial probes for the Moyal axioms
    int poly_degree = 4;
};

struct NullspaceSpec
{
    int n_test = 2;
    int n_mu = 4;
    double rel_tol = 1e-8;
    double gap_threshold = 1e3;
    double angle_tol = 1e-3;
};

struct Scenario
{
    std::string name;
    std::string description;
    PhaseSpace space = PhaseSpace::euclidean;
    std::size_t dof = 1;
    std::size_t truncation = 4;
    std::string hamiltonian;
    std::vector<std::string> one_form;
    std::vector<Rational> betas;
    std::vector<Rational> times;
    ProbeSpec probes;
    NullspaceSpec nullspace;
    std::vector<std::string> suites;
};

const std::vector<std::string> &known_suites(PhaseSpace space);

// `source` names the input in diagnostics. Throws config_error with line/field information.
Scenario parse_scenario(const std::string &text, const std::string &source = "<config>");
Scenario load_scenario(const std::filesystem::path &path);

// Directory holding the bundled scenarios (STARKMS_SCENARIO_DIR overrides the build-time default).
std::filesystem::path scenario_dir();
std::vector<std::filesystem::path> bundled_scenarios();
// A path to an existing file, or the name of a bundled scenario.
std::filesystem::path resolve_scenario(const std::string &name_or_path);

} // namespace starkms
