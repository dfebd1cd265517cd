// config.hpp — Config-file model: parsing, defaults, and the resolved-config
// echo written next to every run.
//
// Two interchangeable formats are accepted: an INI-style document with
// [qubit]/[bath]/[run]/[solver]/[output]/[fock] sections, and the JSON
// document the CLI itself writes as meta.json. Unknown keys are hard errors.

#pragma once

#include <string>
#include <vector>

#include "lzbath/fock.hpp"
#include "lzbath/sweep.hpp"
#include "lzbath/types.hpp"

namespace lzbath {

struct OutputConfig {
    std::string directory{"."};
    std::vector<std::string> formats{"csv"};
};

struct FockOptions {
    Index n_max{0}; // 0 = mode-count-dependent default
    Index verify_margin{8};
    double verify_tol{1e-4};
    bool verify{true};
};

struct FullConfig {
    Scenario scenario;
    OutputConfig output;
    FockOptions fock;
};

// Loads a run config (INI or JSON, detected from the content).
FullConfig load_config(const std::string& path);

// Sweep spec file: a run config plus an [axes] section (and optional
// [sweep] cap).
struct SweepFile {
    SweepSpec spec;
    OutputConfig output;
};
SweepFile load_sweep_spec(const std::string& path);

// Convergence spec file: a run config plus a [converge] section with
// kind ∈ {M, N, omega_max, dt} and the value list.
struct ConvergeFile {
    Scenario base;
    std::string kind;
    std::vector<double> values;
    OutputConfig output;
};
ConvergeFile load_converge_spec(const std::string& path);

// Fully resolved config (defaults filled in) as JSON text, including a
// "derived" block with the discretized-bath summary. Re-ingesting this text
// as a config reproduces the run.
std::string meta_json(const FullConfig& config);

// The built-in defaults as an annotated INI document.
std::string defaults_ini();

FockConfig make_fock_config(const FullConfig& config);

} // namespace lzbath
