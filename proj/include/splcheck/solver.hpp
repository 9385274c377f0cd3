// Decides prenex QBF instances by quantifier expansion in prefix order with
// unit propagation, innermost-existential pure-literal elimination, and a
// bounded memo keyed on the canonicalized clause set. Resource limits raise
// CapacityError instead of risking a wrong verdict.
#pragma once

#include "splcheck/qbf.hpp"

#include <cstdint>
#include <string>

namespace splcheck {

struct SolverLimits {
    // Bounds the branchable prefix variables: everything except a trailing
    // existential block (mostly Tseitin auxiliaries, resolved by propagation).
    int max_vars = 64;
    int timeout_ms = 30000;
    std::size_t memo_entries = std::size_t(1) << 20;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveResult {
    bool verdict = false;
    std::uint64_t branches = 0;   // variables expanded
    std::uint64_t visits = 0;     // solver nodes entered
    std::size_t memo_hits = 0;
    double elapsed_ms = 0.0;
    std::string engine = "internal";
};

SolveResult solve(const CnfInstance& c, const SolverLimits& limits = {});

// prenex + tseitin + solve; the capacity check runs against the pre-Tseitin
// prefix so auxiliaries never count toward the variable cap.
SolveResult solve_formula(const QbfFormula& f, const SolverLimits& limits = {});

struct ExternalSolver {
    std::string command;  // invoked as: command <qdimacs-file>
    int exit_true = 10;
    int exit_false = 20;
    bool verify = false;  // cross-check with the internal solver
};

struct ExternalDisagreement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SolveResult solve_external(const CnfInstance& c, const ExternalSolver& ext,
                           const SolverLimits& limits = {});

}  // namespace splcheck
