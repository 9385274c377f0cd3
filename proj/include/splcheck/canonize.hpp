// Canonization of traceability relations: reduce prov/req to a normal form
// (antichains, no unusable alternatives, Bottom for unprovidable features)
// while keeping the implements relation intact in the default mode.
#pragma once

#include "splcheck/model.hpp"

namespace splcheck {

// strict changes two things: rule 3 discards the subset instead of the
// superset, and rule 4 runs after rules 2/3 instead of before them.
enum class CanonMode { Default, Strict };

struct CanonStep {
    int rule;      // 1..4
    int feature;
    bool in_prov;            // rules 2/4 touch prov, rule 3 touches req
    bool to_bottom = false;  // rule 1
    IdSet removed;           // removed alternative (rules 2/3/4)
    int index = -1;          // position of the removed alternative
};

struct CanonizationTrace {
    std::vector<CanonStep> steps;
    bool empty() const { return steps.empty(); }
};

// prov(f) is an antichain for every feature (no alternative contains another);
// by symmetry the check also covers req.
bool is_non_redundant(const Traceability& t);

// Every prov alternative has a req alternative it can satisfy. Empty or
// undefined req is trivially satisfiable.
bool is_internally_consistent(const Traceability& t);

bool is_canonical(const Traceability& t);

Traceability canonize(const Traceability& t, CanonMode mode = CanonMode::Default,
                      CanonizationTrace* trace = nullptr);
SplModel canonize_model(const SplModel& m, CanonMode mode = CanonMode::Default,
                        CanonizationTrace* trace = nullptr);

// Replays a trace against an input relation; used to validate traces.
Traceability replay(const Traceability& t, const CanonizationTrace& trace);

// Checks that the implements verdicts agree between two models sharing the
// same universes: over every platform architecture, and exhaustively over
// all component subsets when the universe has at most exhaustive_cap members.
bool implements_preserved(const SplModel& before, const SplModel& after,
                          int exhaustive_cap = 8);

}  // namespace splcheck
