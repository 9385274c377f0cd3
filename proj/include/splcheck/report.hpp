// Runs whole-model analyses through one or both engines, collects verdicts
// and witnesses, and renders text/JSON reports and relation tables.
#pragma once

#include "splcheck/canonize.hpp"
#include "splcheck/encoder.hpp"
#include "splcheck/semantic.hpp"
#include "splcheck/solver.hpp"

#include <optional>

namespace splcheck {

enum class EngineChoice { Semantic, Qbf, Both };

struct AnalyzeOptions {
    EngineChoice engine = EngineChoice::Both;
    bool canonize = true;
    CanonMode canon_mode = CanonMode::Default;
    CoversEncoding covers_mode = CoversEncoding::Definition;
    SolverLimits limits{.max_vars = 0};  // uncapped unless the CLI says so
    std::optional<ExternalSolver> external;
};

// Decides one query through the QBF pipeline (encode, prenex, tseitin,
// solve); `m` must already be in the shape the caller wants analyzed.
bool qbf_verdict(const SplModel& m, const PropertyQuery& q,
                 const AnalyzeOptions& opts);

struct ReportEntry {
    std::string key;
    std::optional<bool> semantic;
    std::optional<bool> qbf;
    std::string detail;

    bool disagree() const {
        return semantic && qbf && *semantic != *qbf;
    }
    bool verdict() const { return semantic ? *semantic : qbf.value(); }
};

struct AnalysisReport {
    SplModel model;  // as analyzed (canonized unless disabled)
    CanonizationTrace trace;
    std::vector<ReportEntry> entries;
    std::vector<std::string> warnings;

    const ReportEntry* find(const std::string& key) const;
    bool any_disagreement() const;
};

AnalysisReport run_analyses(const SplModel& input, const AnalyzeOptions& opts);

std::string render_text(const AnalysisReport& r);
std::string render_json(const AnalysisReport& r);

enum class TableKind { Implements, Realizes, Covers };

struct Table {
    std::string corner;  // top-left header
    std::vector<std::string> rows, cols;
    std::vector<std::vector<bool>> cells;
    std::vector<std::string> disagreements;  // "row/col" keys, engine==Both
};

Table make_table(const SplModel& m, TableKind kind, const AnalyzeOptions& opts);

// Fixed-width grid; cells show "1" or stay blank.
std::string render_table(const Table& t);

}  // namespace splcheck
