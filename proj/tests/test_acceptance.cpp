// Acceptance gate: ten end-to-end criteria, each printing a single
// "criterion N: PASS/FAIL" line in addition to the usual assertion output.
#include "splcheck/report.hpp"

#include "util.hpp"

#include <doctest.h>

#include <chrono>
#include <cstdio>

using namespace splcheck;
using namespace testutil;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int n;
    bool ok = true;
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void finish() {
        std::printf("criterion %d: %s\n", n, ok ? "PASS" : "FAIL");
        std::fflush(stdout);
        for (const auto& f : failures) MESSAGE("criterion failure: " << f);
        CHECK(ok);
    }
};

#define EXPECT(crit, e) (crit).expect((e), #e)

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0)
        .count();
}

SplModel ecpl() { return load_model(fixture("ecpl.spl")); }

std::vector<std::vector<bool>> expected_cells(
    const std::vector<std::string>& rows, const std::vector<std::string>& cols,
    const std::map<std::string, std::vector<std::string>>& truth) {
    std::vector<std::vector<bool>> cells;
    for (const auto& r : rows) {
        std::vector<bool> line;
        auto it = truth.find(r);
        for (const auto& c : cols) {
            bool v = false;
            if (it != truth.end())
                v = std::find(it->second.begin(), it->second.end(), c) !=
                    it->second.end();
            line.push_back(v);
        }
        cells.push_back(std::move(line));
    }
    return cells;
}

}  // namespace

TEST_CASE("criterion 1: implements matrix") {
    Criterion crit{1};
    SplModel m = ecpl();
    AnalyzeOptions opts;
    opts.engine = EngineChoice::Semantic;
    auto t0 = Clock::now();
    Table t = make_table(m, TableKind::Implements, opts);
    double elapsed = ms_since(t0);

    const std::map<std::string, std::vector<std::string>> truth = {
        {"Manual_Lock", {}},
        {"Power_Lock", {"A4", "A5", "A6", "A7", "A8", "A9"}},
        {"Door_Lock", {"A2", "A3", "A6", "A7", "A8", "A9"}},
        {"Door_Relock", {"A2", "A3", "A6", "A7", "A8", "A9"}},
        {"F_automatic", {"A4", "A6", "A8"}},
        {"F_manual", {"A5", "A7", "A9"}},
        {"F_speed", {"A2", "A6", "A7"}},
        {"Shift_out_of_Park", {"A3", "A8", "A9"}},
    };
    EXPECT(crit, t.rows.size() == 8);
    EXPECT(crit, t.cols.size() == 9);
    EXPECT(crit, t.cells == expected_cells(t.rows, t.cols, truth));
    EXPECT(crit, elapsed < 1000.0);
    crit.finish();
}

TEST_CASE("criterion 2: realizes and covers matrices") {
    Criterion crit{2};
    SplModel m = ecpl();
    AnalyzeOptions opts;
    opts.engine = EngineChoice::Semantic;
    opts.covers_mode = CoversEncoding::Definition;
    auto t0 = Clock::now();
    Table realizes_t = make_table(m, TableKind::Realizes, opts);
    Table covers_t = make_table(m, TableKind::Covers, opts);
    double elapsed = ms_since(t0);

    const std::map<std::string, std::vector<std::string>> realizes_truth = {
        {"S1", {"A4"}}, {"S2", {"A5"}}, {"S6", {"A6"}},
        {"S7", {"A7"}}, {"S8", {"A8"}},
    };
    const std::map<std::string, std::vector<std::string>> covers_truth = {
        {"S1", {"A4", "A6", "A8"}}, {"S2", {"A5", "A7"}}, {"S3", {"A6"}},
        {"S4", {"A7"}},             {"S5", {"A8"}},       {"S6", {"A6"}},
        {"S7", {"A7"}},             {"S8", {"A8"}},
    };
    EXPECT(crit, realizes_t.cells ==
                     expected_cells(realizes_t.rows, realizes_t.cols,
                                    realizes_truth));
    EXPECT(crit, covers_t.cells == expected_cells(covers_t.rows,
                                                  covers_t.cols, covers_truth));
    EXPECT(crit, elapsed < 1000.0);
    crit.finish();
}

TEST_CASE("criterion 3: product set") {
    Criterion crit{3};
    SplModel m = ecpl();
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& p : products(m))
        got.emplace_back(m.scope[std::size_t(p.spec)].name,
                         m.platform[std::size_t(p.arch)].name);
    const std::vector<std::pair<std::string, std::string>> want = {
        {"S1", "A4"}, {"S1", "A6"}, {"S1", "A8"}, {"S2", "A5"},
        {"S2", "A7"}, {"S3", "A6"}, {"S4", "A7"}, {"S5", "A8"},
        {"S6", "A6"}, {"S7", "A7"}, {"S8", "A8"},
    };
    EXPECT(crit, got == want);
    crit.finish();
}

TEST_CASE("criterion 4: whole-line property verdicts") {
    Criterion crit{4};
    SplModel m = ecpl();
    EXPECT(crit, is_complete(m));
    EXPECT(crit, !is_sound(m));

    auto set_of_specs = [&](bool (*pred)(const SplModel&, const IdSet&)) {
        std::vector<std::string> out;
        for (const auto& s : m.scope)
            if (pred(m, s.elems)) out.push_back(s.name);
        return out;
    };
    using V = std::vector<std::string>;
    EXPECT(crit, set_of_specs(is_existentially_explicit) ==
                     (V{"S1", "S2", "S6", "S7", "S8"}));
    EXPECT(crit,
           set_of_specs(is_universally_explicit) == (V{"S6", "S7", "S8"}));
    EXPECT(crit, set_of_specs(has_unique_implementation) ==
                     (V{"S3", "S4", "S5", "S6", "S7", "S8"}));
    EXPECT(crit, set_of_specs(is_extendable) ==
                     (V{"S1", "S2", "S3", "S4", "S5"}));

    V common_feats, dead_feats, common_comps, dead_comps;
    for (int f = 0; f < int(m.features.size()); ++f) {
        if (is_common(m, ElementKind::Feature, f))
            common_feats.push_back(m.features[std::size_t(f)]);
        if (is_dead(m, ElementKind::Feature, f))
            dead_feats.push_back(m.features[std::size_t(f)]);
    }
    for (int c = 0; c < int(m.components.size()); ++c) {
        if (is_common(m, ElementKind::Component, c))
            common_comps.push_back(m.components[std::size_t(c)]);
        if (is_dead(m, ElementKind::Component, c))
            dead_comps.push_back(m.components[std::size_t(c)]);
    }
    EXPECT(crit, common_feats == V{"Power_Lock"});
    EXPECT(crit, dead_feats == V{"Manual_Lock"});
    EXPECT(crit, common_comps ==
                     (V{"Door_Lock_Manager", "Unlock_Driver_Door",
                        "Unlock_all_doors", "Lock_all_doors", "C_Power_Lock",
                        "Courtesy_switch", "Key_signal", "Sill_door_signal"}));
    EXPECT(crit, dead_comps.empty());

    bool none_superfluous = true, none_redundant = true;
    for (int c = 0; c < int(m.components.size()); ++c) {
        if (is_superfluous(m, c)) none_superfluous = false;
        if (is_redundant(m, c)) none_redundant = false;
    }
    EXPECT(crit, none_superfluous);
    EXPECT(crit, none_redundant);
    EXPECT(crit, is_critical(m, m.component_index("C_automatic"),
                             m.feature_index("F_automatic")));

    auto scope_set = [&](const std::string& name) {
        for (const auto& s : m.scope)
            if (s.name == name) return s.elems;
        return IdSet{};
    };
    auto em4 = emerging(m, scope_set("S4"));
    EXPECT(crit, em4.size() == 1);
    EXPECT(crit, !em4.empty() &&
                     m.platform[std::size_t(em4[0].arch)].name == "A7" &&
                     em4[0].extra ==
                         IdSet{m.feature_index("Door_Relock")});
    EXPECT(crit, emerging(m, scope_set("S1")).size() == 3);
    crit.finish();
}

TEST_CASE("criterion 5: qbf engine on the illustrative line") {
    Criterion crit{5};
    SplModel m = load_model(fixture("illustrative.spl"));
    EncodingContext ctx(m);
    int f1 = m.feature_index("f1"), f2 = m.feature_index("f2");
    int f3 = m.feature_index("f3");
    auto comps = [&](const IdSet& s) {
        return prop_vector(s, m.components.size(), UniverseKind::Component);
    };
    auto feats = [&](const IdSet& s) {
        return prop_vector(s, m.features.size(), UniverseKind::Feature);
    };
    auto t0 = Clock::now();
    bool i1 = solve_formula(f_implements(ctx, comps({0, 1}), f1)).verdict;
    bool i2 = solve_formula(f_implements(ctx, comps({2}), f3)).verdict;
    bool r1 =
        solve_formula(f_realizes(ctx, comps({0, 1}), feats({f1, f2}))).verdict;
    bool r2 = solve_formula(f_realizes(ctx, comps({0, 1}), feats({f1}))).verdict;
    bool complete =
        solve_formula(encode_property(ctx, {.kind = PropertyKind::Complete}))
            .verdict;
    double elapsed = ms_since(t0);
    EXPECT(crit, i1 == true);
    EXPECT(crit, i2 == false);
    EXPECT(crit, r1 == true);
    EXPECT(crit, r2 == false);
    EXPECT(crit, complete == false);
    EXPECT(crit, elapsed < 1000.0);
    crit.finish();
}

TEST_CASE("criterion 6: qdimacs text format") {
    Criterion crit{6};
    // Worked example: forall x exists y ((x | !y) & (!x | y)).
    QbfFormula f{{{Quant::Forall, {1}}, {Quant::Exists, {2}}},
                 f_and({f_or({f_var(1), f_not(f_var(2))}),
                        f_or({f_not(f_var(1)), f_var(2)})})};
    std::string text = emit_qdimacs(tseitin(f), {"Illustration"});
    EXPECT(crit, text ==
                     "c Illustration\n"
                     "p cnf 2 2\n"
                     "a 1 0\n"
                     "e 2 0\n"
                     "1 -2 0\n"
                     "-1 2 0\n");

    std::mt19937 rng(20260826);
    bool all_roundtrip = true;
    for (int i = 0; i < 1000; ++i) {
        CnfInstance c = random_cnf(rng);
        if (!(parse_qdimacs(emit_qdimacs(c)) == c)) all_roundtrip = false;
    }
    EXPECT(crit, all_roundtrip);
    crit.finish();
}

TEST_CASE("criterion 7: engine agreement across 500 random product lines") {
    Criterion crit{7};
    std::mt19937 rng(73906);
    AnalyzeOptions opts;  // both engines, default canonization
    auto t0 = Clock::now();
    int disagreements = 0;
    for (int i = 0; i < 500; ++i) {
        SplModel m = random_model(rng, 6, 4, 5);
        AnalysisReport rep = run_analyses(m, opts);
        if (rep.any_disagreement()) {
            ++disagreements;
            MESSAGE("disagreement in model:\n" << serialize_model(rep.model));
        }
    }
    double elapsed = ms_since(t0);
    std::printf("criterion 7 timing: 500 models in %.0f ms\n", elapsed);
    EXPECT(crit, disagreements == 0);
    EXPECT(crit, elapsed < 300000.0);
    crit.finish();
}

TEST_CASE("criterion 8: solver versus truth table") {
    Criterion crit{8};
    std::mt19937 rng(40490);
    bool all_agree = true;
    for (int i = 0; i < 1000; ++i) {
        CnfInstance c = random_cnf(rng, 14);
        if (solve(c).verdict != eval_cnf(c)) {
            all_agree = false;
            MESSAGE("solver mismatch on:\n" << emit_qdimacs(c));
        }
    }
    EXPECT(crit, all_agree);
    crit.finish();
}

TEST_CASE("criterion 9: canonization laws") {
    Criterion crit{9};
    std::mt19937 rng(60601);
    bool idempotent = true;
    for (int i = 0; i < 500; ++i) {
        Traceability t =
            random_trace(rng, 1 + int(rng() % 6), 1 + int(rng() % 4));
        for (CanonMode mode : {CanonMode::Default, CanonMode::Strict}) {
            Traceability once = canonize(t, mode);
            if (!(canonize(once, mode) == once) || !is_canonical(once))
                idempotent = false;
        }
    }
    EXPECT(crit, idempotent);

    bool preserved = true;
    for (int i = 0; i < 200; ++i) {
        SplModel m = random_model(rng, 8, 4, 5);
        if (!implements_preserved(m, canonize_model(m, CanonMode::Default)))
            preserved = false;
    }
    EXPECT(crit, preserved);

    // Worked single-feature reduction, strict order: the trace must pass
    // through prov = {{c,d}} before reaching Bottom.
    Traceability t;
    t.prov.push_back({false, {{2, 3}, {2, 3, 4}}});
    t.req.push_back({false, {{3, 4}}});
    CanonizationTrace tr;
    Traceability out = canonize(t, CanonMode::Strict, &tr);
    EXPECT(crit, out.prov[0].bottom && out.req[0].bottom);
    bool saw_intermediate = false;
    Traceability cur = t;
    for (const auto& step : tr.steps) {
        CanonizationTrace one;
        one.steps.push_back(step);
        cur = replay(cur, one);
        if (!cur.prov[0].bottom &&
            cur.prov[0].sets == std::vector<IdSet>{{2, 3}})
            saw_intermediate = true;
    }
    EXPECT(crit, saw_intermediate);
    EXPECT(crit, replay(t, tr) == out);
    crit.finish();
}

TEST_CASE("criterion 10: consistency formula") {
    Criterion crit{10};
    SplModel m = ecpl();
    EXPECT(crit, is_canonical(m.trace));
    EncodingContext ctx(m);
    EXPECT(crit, solve_formula(tcf(ctx)).verdict == true);

    // prov = {{c,d}}, req = {{d,e}}: inconsistent, so the formula is false.
    SplModel bad;
    for (const char* c : {"a", "b", "c", "d", "e"})
        bad.components.push_back(c);
    bad.features.push_back("f");
    bad.trace.prov.push_back({false, {{2, 3}}});
    bad.trace.req.push_back({false, {{3, 4}}});
    EncodingContext bctx(bad);
    EXPECT(crit, solve_formula(tcf(bctx)).verdict == false);
    EXPECT(crit, is_internally_consistent(bad.trace) == false);

    // The formula coincides with internal consistency on arbitrary (also
    // non-canonical) relations; exercise that on random relations.
    std::mt19937 rng(8080);
    bool matches = true;
    for (int i = 0; i < 200; ++i) {
        int n = 1 + int(rng() % 5);
        SplModel r;
        for (int c = 0; c < n; ++c)
            r.components.push_back("c" + std::to_string(c));
        int nf = 1 + int(rng() % 3);
        for (int f = 0; f < nf; ++f)
            r.features.push_back("f" + std::to_string(f));
        r.trace = random_trace(rng, n, nf);
        EncodingContext rctx(r);
        if (solve_formula(tcf(rctx)).verdict !=
            is_internally_consistent(r.trace))
            matches = false;
    }
    EXPECT(crit, matches);
    crit.finish();
}
