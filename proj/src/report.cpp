#include "splcheck/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace splcheck {

bool qbf_verdict(const SplModel& m, const PropertyQuery& q,
                 const AnalyzeOptions& opts) {
    EncodingContext ctx(m, opts.covers_mode);
    QbfFormula f = encode_property(ctx, q);
    QbfFormula p = prenex(f);
    if (opts.external) {
        CnfInstance inst = tseitin(p);
        return solve_external(inst, *opts.external, opts.limits).verdict;
    }
    return solve_formula(p, opts.limits).verdict;
}

const ReportEntry* AnalysisReport::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

bool AnalysisReport::any_disagreement() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const ReportEntry& e) { return e.disagree(); });
}

namespace {

struct Runner {
    const SplModel& m;
    const AnalyzeOptions& opts;
    AnalysisReport& rep;

    bool want_sem() const { return opts.engine != EngineChoice::Qbf; }
    bool want_qbf() const { return opts.engine != EngineChoice::Semantic; }

    void add(const std::string& key, const PropertyQuery& q,
             bool sem_verdict, const std::string& detail = "") {
        ReportEntry e;
        e.key = key;
        e.detail = detail;
        if (want_sem()) e.semantic = sem_verdict;
        if (want_qbf()) e.qbf = qbf_verdict(m, q, opts);
        rep.entries.push_back(std::move(e));
    }
};

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep = " ") {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out.empty() ? "-" : out;
}

}  // namespace

AnalysisReport run_analyses(const SplModel& input, const AnalyzeOptions& opts) {
    AnalysisReport rep;
    rep.model = opts.canonize
                    ? canonize_model(input, opts.canon_mode, &rep.trace)
                    : input;
    const SplModel& m = rep.model;
    Runner run{m, opts, rep};

    // Traceability-level checks.
    {
        ReportEntry e;
        e.key = "tcf";
        if (run.want_sem()) e.semantic = is_internally_consistent(m.trace);
        if (run.want_qbf())
            e.qbf = qbf_verdict(m, {.kind = PropertyKind::Tcf}, opts);
        e.detail = is_canonical(m.trace) ? "canonical" : "not canonical";
        rep.entries.push_back(std::move(e));
    }

    run.add("complete", {.kind = PropertyKind::Complete}, is_complete(m));
    run.add("sound", {.kind = PropertyKind::Sound}, is_sound(m));

    // Products and per-specification analyses.
    auto prods = products(m);
    {
        ReportEntry e;
        e.key = "products";
        std::vector<std::string> names;
        for (const auto& p : prods)
            names.push_back("<" + m.scope[std::size_t(p.spec)].name + "," +
                            m.platform[std::size_t(p.arch)].name + ">");
        e.detail = std::to_string(prods.size()) + ": " + join(names);
        if (run.want_sem()) e.semantic = !prods.empty();
        rep.entries.push_back(std::move(e));
        if (prods.empty())
            rep.warnings.push_back(
                "no products: element classification is vacuous (everything "
                "is dead)");
    }

    for (const auto& s : m.scope) {
        const IdSet& F = s.elems;
        std::vector<std::string> covered_by;
        for (const auto& a : m.platform)
            if (covers(m, a.elems, F)) covered_by.push_back(a.name);
        run.add("existentially-explicit." + s.name,
                {.kind = PropertyKind::ExistentiallyExplicit, .feature_set = F},
                is_existentially_explicit(m, F));
        run.add("universally-explicit." + s.name,
                {.kind = PropertyKind::UniversallyExplicit, .feature_set = F},
                is_universally_explicit(m, F));
        run.add("unique-implementation." + s.name,
                {.kind = PropertyKind::UniqueImplementation, .feature_set = F},
                has_unique_implementation(m, F),
                "covered by: " + join(covered_by));
        run.add("extendable." + s.name,
                {.kind = PropertyKind::Extendable, .feature_set = F},
                is_extendable(m, F));

        ReportEntry e;
        e.key = "emerging." + s.name;
        std::vector<std::string> parts;
        bool any = false;
        for (const auto& em : emerging(m, F)) {
            std::vector<std::string> feats;
            for (int f : em.extra) feats.push_back(m.features[std::size_t(f)]);
            if (!em.extra.empty()) any = true;
            parts.push_back(m.platform[std::size_t(em.arch)].name + ":{" +
                            join(feats, ",") + "}");
        }
        if (run.want_sem()) e.semantic = any;
        e.detail = join(parts);
        rep.entries.push_back(std::move(e));
    }

    // Element classification.
    auto classify = [&](ElementKind k, int idx, const std::string& name) {
        PropertyQuery q{.element_kind = k, .element = idx};
        q.kind = PropertyKind::Common;
        run.add("common." + name, q, is_common(m, k, idx));
        q.kind = PropertyKind::Live;
        run.add("live." + name, q, is_live(m, k, idx));
        q.kind = PropertyKind::Dead;
        auto st = element_status(m, k, idx);
        std::string detail =
            st.status == Status::Common ? "status: common"
            : st.status == Status::Live ? "status: live"
                                        : "status: dead";
        if (st.vacuous) detail += " (vacuous)";
        run.add("dead." + name, q, is_dead(m, k, idx), detail);
    };
    for (int f = 0; f < int(m.features.size()); ++f)
        classify(ElementKind::Feature, f, m.features[std::size_t(f)]);
    for (int c = 0; c < int(m.components.size()); ++c)
        classify(ElementKind::Component, c, m.components[std::size_t(c)]);

    // Per-component analyses.
    for (int c = 0; c < int(m.components.size()); ++c) {
        const std::string& name = m.components[std::size_t(c)];
        run.add("superfluous." + name,
                {.kind = PropertyKind::Superfluous, .component = c},
                is_superfluous(m, c));
        run.add("redundant." + name,
                {.kind = PropertyKind::Redundant, .component = c},
                is_redundant(m, c));
    }

    // Criticality, one entry per (component, feature) pair.
    for (int c = 0; c < int(m.components.size()); ++c)
        for (int f = 0; f < int(m.features.size()); ++f)
            run.add("critical." + m.components[std::size_t(c)] + "." +
                        m.features[std::size_t(f)],
                    {.kind = PropertyKind::Critical, .component = c,
                     .feature = f},
                    is_critical(m, c, f));

    return rep;
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "canonization: "
        << (r.trace.empty() ? "no changes"
                            : std::to_string(r.trace.steps.size()) + " steps")
        << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    for (const auto& e : r.entries) {
        out << e.key << ": ";
        if (e.disagree())
            out << "DISAGREEMENT semantic="
                << (*e.semantic ? "true" : "false")
                << " qbf=" << (*e.qbf ? "true" : "false");
        else if (e.semantic || e.qbf)
            out << (e.verdict() ? "true" : "false");
        else
            out << "-";
        if (!e.detail.empty()) out << "  (" << e.detail << ")";
        out << "\n";
    }
    int disagreements = 0;
    for (const auto& e : r.entries)
        if (e.disagree()) ++disagreements;
    out << "disagreements: " << disagreements << "\n";
    return out.str();
}

std::string render_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["canonization_steps"] = r.trace.steps.size();
    j["warnings"] = r.warnings;
    nlohmann::json entries = nlohmann::json::object();
    nlohmann::json verdicts = nlohmann::json::object();
    nlohmann::json disagreements = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json je;
        if (e.semantic) je["semantic"] = *e.semantic;
        if (e.qbf) je["qbf"] = *e.qbf;
        if (!e.detail.empty()) je["detail"] = e.detail;
        entries[e.key] = je;
        if (e.semantic || e.qbf) verdicts[e.key] = e.verdict();
        if (e.disagree()) disagreements.push_back(e.key);
    }
    j["entries"] = entries;
    j["verdicts"] = verdicts;
    j["disagreements"] = disagreements;
    return j.dump(2) + "\n";
}

Table make_table(const SplModel& m, TableKind kind,
                 const AnalyzeOptions& opts) {
    Table t;
    for (const auto& a : m.platform) t.cols.push_back(a.name);
    bool by_feature = kind == TableKind::Implements;
    t.corner = kind == TableKind::Implements ? "implements"
               : kind == TableKind::Realizes ? "realizes"
                                             : "covers";
    if (by_feature)
        t.rows = m.features;
    else
        for (const auto& s : m.scope) t.rows.push_back(s.name);

    auto sem_cell = [&](std::size_t row, std::size_t col) {
        const IdSet& C = m.platform[col].elems;
        if (kind == TableKind::Implements)
            return implements(m, C, int(row));
        const IdSet& F = m.scope[row].elems;
        return kind == TableKind::Realizes ? realizes(m, C, F)
                                           : covers(m, C, F);
    };
    auto qbf_cell = [&](std::size_t row, std::size_t col) {
        PropertyQuery q;
        q.component_set = m.platform[col].elems;
        if (kind == TableKind::Implements) {
            q.kind = PropertyKind::Implements;
            q.feature = int(row);
        } else {
            q.kind = kind == TableKind::Realizes ? PropertyKind::Realizes
                                                 : PropertyKind::Covers;
            q.feature_set = m.scope[row].elems;
        }
        return qbf_verdict(m, q, opts);
    };

    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<bool> line;
        for (std::size_t c = 0; c < t.cols.size(); ++c) {
            bool v;
            if (opts.engine == EngineChoice::Semantic) {
                v = sem_cell(r, c);
            } else if (opts.engine == EngineChoice::Qbf) {
                v = qbf_cell(r, c);
            } else {
                v = sem_cell(r, c);
                if (qbf_cell(r, c) != v)
                    t.disagreements.push_back(t.rows[r] + "/" + t.cols[c]);
            }
            line.push_back(v);
        }
        t.cells.push_back(std::move(line));
    }
    return t;
}

std::string render_table(const Table& t) {
    std::size_t label_w = t.corner.size();
    for (const auto& r : t.rows) label_w = std::max(label_w, r.size());
    std::ostringstream out;
    auto pad = [&](const std::string& s, std::size_t w) {
        out << s << std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    pad(t.corner, label_w);
    for (const auto& c : t.cols) {
        out << "  ";
        pad(c, c.size());
    }
    out << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::ostringstream line;
        line << t.rows[r]
             << std::string(label_w - t.rows[r].size(), ' ');
        for (std::size_t c = 0; c < t.cols.size(); ++c) {
            line << "  ";
            std::string cell = t.cells[r][c] ? "1" : "";
            cell.resize(t.cols[c].size(), ' ');
            line << cell;
        }
        std::string s = line.str();
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << "\n";
    }
    return out.str();
}

}  // namespace splcheck
