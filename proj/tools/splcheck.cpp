// splcheck: analyze software product lines with provides/requires
// traceability, both by direct semantic evaluation and through a QBF
// pipeline (encode, prenex, Tseitin, QDIMACS, solve).

#include <CLI11.hpp>

#include "splcheck/report.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace splcheck;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_DISAGREE = 1;
constexpr int EXIT_INPUT = 2;

struct CommonOpts {
    std::string engine = "both";
    bool no_canonize = false;
    bool strict = false;
    std::string covers_mode = "definition";
    std::string solver_cmd;
    bool verify = false;
    int timeout_ms = 30000;
    int max_qbf_vars = 0;  // 0: uncapped for whole-model analyses
    std::string format = "text";
    std::string output;
};

void add_engine_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--engine", o.engine, "Engine: semantic, qbf, or both")
        ->check(CLI::IsMember({"semantic", "qbf", "both"}));
    cmd->add_flag("--no-canonize", o.no_canonize,
                  "Analyze the raw traceability relation");
    cmd->add_flag("--strict-canonization", o.strict,
                  "Literal canonization rules (rule 3 drops the subset, "
                  "rule 4 runs last)");
    cmd->add_option("--covers-mode", o.covers_mode,
                    "Covers encoding: lemma (subset only) or definition "
                    "(adds the scope membership of the provided set)")
        ->check(CLI::IsMember({"lemma", "definition"}));
    cmd->add_option("--solver-cmd", o.solver_cmd,
                    "External QBF solver command (gets a QDIMACS path; exit "
                    "10 = true, 20 = false)");
    cmd->add_flag("--verify", o.verify,
                  "Cross-check the external solver against the internal one");
    cmd->add_option("--timeout-ms", o.timeout_ms, "Solver timeout");
    cmd->add_option("--max-qbf-vars", o.max_qbf_vars,
                    "Cap on branchable prefix variables (0 = uncapped)");
}

AnalyzeOptions to_options(const CommonOpts& o) {
    AnalyzeOptions opts;
    opts.engine = o.engine == "semantic" ? EngineChoice::Semantic
                  : o.engine == "qbf"    ? EngineChoice::Qbf
                                         : EngineChoice::Both;
    opts.canonize = !o.no_canonize;
    opts.canon_mode =
        o.strict ? CanonMode::Strict : CanonMode::Default;
    opts.covers_mode = o.covers_mode == "lemma" ? CoversEncoding::Lemma
                                                : CoversEncoding::Definition;
    opts.limits.timeout_ms = o.timeout_ms;
    opts.limits.max_vars = o.max_qbf_vars;
    if (!o.solver_cmd.empty())
        opts.external = ExternalSolver{o.solver_cmd, 10, 20, o.verify};
    return opts;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int lookup_or_throw(int idx, const std::string& what, const std::string& name) {
    if (idx < 0) throw std::runtime_error("unknown " + what + " '" + name + "'");
    return idx;
}

const NamedSet& named(const std::vector<NamedSet>& sets,
                      const std::string& what, const std::string& name) {
    for (const auto& s : sets)
        if (s.name == name) return s;
    throw std::runtime_error("unknown " + what + " '" + name + "'");
}

struct QuerySpec {
    PropertyQuery q;
    std::function<bool(const SplModel&)> sem;
};

QuerySpec build_query(const SplModel& m, const std::string& prop,
                      const std::vector<std::string>& args) {
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw std::runtime_error("property '" + prop + "' takes " +
                                     std::to_string(k) + " argument(s)");
    };
    auto element = [&](const std::string& name, PropertyQuery& q) {
        int f = m.feature_index(name);
        if (f >= 0) {
            q.element_kind = ElementKind::Feature;
            q.element = f;
            return;
        }
        q.element_kind = ElementKind::Component;
        q.element = lookup_or_throw(m.component_index(name), "element", name);
    };

    QuerySpec s;
    if (prop == "complete") {
        need(0);
        s.q.kind = PropertyKind::Complete;
        s.sem = [](const SplModel& mm) { return is_complete(mm); };
    } else if (prop == "sound") {
        need(0);
        s.q.kind = PropertyKind::Sound;
        s.sem = [](const SplModel& mm) { return is_sound(mm); };
    } else if (prop == "tcf") {
        need(0);
        s.q.kind = PropertyKind::Tcf;
        s.sem = [](const SplModel& mm) {
            return is_internally_consistent(mm.trace);
        };
    } else if (prop == "existentially-explicit" ||
               prop == "universally-explicit" ||
               prop == "unique-implementation" || prop == "extendable") {
        need(1);
        IdSet F = named(m.scope, "specification", args[0]).elems;
        s.q.feature_set = F;
        if (prop == "existentially-explicit") {
            s.q.kind = PropertyKind::ExistentiallyExplicit;
            s.sem = [F](const SplModel& mm) {
                return is_existentially_explicit(mm, F);
            };
        } else if (prop == "universally-explicit") {
            s.q.kind = PropertyKind::UniversallyExplicit;
            s.sem = [F](const SplModel& mm) {
                return is_universally_explicit(mm, F);
            };
        } else if (prop == "unique-implementation") {
            s.q.kind = PropertyKind::UniqueImplementation;
            s.sem = [F](const SplModel& mm) {
                return has_unique_implementation(mm, F);
            };
        } else {
            s.q.kind = PropertyKind::Extendable;
            s.sem = [F](const SplModel& mm) { return is_extendable(mm, F); };
        }
    } else if (prop == "extends") {
        need(2);
        s.q.kind = PropertyKind::Extends;
        s.q.feature_set = named(m.scope, "specification", args[0]).elems;
        s.q.feature_set2 = named(m.scope, "specification", args[1]).elems;
        IdSet a = s.q.feature_set, b = s.q.feature_set2;
        s.sem = [a, b](const SplModel&) { return extends(a, b); };
    } else if (prop == "common" || prop == "live" || prop == "dead") {
        need(1);
        element(args[0], s.q);
        ElementKind k = s.q.element_kind;
        int e = s.q.element;
        if (prop == "common") {
            s.q.kind = PropertyKind::Common;
            s.sem = [k, e](const SplModel& mm) { return is_common(mm, k, e); };
        } else if (prop == "live") {
            s.q.kind = PropertyKind::Live;
            s.sem = [k, e](const SplModel& mm) { return is_live(mm, k, e); };
        } else {
            s.q.kind = PropertyKind::Dead;
            s.sem = [k, e](const SplModel& mm) { return is_dead(mm, k, e); };
        }
    } else if (prop == "superfluous" || prop == "redundant") {
        need(1);
        int c = lookup_or_throw(m.component_index(args[0]), "component",
                                args[0]);
        s.q.component = c;
        if (prop == "superfluous") {
            s.q.kind = PropertyKind::Superfluous;
            s.sem = [c](const SplModel& mm) { return is_superfluous(mm, c); };
        } else {
            s.q.kind = PropertyKind::Redundant;
            s.sem = [c](const SplModel& mm) { return is_redundant(mm, c); };
        }
    } else if (prop == "critical") {
        need(2);
        int c = lookup_or_throw(m.component_index(args[0]), "component",
                                args[0]);
        int f = lookup_or_throw(m.feature_index(args[1]), "feature", args[1]);
        s.q.kind = PropertyKind::Critical;
        s.q.component = c;
        s.q.feature = f;
        s.sem = [c, f](const SplModel& mm) { return is_critical(mm, c, f); };
    } else if (prop == "implements") {
        need(2);
        IdSet C = named(m.platform, "architecture", args[0]).elems;
        int f = lookup_or_throw(m.feature_index(args[1]), "feature", args[1]);
        s.q.kind = PropertyKind::Implements;
        s.q.component_set = C;
        s.q.feature = f;
        s.sem = [C, f](const SplModel& mm) { return implements(mm, C, f); };
    } else if (prop == "covers" || prop == "realizes") {
        need(2);
        IdSet C = named(m.platform, "architecture", args[0]).elems;
        IdSet F = named(m.scope, "specification", args[1]).elems;
        s.q.component_set = C;
        s.q.feature_set = F;
        if (prop == "covers") {
            s.q.kind = PropertyKind::Covers;
            s.sem = [C, F](const SplModel& mm) { return covers(mm, C, F); };
        } else {
            s.q.kind = PropertyKind::Realizes;
            s.sem = [C, F](const SplModel& mm) { return realizes(mm, C, F); };
        }
    } else {
        throw std::runtime_error("unknown property '" + prop + "'");
    }
    return s;
}

std::string trace_text(const SplModel& m, const CanonizationTrace& trace) {
    std::ostringstream out;
    for (const auto& st : trace.steps) {
        const std::string& f = m.features[std::size_t(st.feature)];
        if (st.rule == 1) {
            out << "rule 1: prov(" << f << "), req(" << f << ") <- Bottom\n";
            continue;
        }
        out << "rule " << st.rule << ": " << (st.in_prov ? "prov" : "req")
            << "(" << f << ") removed {";
        bool first = true;
        for (int c : st.removed) {
            if (!first) out << ", ";
            out << m.components[std::size_t(c)];
            first = false;
        }
        out << "}\n";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product-line traceability checker"};
    app.require_subcommand(1);

    std::string model_path, table_kind, property, qdimacs_path;
    std::vector<std::string> prop_args;
    CommonOpts opts;
    bool show_trace = false, explain = false, qdimacs_exit = false;

    auto* analyze = app.add_subcommand("analyze", "Run every analysis");
    analyze->add_option("model", model_path)->required();
    add_engine_flags(analyze, opts);
    analyze->add_option("--format", opts.format)
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("-o,--output", opts.output);
    analyze->add_flag("--trace", show_trace, "Print canonization steps");

    auto* canonize_cmd =
        app.add_subcommand("canonize", "Print the canonical model");
    canonize_cmd->add_option("model", model_path)->required();
    canonize_cmd->add_flag("--strict-canonization", opts.strict);
    canonize_cmd->add_flag("--trace", show_trace);
    canonize_cmd->add_option("-o,--output", opts.output);

    auto* table = app.add_subcommand("table", "Relation matrix");
    table->add_option("model", model_path)->required();
    table->add_option("kind", table_kind)
        ->required()
        ->check(CLI::IsMember({"implements", "realizes", "covers"}));
    add_engine_flags(table, opts);
    table->add_option("-o,--output", opts.output);

    auto* query = app.add_subcommand("query", "Decide a single property");
    query->add_option("model", model_path)->required();
    query->add_option("property", property)->required();
    query->add_option("args", prop_args);
    add_engine_flags(query, opts);
    query->add_flag("--explain", explain, "Print supporting details");

    auto* encode = app.add_subcommand("encode", "Emit a property as QDIMACS");
    encode->add_option("model", model_path)->required();
    encode->add_option("--property", property)->required();
    encode->add_option("--args", prop_args);
    encode->add_flag("--no-canonize", opts.no_canonize);
    encode->add_flag("--strict-canonization", opts.strict);
    encode->add_option("--covers-mode", opts.covers_mode)
        ->check(CLI::IsMember({"lemma", "definition"}));
    encode->add_option("-o,--output", opts.output);

    auto* solve_cmd = app.add_subcommand("solve", "Decide a QDIMACS instance");
    solve_cmd->add_option("file", qdimacs_path)->required();
    solve_cmd->add_option("--solver-cmd", opts.solver_cmd);
    solve_cmd->add_flag("--verify", opts.verify);
    solve_cmd->add_option("--timeout-ms", opts.timeout_ms);
    solve_cmd->add_option("--max-qbf-vars", opts.max_qbf_vars);
    solve_cmd->add_flag(
        "--qdimacs-exit", qdimacs_exit,
        "Exit 10 when true, 20 when false (external-solver protocol)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) {
            SplModel m = load_model(model_path);
            AnalyzeOptions ao = to_options(opts);
            AnalysisReport rep = run_analyses(m, ao);
            std::string text = opts.format == "json" ? render_json(rep)
                                                     : render_text(rep);
            if (show_trace && opts.format != "json")
                text = trace_text(rep.model, rep.trace) + text;
            write_out(opts.output, text);
            return rep.any_disagreement() ? EXIT_DISAGREE : EXIT_OK;
        }

        if (app.got_subcommand(canonize_cmd)) {
            SplModel m = load_model(model_path);
            CanonizationTrace trace;
            SplModel canon = canonize_model(
                m,
                opts.strict ? CanonMode::Strict : CanonMode::Default,
                &trace);
            std::string text = serialize_model(canon);
            if (show_trace) text = trace_text(m, trace) + text;
            write_out(opts.output, text);
            return EXIT_OK;
        }

        if (app.got_subcommand(table)) {
            SplModel m = load_model(model_path);
            AnalyzeOptions ao = to_options(opts);
            SplModel canon = ao.canonize
                                 ? canonize_model(m, ao.canon_mode)
                                 : m;
            TableKind kind = table_kind == "implements" ? TableKind::Implements
                             : table_kind == "realizes" ? TableKind::Realizes
                                                        : TableKind::Covers;
            Table t = make_table(canon, kind, ao);
            std::string text = render_table(t);
            for (const auto& d : t.disagreements)
                text += "DISAGREEMENT: " + d + "\n";
            write_out(opts.output, text);
            return t.disagreements.empty() ? EXIT_OK : EXIT_DISAGREE;
        }

        if (app.got_subcommand(query)) {
            SplModel m = load_model(model_path);
            AnalyzeOptions ao = to_options(opts);
            SplModel canon =
                ao.canonize ? canonize_model(m, ao.canon_mode) : m;
            QuerySpec qs = build_query(canon, property, prop_args);
            std::optional<bool> sem, qbf;
            if (ao.engine != EngineChoice::Qbf) sem = qs.sem(canon);
            if (ao.engine != EngineChoice::Semantic)
                qbf = qbf_verdict(canon, qs.q, ao);
            bool verdict = sem ? *sem : *qbf;
            std::cout << property << ": " << (verdict ? "true" : "false")
                      << "\n";
            if (explain) {
                if (!qs.q.component_set.empty()) {
                    IdSet p = provided_by(canon, qs.q.component_set);
                    std::cout << "provided set:";
                    for (int f : p)
                        std::cout << " " << canon.features[std::size_t(f)];
                    std::cout << "\n";
                }
                if (!qs.q.feature_set.empty() &&
                    canon.scope_index(qs.q.feature_set) >= 0) {
                    std::cout << "covering architectures:";
                    for (const auto& a : canon.platform)
                        if (covers(canon, a.elems, qs.q.feature_set))
                            std::cout << " " << a.name;
                    std::cout << "\n";
                }
            }
            if (sem && qbf && *sem != *qbf) {
                std::cerr << "DISAGREEMENT: semantic="
                          << (*sem ? "true" : "false")
                          << " qbf=" << (*qbf ? "true" : "false") << "\n";
                return EXIT_DISAGREE;
            }
            return EXIT_OK;
        }

        if (app.got_subcommand(encode)) {
            SplModel m = load_model(model_path);
            AnalyzeOptions ao = to_options(opts);
            SplModel canon =
                ao.canonize ? canonize_model(m, ao.canon_mode) : m;
            QuerySpec qs = build_query(canon, property, prop_args);
            EncodingContext ctx(canon, ao.covers_mode);
            QbfFormula f = encode_property(ctx, qs.q);
            CnfInstance inst = tseitin(prenex(f));
            std::vector<std::string> comments{"property: " + property};
            for (const auto& l : variable_legend(ctx)) comments.push_back(l);
            write_out(opts.output, emit_qdimacs(inst, comments));
            return EXIT_OK;
        }

        if (app.got_subcommand(solve_cmd)) {
            CnfInstance inst = parse_qdimacs(read_file(qdimacs_path));
            SolverLimits limits;
            limits.timeout_ms = opts.timeout_ms;
            limits.max_vars = opts.max_qbf_vars;
            SolveResult r;
            if (!opts.solver_cmd.empty())
                r = solve_external(inst,
                                   {opts.solver_cmd, 10, 20, opts.verify},
                                   limits);
            else
                r = solve(inst, limits);
            std::cout << "result: " << (r.verdict ? "true" : "false") << "\n";
            std::cerr << "engine=" << r.engine << " visits=" << r.visits
                      << " branches=" << r.branches
                      << " elapsed_ms=" << r.elapsed_ms << "\n";
            if (qdimacs_exit) return r.verdict ? 10 : 20;
            return EXIT_OK;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << model_path << ": " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const QdimacsError& e) {
        std::cerr << "error: " << qdimacs_path << ": " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    }
    return EXIT_OK;
}
