#include "splcheck/qbf.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace splcheck {

namespace {

FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

const FormulaPtr TRUE_NODE = mk({Op::True});
const FormulaPtr FALSE_NODE = mk({Op::False});

bool is_const(const FormulaPtr& f) {
    return f->op == Op::True || f->op == Op::False;
}
bool truth(const FormulaPtr& f) { return f->op == Op::True; }

}  // namespace

FormulaPtr f_true() { return TRUE_NODE; }
FormulaPtr f_false() { return FALSE_NODE; }
FormulaPtr f_const(bool b) { return b ? TRUE_NODE : FALSE_NODE; }

FormulaPtr f_var(int v) {
    if (v <= 0) throw std::invalid_argument("variables are positive integers");
    return mk({Op::Var, v});
}

FormulaPtr f_not(FormulaPtr a) {
    if (a->op == Op::True) return FALSE_NODE;
    if (a->op == Op::False) return TRUE_NODE;
    if (a->op == Op::Not) return a->kids[0];
    return mk({Op::Not, 0, {}, {std::move(a)}});
}

namespace {

FormulaPtr nary(Op op, std::vector<FormulaPtr> kids) {
    // op is And or Or; `unit` is the neutral element.
    const bool unit = op == Op::And;
    std::vector<FormulaPtr> flat;
    for (auto& k : kids) {
        if (is_const(k)) {
            if (truth(k) == unit) continue;  // neutral
            return f_const(!unit);           // absorbing
        }
        if (k->op == op)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    if (flat.empty()) return f_const(unit);
    if (flat.size() == 1) return flat[0];
    return mk({op, 0, {}, std::move(flat)});
}

}  // namespace

FormulaPtr f_and(std::vector<FormulaPtr> kids) {
    return nary(Op::And, std::move(kids));
}
FormulaPtr f_or(std::vector<FormulaPtr> kids) {
    return nary(Op::Or, std::move(kids));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    if (a->op == Op::True) return b;
    if (a->op == Op::False) return TRUE_NODE;
    if (b->op == Op::True) return TRUE_NODE;
    if (b->op == Op::False) return f_not(std::move(a));
    return mk({Op::Implies, 0, {}, {std::move(a), std::move(b)}});
}

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
    if (is_const(a)) return truth(a) ? b : f_not(std::move(b));
    if (is_const(b)) return truth(b) ? a : f_not(std::move(a));
    return mk({Op::Iff, 0, {}, {std::move(a), std::move(b)}});
}

namespace {

FormulaPtr quantify(Op op, std::vector<int> vars, FormulaPtr a) {
    if (vars.empty() || is_const(a)) return a;
    for (int v : vars)
        if (v <= 0) throw std::invalid_argument("variables are positive integers");
    return mk({op, 0, std::move(vars), {std::move(a)}});
}

}  // namespace

FormulaPtr f_forall(std::vector<int> vars, FormulaPtr a) {
    return quantify(Op::Forall, std::move(vars), std::move(a));
}
FormulaPtr f_exists(std::vector<int> vars, FormulaPtr a) {
    return quantify(Op::Exists, std::move(vars), std::move(a));
}

namespace {

void walk_vars(const FormulaPtr& f, int& mx) {
    if (f->op == Op::Var) mx = std::max(mx, f->var);
    for (int v : f->bound) mx = std::max(mx, v);
    for (const auto& k : f->kids) walk_vars(k, mx);
}

void collect_free(const FormulaPtr& f, std::set<int>& bound_here,
                  std::set<int>& out) {
    if (f->op == Op::Var) {
        if (!bound_here.count(f->var)) out.insert(f->var);
        return;
    }
    if (f->op == Op::Forall || f->op == Op::Exists) {
        for (int v : f->bound) bound_here.insert(v);
        collect_free(f->kids[0], bound_here, out);
        for (int v : f->bound) bound_here.erase(v);
        return;
    }
    for (const auto& k : f->kids) collect_free(k, bound_here, out);
}

void collect_bound(const FormulaPtr& f, std::vector<int>& out) {
    for (int v : f->bound) out.push_back(v);
    for (const auto& k : f->kids) collect_bound(k, out);
}

}  // namespace

int max_var(const QbfFormula& f) {
    int mx = 0;
    for (const auto& b : f.prefix)
        for (int v : b.vars) mx = std::max(mx, v);
    walk_vars(f.body, mx);
    return mx;
}

std::vector<int> free_vars(const QbfFormula& f) {
    std::set<int> bound, out;
    for (const auto& b : f.prefix) bound.insert(b.vars.begin(), b.vars.end());
    collect_free(f.body, bound, out);
    return {out.begin(), out.end()};
}

namespace {

FormulaPtr rebuild(const FormulaPtr& f, const std::map<int, bool>& assign) {
    switch (f->op) {
    case Op::True:
    case Op::False:
        return f;
    case Op::Var: {
        auto it = assign.find(f->var);
        return it == assign.end() ? f : f_const(it->second);
    }
    case Op::Not:
        return f_not(rebuild(f->kids[0], assign));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(rebuild(k, assign));
        return f->op == Op::And ? f_and(std::move(kids))
                                : f_or(std::move(kids));
    }
    case Op::Implies:
        return f_implies(rebuild(f->kids[0], assign),
                         rebuild(f->kids[1], assign));
    case Op::Iff:
        return f_iff(rebuild(f->kids[0], assign), rebuild(f->kids[1], assign));
    case Op::Forall:
    case Op::Exists: {
        auto body = rebuild(f->kids[0], assign);
        return f->op == Op::Forall ? f_forall(f->bound, std::move(body))
                                   : f_exists(f->bound, std::move(body));
    }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

QbfFormula substitute(const QbfFormula& f, const std::map<int, bool>& assign) {
    std::set<int> bound;
    for (const auto& b : f.prefix) bound.insert(b.vars.begin(), b.vars.end());
    std::vector<int> body_bound;
    collect_bound(f.body, body_bound);
    bound.insert(body_bound.begin(), body_bound.end());
    for (const auto& [v, _] : assign)
        if (bound.count(v))
            throw std::invalid_argument("cannot substitute bound variable " +
                                        std::to_string(v));
    return {f.prefix, rebuild(f.body, assign)};
}

// ---------------------------------------------------------------------------
// Prenexing

namespace {

struct Prenexer {
    int fresh;

    FormulaPtr rename(const FormulaPtr& f, std::map<int, int>& sub) {
        switch (f->op) {
        case Op::True:
        case Op::False:
            return f;
        case Op::Var: {
            auto it = sub.find(f->var);
            return it == sub.end() ? f : f_var(it->second);
        }
        case Op::Forall:
        case Op::Exists: {
            std::vector<int> nb;
            for (int v : f->bound) {
                sub[v] = fresh++;
                nb.push_back(sub[v]);
            }
            auto body = rename(f->kids[0], sub);
            return mk({f->op, 0, std::move(nb), {std::move(body)}});
        }
        default: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(rename(k, sub));
            Formula g = *f;
            g.kids = std::move(kids);
            return mk(std::move(g));
        }
        }
    }

    FormulaPtr rename_all_bound(const FormulaPtr& f) {
        std::map<int, int> sub;
        return rename(f, sub);
    }

    // Renames only binders whose variable also occurs free somewhere else;
    // keeps deliberately chosen variable numbers stable otherwise.
    FormulaPtr avoid_capture(const FormulaPtr& f, const std::set<int>& hot) {
        if (f->op == Op::Var || is_const(f)) return f;
        if (f->op == Op::Forall || f->op == Op::Exists) {
            std::map<int, int> sub;
            std::vector<int> nb;
            for (int v : f->bound) {
                if (hot.count(v)) {
                    sub[v] = fresh++;
                    nb.push_back(sub[v]);
                } else {
                    nb.push_back(v);
                }
            }
            auto body = avoid_capture(f->kids[0], hot);
            if (!sub.empty()) body = rename(body, sub);
            return mk({f->op, 0, std::move(nb), {std::move(body)}});
        }
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids) kids.push_back(avoid_capture(k, hot));
        Formula g = *f;
        g.kids = std::move(kids);
        return mk(std::move(g));
    }

    static bool has_quant(const FormulaPtr& f) {
        if (f->op == Op::Forall || f->op == Op::Exists) return true;
        for (const auto& k : f->kids)
            if (has_quant(k)) return true;
        return false;
    }

    struct Pulled {
        std::vector<QuantBlock> blocks;
        FormulaPtr body;
    };

    static void flip(std::vector<QuantBlock>& blocks) {
        for (auto& b : blocks)
            b.q = b.q == Quant::Forall ? Quant::Exists : Quant::Forall;
    }

    Pulled pull(const FormulaPtr& f) {
        switch (f->op) {
        case Op::True:
        case Op::False:
        case Op::Var:
            return {{}, f};
        case Op::Not: {
            auto r = pull(f->kids[0]);
            flip(r.blocks);
            r.body = f_not(r.body);
            return r;
        }
        case Op::And:
        case Op::Or: {
            Pulled out;
            std::vector<FormulaPtr> bodies;
            for (const auto& k : f->kids) {
                auto r = pull(k);
                out.blocks.insert(out.blocks.end(), r.blocks.begin(),
                                  r.blocks.end());
                bodies.push_back(std::move(r.body));
            }
            out.body = f->op == Op::And ? f_and(std::move(bodies))
                                        : f_or(std::move(bodies));
            return out;
        }
        case Op::Implies: {
            auto ra = pull(f->kids[0]);
            flip(ra.blocks);  // antecedent position negates
            auto rb = pull(f->kids[1]);
            Pulled out;
            out.blocks = std::move(ra.blocks);
            out.blocks.insert(out.blocks.end(), rb.blocks.begin(),
                              rb.blocks.end());
            out.body = f_implies(std::move(ra.body), std::move(rb.body));
            return out;
        }
        case Op::Iff: {
            if (!has_quant(f)) return {{}, f};
            // (a <-> b) becomes (a -> b) & (b' -> a') with the bound
            // variables of the duplicated copy renamed fresh.
            auto a2 = rename_all_bound(f->kids[0]);
            auto b2 = rename_all_bound(f->kids[1]);
            return pull(f_and({f_implies(f->kids[0], f->kids[1]),
                               f_implies(std::move(b2), std::move(a2))}));
        }
        case Op::Forall:
        case Op::Exists: {
            auto r = pull(f->kids[0]);
            r.blocks.insert(r.blocks.begin(),
                            {f->op == Op::Forall ? Quant::Forall
                                                 : Quant::Exists,
                             f->bound});
            return r;
        }
        }
        throw std::logic_error("unreachable");
    }
};

void merge_blocks(std::vector<QuantBlock>& blocks) {
    std::vector<QuantBlock> out;
    for (auto& b : blocks) {
        if (b.vars.empty()) continue;
        if (!out.empty() && out.back().q == b.q)
            out.back().vars.insert(out.back().vars.end(), b.vars.begin(),
                                   b.vars.end());
        else
            out.push_back(std::move(b));
    }
    blocks = std::move(out);
}

}  // namespace

QbfFormula prenex(const QbfFormula& f) {
    std::vector<int> bound;
    for (const auto& b : f.prefix)
        bound.insert(bound.end(), b.vars.begin(), b.vars.end());
    collect_bound(f.body, bound);
    std::set<int> seen;
    for (int v : bound)
        if (!seen.insert(v).second)
            throw std::invalid_argument("variable " + std::to_string(v) +
                                        " is bound more than once");

    Prenexer px{max_var(f) + 1};
    // A binder whose variable also occurs outside its own subtree would
    // capture that occurrence when pulled; rename such binders first.
    std::set<int> hot, bound_set;
    collect_free(f.body, bound_set, hot);  // free occurrences, top level
    auto body = px.avoid_capture(f.body, hot);

    auto pulled = px.pull(body);
    QbfFormula out;
    out.prefix = f.prefix;
    if (is_const(pulled.body)) {
        out.prefix.clear();
        out.body = pulled.body;
        return out;
    }
    out.prefix.insert(out.prefix.end(), pulled.blocks.begin(),
                      pulled.blocks.end());
    merge_blocks(out.prefix);
    out.body = pulled.body;
    return out;
}

// ---------------------------------------------------------------------------
// Tseitin

namespace {

bool is_literal(const FormulaPtr& f) {
    return f->op == Op::Var ||
           (f->op == Op::Not && f->kids[0]->op == Op::Var);
}

int literal_of(const FormulaPtr& f) {
    return f->op == Op::Var ? f->var : -f->kids[0]->var;
}

bool is_clause(const FormulaPtr& f) {
    if (is_literal(f)) return true;
    if (f->op != Op::Or) return false;
    for (const auto& k : f->kids)
        if (!is_literal(k)) return false;
    return true;
}

bool is_cnf(const FormulaPtr& f) {
    if (is_clause(f)) return true;
    if (f->op != Op::And) return false;
    for (const auto& k : f->kids)
        if (!is_clause(k)) return false;
    return true;
}

// Deduplicates in appearance order; false when the clause is a tautology.
bool clause_literals(const FormulaPtr& f, std::vector<int>& out) {
    std::set<int> seen;
    auto add = [&](int l) {
        if (seen.insert(l).second) out.push_back(l);
    };
    if (is_literal(f)) {
        add(literal_of(f));
    } else {
        for (const auto& k : f->kids) add(literal_of(k));
    }
    for (int l : out)
        if (seen.count(-l)) { out.clear(); return false; }
    return true;
}

struct TseitinCtx {
    int next;
    std::vector<int> aux;
    std::vector<std::vector<int>> clauses;

    int fresh() {
        aux.push_back(next);
        return next++;
    }

    // Returns a literal that stands for f. Definitions are polarity-aware
    // (Plaisted-Greenbaum): pol > 0 emits only aux -> f, pol < 0 only
    // f -> aux, pol == 0 both. One-sided definitions keep auxiliaries of
    // subcircuits whose consumers got satisfied pure, so the solver's
    // pure-literal rule erases dead machinery instead of re-verifying it.
    int define(const FormulaPtr& f, int pol) {
        switch (f->op) {
        case Op::Var:
            return f->var;
        case Op::Not:
            return -define(f->kids[0], -pol);
        case Op::And:
        case Op::Or: {
            bool conj = f->op == Op::And;
            std::vector<int> ls;
            for (const auto& k : f->kids) ls.push_back(define(k, pol));
            int a = fresh();
            if (conj ? pol >= 0 : pol <= 0)
                for (int l : ls)
                    clauses.push_back(conj ? std::vector<int>{-a, l}
                                           : std::vector<int>{a, -l});
            if (conj ? pol <= 0 : pol >= 0) {
                std::vector<int> big{conj ? a : -a};
                for (int l : ls) big.push_back(conj ? -l : l);
                clauses.push_back(std::move(big));
            }
            return a;
        }
        case Op::Implies: {
            int x = define(f->kids[0], -pol), y = define(f->kids[1], pol);
            int a = fresh();
            if (pol >= 0) clauses.push_back({-a, -x, y});
            if (pol <= 0) {
                clauses.push_back({a, x});
                clauses.push_back({a, -y});
            }
            return a;
        }
        case Op::Iff: {
            int x = define(f->kids[0], 0), y = define(f->kids[1], 0);
            int a = fresh();
            if (pol >= 0) {
                clauses.push_back({-a, -x, y});
                clauses.push_back({-a, x, -y});
            }
            if (pol <= 0) {
                clauses.push_back({a, x, y});
                clauses.push_back({a, -x, -y});
            }
            return a;
        }
        default:
            throw std::invalid_argument("tseitin: body is not quantifier-free");
        }
    }
};

}  // namespace

CnfInstance tseitin(const QbfFormula& f) {
    std::vector<int> inner;
    collect_bound(f.body, inner);
    if (!inner.empty())
        throw std::invalid_argument("tseitin requires a prenex formula");

    CnfInstance out;
    out.prefix = f.prefix;
    int mx = max_var(f);

    // Close over stray free variables rather than emitting an open instance.
    std::set<int> in_prefix;
    for (const auto& b : f.prefix)
        in_prefix.insert(b.vars.begin(), b.vars.end());
    std::vector<int> stray;
    for (int v : free_vars(f))
        if (!in_prefix.count(v)) stray.push_back(v);
    if (!stray.empty()) {
        std::fputs("warning: free variables closed with an outer exists\n",
                   stderr);
        out.prefix.insert(out.prefix.begin(), {Quant::Exists, stray});
    }

    if (f.body->op == Op::True) {
        out.num_vars = mx;
        return out;
    }
    if (f.body->op == Op::False) {
        out.num_vars = mx;
        out.clauses.push_back({});
        return out;
    }

    if (is_cnf(f.body)) {
        if (is_clause(f.body)) {
            std::vector<int> lits;
            if (clause_literals(f.body, lits))
                out.clauses.push_back(std::move(lits));
        } else {
            for (const auto& k : f.body->kids) {
                std::vector<int> lits;
                if (clause_literals(k, lits))
                    out.clauses.push_back(std::move(lits));
            }
        }
        out.num_vars = mx;
        return out;
    }

    TseitinCtx ctx{mx + 1, {}, {}};
    int root = ctx.define(f.body, 1);
    ctx.clauses.push_back({root});
    out.clauses = std::move(ctx.clauses);
    out.num_vars = ctx.next - 1;
    if (!ctx.aux.empty())
        out.prefix.push_back({Quant::Exists, std::move(ctx.aux)});
    merge_blocks(out.prefix);
    return out;
}

// ---------------------------------------------------------------------------
// QDIMACS

std::string emit_qdimacs(const CnfInstance& c,
                         const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& line : comments) out << "c " << line << "\n";
    out << "p cnf " << c.num_vars << " " << c.clauses.size() << "\n";
    for (const auto& b : c.prefix) {
        out << (b.q == Quant::Forall ? "a" : "e");
        for (int v : b.vars) out << " " << v;
        out << " 0\n";
    }
    for (const auto& cl : c.clauses) {
        for (int l : cl) out << l << " ";
        out << "0\n";
    }
    return out.str();
}

CnfInstance parse_qdimacs(const std::string& text) {
    CnfInstance c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_problem = false;
    bool in_clauses = false;
    long declared_clauses = 0;
    std::set<int> quantified;

    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank
        if (tok == "c") continue;
        if (tok.size() > 1 && tok[0] == 'c') continue;  // "c..." comment

        if (tok == "p") {
            if (have_problem)
                throw QdimacsError(lineno, "duplicate problem line");
            std::string fmt;
            long nv, nc;
            if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
                throw QdimacsError(lineno, "malformed problem line");
            std::string rest;
            if (ls >> rest)
                throw QdimacsError(lineno, "trailing tokens on problem line");
            c.num_vars = int(nv);
            declared_clauses = nc;
            have_problem = true;
            continue;
        }
        if (!have_problem)
            throw QdimacsError(lineno, "missing problem line");

        if (tok == "a" || tok == "e") {
            if (in_clauses)
                throw QdimacsError(lineno, "quantifier line after clauses");
            QuantBlock b{tok == "a" ? Quant::Forall : Quant::Exists, {}};
            long v;
            bool terminated = false;
            while (ls >> v) {
                if (v == 0) { terminated = true; break; }
                if (v < 0 || v > c.num_vars)
                    throw QdimacsError(lineno, "variable out of range");
                if (!quantified.insert(int(v)).second)
                    throw QdimacsError(lineno, "variable quantified twice");
                b.vars.push_back(int(v));
            }
            if (!terminated || (ls >> v))
                throw QdimacsError(lineno, "malformed quantifier line");
            if (b.vars.empty())
                throw QdimacsError(lineno, "empty quantifier block");
            c.prefix.push_back(std::move(b));
            continue;
        }

        // clause line
        in_clauses = true;
        std::istringstream cs(raw);
        std::vector<int> clause;
        long l;
        bool terminated = false;
        while (cs >> l) {
            if (l == 0) { terminated = true; break; }
            if (std::abs(l) > c.num_vars)
                throw QdimacsError(lineno, "literal out of range");
            clause.push_back(int(l));
        }
        if (!terminated) throw QdimacsError(lineno, "unterminated clause");
        if (cs >> l) throw QdimacsError(lineno, "tokens after clause terminator");
        if (cs.fail() && !cs.eof())
            throw QdimacsError(lineno, "malformed clause literal");
        c.clauses.push_back(std::move(clause));
    }

    if (!have_problem) throw QdimacsError(lineno, "missing problem line");
    if (long(c.clauses.size()) != declared_clauses)
        throw QdimacsError(lineno, "clause count mismatch (declared " +
                                       std::to_string(declared_clauses) +
                                       ", found " +
                                       std::to_string(c.clauses.size()) + ")");
    return c;
}

}  // namespace splcheck
