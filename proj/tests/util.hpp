// Shared test helpers: brute-force oracles (written before the engines they
// check) and random generators for models, formulas, and CNF instances.
#pragma once

#include "splcheck/canonize.hpp"
#include "splcheck/model.hpp"
#include "splcheck/qbf.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace testutil {

using namespace splcheck;

// --- naive QBF evaluation by full expansion (exponential, oracle only) ----

inline bool eval_node(const FormulaPtr& f, std::map<int, bool>& env);

// Tries both values of vars[idx], restoring any shadowed outer assignment.
inline bool eval_quant(const std::vector<int>& vars, std::size_t idx,
                       bool universal, const FormulaPtr& body,
                       std::map<int, bool>& env) {
    if (idx == vars.size()) return eval_node(body, env);
    int var = vars[idx];
    auto prev = env.find(var);
    bool had = prev != env.end();
    bool old = had && prev->second;
    bool result = universal;
    for (bool b : {false, true}) {
        env[var] = b;
        bool v = eval_quant(vars, idx + 1, universal, body, env);
        if (universal && !v) { result = false; break; }
        if (!universal && v) { result = true; break; }
    }
    if (had)
        env[var] = old;
    else
        env.erase(var);
    return result;
}

inline bool eval_node(const FormulaPtr& f, std::map<int, bool>& env) {
    switch (f->op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Var: return env.at(f->var);
    case Op::Not: return !eval_node(f->kids[0], env);
    case Op::And:
        for (const auto& k : f->kids)
            if (!eval_node(k, env)) return false;
        return true;
    case Op::Or:
        for (const auto& k : f->kids)
            if (eval_node(k, env)) return true;
        return false;
    case Op::Implies:
        return !eval_node(f->kids[0], env) || eval_node(f->kids[1], env);
    case Op::Iff:
        return eval_node(f->kids[0], env) == eval_node(f->kids[1], env);
    case Op::Forall:
        return eval_quant(f->bound, 0, true, f->kids[0], env);
    case Op::Exists:
        return eval_quant(f->bound, 0, false, f->kids[0], env);
    }
    return false;
}

// Evaluates with the prefix expanded; free variables must be given in env.
inline bool eval_qbf(const QbfFormula& f, std::map<int, bool> env = {}) {
    std::vector<QuantBlock> prefix = f.prefix;
    FormulaPtr body = f.body;
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == prefix.size()) return eval_node(body, env);
        bool universal = prefix[i].q == Quant::Forall;
        std::function<bool(std::size_t)> inner = [&](std::size_t j) -> bool {
            if (j == prefix[i].vars.size()) return go(i + 1);
            for (bool b : {false, true}) {
                env[prefix[i].vars[j]] = b;
                bool v = inner(j + 1);
                env.erase(prefix[i].vars[j]);
                if (universal && !v) return false;
                if (!universal && v) return true;
            }
            return universal;
        };
        return inner(0);
    };
    return go(0);
}

// Truth-table evaluation of a CNF instance (2^k over the prefix).
inline bool eval_cnf(const CnfInstance& c, std::map<int, bool> env = {}) {
    auto matrix = [&]() {
        for (const auto& cl : c.clauses) {
            bool sat = false;
            for (int l : cl) {
                auto it = env.find(std::abs(l));
                bool v = it != env.end() && it->second;
                if ((l > 0) == v) { sat = true; break; }
            }
            if (!sat) return false;
        }
        return true;
    };
    std::function<bool(std::size_t, std::size_t)> go =
        [&](std::size_t bi, std::size_t vi) -> bool {
        if (bi == c.prefix.size()) return matrix();
        if (vi == c.prefix[bi].vars.size()) return go(bi + 1, 0);
        bool universal = c.prefix[bi].q == Quant::Forall;
        int v = c.prefix[bi].vars[vi];
        for (bool b : {false, true}) {
            env[v] = b;
            bool r = go(bi, vi + 1);
            env.erase(v);
            if (universal && !r) return false;
            if (!universal && r) return true;
        }
        return universal;
    };
    return go(0, 0);
}

// --- random generators -----------------------------------------------------

inline IdSet random_subset(std::mt19937& rng, int universe) {
    IdSet s;
    for (int i = 0; i < universe; ++i)
        if (rng() % 2) s.insert(i);
    return s;
}

inline Traceability random_trace(std::mt19937& rng, int n, int m) {
    Traceability t;
    t.prov.resize(std::size_t(m));
    t.req.resize(std::size_t(m));
    auto pick = [&](int lo, int hi) {
        return lo + int(rng() % unsigned(hi - lo + 1));
    };
    for (int f = 0; f < m; ++f) {
        if (rng() % 5 == 0) {
            t.prov[std::size_t(f)].bottom = true;
            t.req[std::size_t(f)].bottom = true;
            continue;
        }
        int alts = pick(0, 3);
        for (int i = 0; i < alts; ++i)
            t.prov[std::size_t(f)].sets.push_back(random_subset(rng, n));
        int reqs = pick(0, 2);
        for (int i = 0; i < reqs; ++i)
            t.req[std::size_t(f)].sets.push_back(random_subset(rng, n));
    }
    return t;
}

inline SplModel random_model(std::mt19937& rng, int max_comps = 6,
                             int max_feats = 4, int max_entries = 5) {
    auto pick = [&](int lo, int hi) {
        return lo + int(rng() % unsigned(hi - lo + 1));
    };
    SplModel m;
    int n = pick(1, max_comps), nf = pick(1, max_feats);
    for (int i = 0; i < n; ++i) m.components.push_back("c" + std::to_string(i));
    for (int j = 0; j < nf; ++j) m.features.push_back("f" + std::to_string(j));
    int ns = pick(0, max_entries), na = pick(0, max_entries);
    for (int i = 0; i < ns; ++i) {
        IdSet s = random_subset(rng, nf);
        if (m.scope_index(s) >= 0) continue;
        m.scope.push_back({"S" + std::to_string(m.scope.size()), s});
    }
    for (int i = 0; i < na; ++i) {
        IdSet a = random_subset(rng, n);
        if (m.platform_index(a) >= 0) continue;
        m.platform.push_back({"A" + std::to_string(m.platform.size()), a});
    }
    m.trace = random_trace(rng, n, nf);
    return m;
}

inline CnfInstance random_cnf(std::mt19937& rng, int max_vars = 14) {
    auto pick = [&](int lo, int hi) {
        return lo + int(rng() % unsigned(hi - lo + 1));
    };
    CnfInstance c;
    c.num_vars = pick(1, max_vars);
    std::vector<int> vars(std::size_t(c.num_vars));
    for (int v = 1; v <= c.num_vars; ++v) vars[std::size_t(v - 1)] = v;
    std::shuffle(vars.begin(), vars.end(), rng);
    std::size_t at = 0;
    while (at < vars.size()) {
        std::size_t take =
            std::min(vars.size() - at, std::size_t(pick(1, c.num_vars)));
        QuantBlock b{rng() % 2 ? Quant::Forall : Quant::Exists, {}};
        b.vars.assign(vars.begin() + long(at), vars.begin() + long(at + take));
        c.prefix.push_back(std::move(b));
        at += take;
    }
    int clauses = pick(1, 2 * c.num_vars);
    for (int i = 0; i < clauses; ++i) {
        std::vector<int> cl;
        int width = pick(1, std::min(3, c.num_vars));
        IdSet used;
        while (int(cl.size()) < width) {
            int v = pick(1, c.num_vars);
            if (used.count(v)) continue;
            used.insert(v);
            cl.push_back(rng() % 2 ? v : -v);
        }
        std::sort(cl.begin(), cl.end());
        c.clauses.push_back(std::move(cl));
    }
    return c;
}

// Closed random formula over vars 1..nv; binders allocate above nv.
inline FormulaPtr random_body(std::mt19937& rng, const std::vector<int>& pool,
                              int& next_bound, int depth) {
    auto pick = [&](int lo, int hi) {
        return lo + int(rng() % unsigned(hi - lo + 1));
    };
    if (depth == 0 || pool.empty()) {
        if (pool.empty()) return rng() % 2 ? f_true() : f_false();
        int v = pool[std::size_t(rng() % pool.size())];
        return rng() % 2 ? f_var(v) : f_not(f_var(v));
    }
    switch (rng() % 8) {
    case 0: return f_not(random_body(rng, pool, next_bound, depth - 1));
    case 1:
    case 2: {
        std::vector<FormulaPtr> kids;
        int k = pick(2, 3);
        for (int i = 0; i < k; ++i)
            kids.push_back(random_body(rng, pool, next_bound, depth - 1));
        return rng() % 2 ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case 3:
        return f_implies(random_body(rng, pool, next_bound, depth - 1),
                         random_body(rng, pool, next_bound, depth - 1));
    case 4:
        return f_iff(random_body(rng, pool, next_bound, depth - 1),
                     random_body(rng, pool, next_bound, depth - 1));
    default: {
        int v = next_bound++;
        std::vector<int> pool2 = pool;
        pool2.push_back(v);
        FormulaPtr body = random_body(rng, pool2, next_bound, depth - 1);
        return rng() % 2 ? f_forall({v}, std::move(body))
                         : f_exists({v}, std::move(body));
    }
    }
}

inline QbfFormula random_formula(std::mt19937& rng, int free_count = 3,
                                 int depth = 4) {
    std::vector<int> pool;
    for (int v = 1; v <= free_count; ++v) pool.push_back(v);
    int next_bound = free_count + 1;
    return {{}, random_body(rng, pool, next_bound, depth)};
}

// --- subprocess helper ------------------------------------------------------

inline int run_cmd(const std::string& cmd, std::string* output = nullptr) {
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    if (!p) return -1;
    char buf[4096];
    std::string out;
    while (std::size_t got = fread(buf, 1, sizeof buf, p)) out.append(buf, got);
    int status = pclose(p);
    if (output) *output = out;
#ifndef _WIN32
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    return status;
#endif
}

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

}  // namespace testutil
