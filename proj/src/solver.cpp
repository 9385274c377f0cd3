#include "splcheck/solver.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <unordered_map>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace splcheck {

namespace {

using Clauses = std::vector<std::vector<int>>;
using Clock = std::chrono::steady_clock;

struct MemoKey {
    std::uint64_t a, b;
    bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
        return std::size_t(k.a ^ (k.b * 0x9e3779b97f4a7c15ull));
    }
};

// 128 bits of FNV-style hashing over the canonicalized clause set; the two
// halves use independent primes so an accidental collision is negligible.
MemoKey key_of(Clauses clauses) {
    for (auto& cl : clauses) std::sort(cl.begin(), cl.end());
    std::sort(clauses.begin(), clauses.end());
    std::uint64_t a = 0xcbf29ce484222325ull, b = 0x6c62272e07bb0142ull;
    auto mix = [&](std::uint64_t x) {
        a = (a ^ x) * 0x100000001b3ull;
        b = (b ^ (x + 0x9e3779b97f4a7c15ull)) * 0x10000000233ull;
    };
    for (const auto& cl : clauses) {
        mix(0x7fffffffffffffe7ull);  // clause separator
        for (int l : cl) mix(std::uint64_t(std::int64_t(l)));
    }
    return {a, b};
}

struct Engine {
    const SolverLimits& limits;
    std::vector<Quant> quant;        // by var (1-based)
    std::vector<int> order;          // prefix order, flattened
    std::vector<int> position;       // by var; branch order rank
    Clock::time_point deadline;
    std::uint64_t visits = 0, branches = 0;
    std::size_t memo_hits = 0;
    std::unordered_map<MemoKey, bool, MemoHash> memo;

    explicit Engine(const CnfInstance& c, const SolverLimits& lim)
        : limits(lim) {
        quant.assign(std::size_t(c.num_vars) + 1, Quant::Exists);
        position.assign(std::size_t(c.num_vars) + 1, -1);
        for (const auto& blk : c.prefix)
            for (int v : blk.vars) {
                quant[std::size_t(v)] = blk.q;
                position[std::size_t(v)] = int(order.size());
                order.push_back(v);
            }
        // Unquantified variables (open instances) act as outermost exists.
        std::vector<int> open;
        for (int v = 1; v <= c.num_vars; ++v)
            if (position[std::size_t(v)] < 0) open.push_back(v);
        if (!open.empty()) {
            std::vector<int> merged = open;
            merged.insert(merged.end(), order.begin(), order.end());
            order = std::move(merged);
            for (std::size_t i = 0; i < order.size(); ++i)
                position[std::size_t(order[i])] = int(i);
        }
        deadline = Clock::now() + std::chrono::milliseconds(limits.timeout_ms);
    }

    // Union-find over variables; clauses sharing no variables end up in
    // separate groups.
    static std::vector<Clauses> split_components(const Clauses& clauses) {
        std::unordered_map<int, int> root;  // var -> representative
        std::function<int(int)> find = [&](int v) {
            auto it = root.find(v);
            if (it == root.end() || it->second == v) return v;
            return it->second = find(it->second);
        };
        for (const auto& cl : clauses) {
            int r = find(std::abs(cl[0]));
            for (int l : cl) {
                int s = find(std::abs(l));
                if (s != r) root[s] = r;
                root.try_emplace(std::abs(l), r);
            }
        }
        std::unordered_map<int, std::size_t> group;
        std::vector<Clauses> parts;
        for (const auto& cl : clauses) {
            int r = find(std::abs(cl[0]));
            auto [it, fresh] = group.try_emplace(r, parts.size());
            if (fresh) parts.emplace_back();
            parts[it->second].push_back(cl);
        }
        return parts;
    }

    static Clauses assign(const Clauses& clauses, int lit, bool* conflict) {
        Clauses out;
        out.reserve(clauses.size());
        *conflict = false;
        for (const auto& cl : clauses) {
            if (std::find(cl.begin(), cl.end(), lit) != cl.end()) continue;
            std::vector<int> kept;
            kept.reserve(cl.size());
            for (int l : cl)
                if (l != -lit) kept.push_back(l);
            if (kept.empty()) {
                *conflict = true;
                return {};
            }
            out.push_back(std::move(kept));
        }
        return out;
    }

    bool run(Clauses clauses) {
        if (++visits % 1024 == 0 && Clock::now() > deadline)
            throw CapacityError("solver timeout exceeded");

        // Propagation to fixpoint.
        bool again = true;
        while (again) {
            again = false;
            // Universal reduction: a universal literal deeper than every
            // existential literal of its clause can be dropped (the A-player
            // picks it last and falsifies it). A clause left empty is lost.
            for (auto& cl : clauses) {
                int deepest_e = -1;
                for (int l : cl) {
                    int v = std::abs(l);
                    if (quant[std::size_t(v)] == Quant::Exists)
                        deepest_e =
                            std::max(deepest_e, position[std::size_t(v)]);
                }
                std::erase_if(cl, [&](int l) {
                    int v = std::abs(l);
                    return quant[std::size_t(v)] == Quant::Forall &&
                           position[std::size_t(v)] > deepest_e;
                });
                if (cl.empty()) return false;
            }
            for (const auto& cl : clauses) {
                if (cl.size() == 1) {  // existential unit after reduction
                    bool conflict = false;
                    clauses = assign(clauses, cl[0], &conflict);
                    if (conflict) return false;
                    again = true;
                    break;
                }
            }
            if (again) continue;
            if (clauses.empty()) return true;

            // Pure-literal elimination: a pure existential literal can be
            // satisfied, a pure universal literal gets falsified.
            std::unordered_map<int, int> polarity;  // var -> +1/-1/0 (mixed)
            for (const auto& cl : clauses)
                for (int l : cl) {
                    int v = std::abs(l);
                    int p = l > 0 ? 1 : -1;
                    auto [it, fresh] = polarity.try_emplace(v, p);
                    if (!fresh && it->second != p) it->second = 0;
                }
            // Removing clauses cannot make a pure literal impure, so the
            // whole batch can be assigned in one sweep.
            for (auto [v, p] : polarity) {
                if (p == 0) continue;
                int lit =
                    quant[std::size_t(v)] == Quant::Exists ? p * v : -p * v;
                bool conflict = false;
                clauses = assign(clauses, lit, &conflict);
                if (conflict) return false;  // universal pure in a unit clause
                again = true;
            }
        }
        if (clauses.empty()) return true;

        MemoKey key = key_of(clauses);
        if (auto it = memo.find(key); it != memo.end()) {
            ++memo_hits;
            return it->second;
        }

        // Variable-disjoint parts of the matrix are independent games; solve
        // them separately and conjoin.
        {
            auto parts = split_components(clauses);
            if (parts.size() > 1) {
                bool verdict = true;
                for (auto& part : parts)
                    if (!run(std::move(part))) { verdict = false; break; }
                if (memo.size() >= limits.memo_entries) memo.clear();
                memo.emplace(key, verdict);
                return verdict;
            }
        }

        // Branch on the first prefix variable still occurring.
        int var = 0, best = INT_MAX;
        for (const auto& cl : clauses)
            for (int l : cl) {
                int v = std::abs(l);
                if (position[std::size_t(v)] < best) {
                    best = position[std::size_t(v)];
                    var = v;
                }
            }
        ++branches;
        bool conflict = false;
        bool verdict;
        Clauses neg = assign(clauses, -var, &conflict);
        bool lo = conflict ? false : run(std::move(neg));
        if (quant[std::size_t(var)] == Quant::Exists ? lo : !lo) {
            verdict = lo;  // short-circuit
        } else {
            Clauses pos = assign(clauses, var, &conflict);
            verdict = conflict ? false : run(std::move(pos));
        }

        if (memo.size() >= limits.memo_entries) memo.clear();
        memo.emplace(key, verdict);
        return verdict;
    }
};

// Deduplicate literals and drop tautological clauses up front; Tseitin
// definitions can produce both, and a tautology must never be mistaken for
// a clause the A-player could falsify.
Clauses sanitized(const Clauses& in) {
    Clauses out;
    out.reserve(in.size());
    for (auto cl : in) {
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        bool taut = false;
        for (int l : cl)
            if (l > 0 && std::binary_search(cl.begin(), cl.end(), -l)) {
                taut = true;
                break;
            }
        if (!taut) out.push_back(std::move(cl));
    }
    return out;
}

int branchable_vars(const CnfInstance& c) {
    int total = 0;
    for (const auto& b : c.prefix) total += int(b.vars.size());
    if (c.prefix.size() > 1 && c.prefix.back().q == Quant::Exists)
        total -= int(c.prefix.back().vars.size());
    return total;
}

SolveResult solve_impl(const CnfInstance& c, const SolverLimits& limits,
                       bool skip_cap) {
    if (!skip_cap && limits.max_vars > 0 && branchable_vars(c) > limits.max_vars)
        throw CapacityError(
            "instance has " + std::to_string(branchable_vars(c)) +
            " branchable prefix variables, over the cap of " +
            std::to_string(limits.max_vars) + " (raise --max-qbf-vars)");
    auto t0 = Clock::now();
    Engine eng(c, limits);
    SolveResult r;
    r.verdict = eng.run(sanitized(c.clauses));
    r.branches = eng.branches;
    r.visits = eng.visits;
    r.memo_hits = eng.memo_hits;
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

}  // namespace

SolveResult solve(const CnfInstance& c, const SolverLimits& limits) {
    return solve_impl(c, limits, false);
}

SolveResult solve_formula(const QbfFormula& f, const SolverLimits& limits) {
    QbfFormula p = prenex(f);
    int total = 0;
    for (const auto& b : p.prefix) total += int(b.vars.size());
    if (limits.max_vars > 0 && total > limits.max_vars)
        throw CapacityError("formula quantifies " + std::to_string(total) +
                            " variables, over the cap of " +
                            std::to_string(limits.max_vars) +
                            " (raise --max-qbf-vars)");
    return solve_impl(tseitin(p), limits, true);
}

SolveResult solve_external(const CnfInstance& c, const ExternalSolver& ext,
                           const SolverLimits& limits) {
    namespace fs = std::filesystem;
    static std::mt19937_64 rng{std::random_device{}()};
    fs::path path = fs::temp_directory_path() /
                    ("splcheck-" + std::to_string(rng()) + ".qdimacs");
    {
        std::ofstream out(path);
        out << emit_qdimacs(c);
    }
    std::string cmd = ext.command + " '" + path.string() + "'";
    int status = std::system(cmd.c_str());
    std::error_code ec;
    fs::remove(path, ec);
#ifndef _WIN32
    if (status == -1 || !WIFEXITED(status))
        throw std::runtime_error("external solver failed to run: " +
                                 ext.command);
    int code = WEXITSTATUS(status);
#else
    int code = status;
#endif
    SolveResult r;
    r.engine = "external";
    if (code == ext.exit_true)
        r.verdict = true;
    else if (code == ext.exit_false)
        r.verdict = false;
    else
        throw std::runtime_error("external solver exited with unexpected code " +
                                 std::to_string(code));
    if (ext.verify) {
        SolveResult internal = solve(c, limits);
        if (internal.verdict != r.verdict)
            throw ExternalDisagreement(
                "external solver says " + std::string(r.verdict ? "true" : "false") +
                ", internal solver says " +
                std::string(internal.verdict ? "true" : "false"));
    }
    return r;
}

}  // namespace splcheck
