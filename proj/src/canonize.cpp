#include "splcheck/canonize.hpp"

#include "splcheck/semantic.hpp"

namespace splcheck {

bool is_non_redundant(const Traceability& t) {
    auto antichain = [](const AltSets& a) {
        for (std::size_t i = 0; i < a.sets.size(); ++i)
            for (std::size_t j = 0; j < a.sets.size(); ++j)
                if (i != j && subset(a.sets[i], a.sets[j])) return false;
        return true;
    };
    for (const auto& p : t.prov)
        if (!antichain(p)) return false;
    for (const auto& r : t.req)
        if (!antichain(r)) return false;
    return true;
}

bool is_internally_consistent(const Traceability& t) {
    for (std::size_t f = 0; f < t.prov.size(); ++f) {
        const auto& pv = t.prov[f];
        const auto& rv = t.req[f];
        if (pv.bottom) continue;
        if (rv.undefined_or_empty()) continue;  // trivially satisfiable
        for (const auto& P : pv.sets) {
            bool ok = false;
            for (const auto& R : rv.sets)
                if (subset(R, P)) { ok = true; break; }
            if (!ok) return false;
        }
    }
    return true;
}

bool is_canonical(const Traceability& t) {
    return is_non_redundant(t) && is_internally_consistent(t);
}

namespace {

void record(CanonizationTrace* tr, CanonStep step) {
    if (tr) tr->steps.push_back(std::move(step));
}

// prov(f) empty or undefined: both maps collapse to Bottom.
bool fire_rule1(Traceability& t, int f, CanonizationTrace* tr) {
    auto& pv = t.prov[std::size_t(f)];
    auto& rv = t.req[std::size_t(f)];
    bool prov_gone = pv.bottom || pv.sets.empty();
    if (!prov_gone || (pv.bottom && rv.bottom)) return false;
    pv = AltSets{true, {}};
    rv = AltSets{true, {}};
    record(tr, {1, f, true, true, {}});
    return true;
}

// Removes one comparable pair from an antichain-to-be. keep_smaller selects
// which side of the pair survives; ties (equal sets) drop the later index.
bool fire_antichain(AltSets& a, bool keep_smaller, int rule, int f,
                    bool in_prov, CanonizationTrace* tr) {
    for (std::size_t j = 0; j < a.sets.size(); ++j)
        for (std::size_t i = 0; i < a.sets.size(); ++i) {
            if (i == j || !subset(a.sets[i], a.sets[j])) continue;
            std::size_t victim;
            if (a.sets[i] == a.sets[j])
                victim = std::max(i, j);
            else
                victim = keep_smaller ? j : i;
            record(tr, {rule, f, in_prov, false, a.sets[victim], int(victim)});
            a.sets.erase(a.sets.begin() + long(victim));
            return true;
        }
    return false;
}

bool fire_rule2(Traceability& t, int f, CanonizationTrace* tr) {
    return fire_antichain(t.prov[std::size_t(f)], true, 2, f, true, tr);
}

bool fire_rule3(Traceability& t, int f, CanonMode mode, CanonizationTrace* tr) {
    return fire_antichain(t.req[std::size_t(f)],
                          mode == CanonMode::Default, 3, f, false, tr);
}

// prov alternative with no satisfiable requirement can never witness
// implements; drop it.
bool fire_rule4(Traceability& t, int f, CanonizationTrace* tr) {
    auto& pv = t.prov[std::size_t(f)];
    const auto& rv = t.req[std::size_t(f)];
    if (pv.bottom || rv.undefined_or_empty()) return false;
    for (std::size_t i = 0; i < pv.sets.size(); ++i) {
        bool usable = false;
        for (const auto& R : rv.sets)
            if (subset(R, pv.sets[i])) { usable = true; break; }
        if (usable) continue;
        record(tr, {4, f, true, false, pv.sets[i], int(i)});
        pv.sets.erase(pv.sets.begin() + long(i));
        return true;
    }
    return false;
}

}  // namespace

Traceability canonize(const Traceability& t, CanonMode mode,
                      CanonizationTrace* trace) {
    Traceability out = t;
    int nf = int(out.prov.size());
    auto exhaust = [&](auto&& fire) {
        bool any = false;
        for (int f = 0; f < nf; ++f)
            while (fire(f)) any = true;
        return any;
    };
    auto r1 = [&](int f) { return fire_rule1(out, f, trace); };
    auto r2 = [&](int f) { return fire_rule2(out, f, trace); };
    auto r3 = [&](int f) { return fire_rule3(out, f, mode, trace); };
    auto r4 = [&](int f) { return fire_rule4(out, f, trace); };

    bool changed = true;
    while (changed) {
        changed = false;
        changed |= exhaust(r1);
        if (mode == CanonMode::Default) {
            // Rule 4 runs before rule 2 so that every rule-2 removal still
            // has a usable smaller alternative; this keeps implements intact.
            changed |= exhaust(r4);
            changed |= exhaust(r3);
            changed |= exhaust(r2);
        } else {
            bool inner = true;
            while (inner) {
                inner = exhaust(r2);
                inner |= exhaust(r3);
                changed |= inner;
            }
            changed |= exhaust(r4);
        }
    }
    return out;
}

SplModel canonize_model(const SplModel& m, CanonMode mode,
                        CanonizationTrace* trace) {
    SplModel out = m;
    out.trace = canonize(m.trace, mode, trace);
    return out;
}

Traceability replay(const Traceability& t, const CanonizationTrace& trace) {
    Traceability out = t;
    for (const auto& s : trace.steps) {
        auto f = std::size_t(s.feature);
        if (s.rule == 1) {
            out.prov[f] = AltSets{true, {}};
            out.req[f] = AltSets{true, {}};
            continue;
        }
        auto& alts = s.in_prov ? out.prov[f] : out.req[f];
        if (s.index >= 0 && std::size_t(s.index) < alts.sets.size() &&
            alts.sets[std::size_t(s.index)] == s.removed) {
            alts.sets.erase(alts.sets.begin() + long(s.index));
            continue;
        }
        for (std::size_t i = 0; i < alts.sets.size(); ++i)
            if (alts.sets[i] == s.removed) {
                alts.sets.erase(alts.sets.begin() + long(i));
                break;
            }
    }
    return out;
}

bool implements_preserved(const SplModel& before, const SplModel& after,
                          int exhaustive_cap) {
    if (before.components != after.components ||
        before.features != after.features)
        return false;
    int n = int(before.components.size());
    int nf = int(before.features.size());
    auto agree = [&](const IdSet& C) {
        for (int f = 0; f < nf; ++f)
            if (implements(before.trace, C, f) != implements(after.trace, C, f))
                return false;
        return true;
    };
    for (const auto& arch : before.platform)
        if (!agree(arch.elems)) return false;
    if (n <= exhaustive_cap) {
        for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
            IdSet C;
            for (int i = 0; i < n; ++i)
                if (mask & (1ul << i)) C.insert(i);
            if (!agree(C)) return false;
        }
    }
    return true;
}

}  // namespace splcheck
