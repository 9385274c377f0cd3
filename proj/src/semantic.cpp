#include "splcheck/semantic.hpp"

#include <stdexcept>

namespace splcheck {

bool implements(const Traceability& t, const IdSet& C, int feature) {
    const auto& pv = t.prov[std::size_t(feature)];
    const auto& rv = t.req[std::size_t(feature)];
    if (pv.bottom) return false;
    for (const auto& P : pv.sets) {
        if (!subset(P, C)) continue;
        if (rv.undefined_or_empty()) return true;
        for (const auto& R : rv.sets)
            if (subset(R, P)) return true;
    }
    return false;
}

bool implements(const SplModel& m, const IdSet& C, int feature) {
    return implements(m.trace, C, feature);
}

IdSet provided_by(const SplModel& m, const IdSet& C) {
    IdSet out;
    for (int f = 0; f < int(m.features.size()); ++f)
        if (implements(m, C, f)) out.insert(f);
    return out;
}

bool realizes(const SplModel& m, const IdSet& C, const IdSet& F) {
    return provided_by(m, C) == F;
}

bool covers(const SplModel& m, const IdSet& C, const IdSet& F) {
    IdSet provided = provided_by(m, C);
    return m.scope_index(provided) >= 0 && subset(F, provided);
}

std::vector<ProductPair> products(const SplModel& m) {
    std::vector<ProductPair> out;
    for (int s = 0; s < int(m.scope.size()); ++s)
        for (int a = 0; a < int(m.platform.size()); ++a)
            if (covers(m, m.platform[std::size_t(a)].elems,
                       m.scope[std::size_t(s)].elems))
                out.push_back({s, a});
    return out;
}

bool is_complete(const SplModel& m) {
    for (const auto& s : m.scope) {
        bool covered = false;
        for (const auto& a : m.platform)
            if (covers(m, a.elems, s.elems)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

bool is_sound(const SplModel& m) {
    for (const auto& a : m.platform) {
        bool useful = false;
        for (const auto& s : m.scope)
            if (covers(m, a.elems, s.elems)) { useful = true; break; }
        if (!useful) return false;
    }
    return true;
}

namespace {

void require_in_scope(const SplModel& m, const IdSet& F) {
    if (m.scope_index(F) < 0)
        throw std::invalid_argument("feature set is not a scope member");
}

}  // namespace

bool is_existentially_explicit(const SplModel& m, const IdSet& F) {
    require_in_scope(m, F);
    for (const auto& a : m.platform)
        if (realizes(m, a.elems, F)) return true;
    return false;
}

bool is_universally_explicit(const SplModel& m, const IdSet& F) {
    require_in_scope(m, F);
    if (!is_existentially_explicit(m, F)) return false;
    for (const auto& a : m.platform)
        if (covers(m, a.elems, F) && !realizes(m, a.elems, F)) return false;
    return true;
}

bool has_unique_implementation(const SplModel& m, const IdSet& F) {
    require_in_scope(m, F);
    int count = 0;
    for (const auto& a : m.platform)
        if (covers(m, a.elems, F)) ++count;
    return count == 1;
}

std::vector<Emergence> emerging(const SplModel& m, const IdSet& F) {
    require_in_scope(m, F);
    std::vector<Emergence> out;
    for (int a = 0; a < int(m.platform.size()); ++a) {
        const IdSet& C = m.platform[std::size_t(a)].elems;
        if (!covers(m, C, F)) continue;
        IdSet extra;
        for (int f : provided_by(m, C))
            if (!F.count(f)) extra.insert(f);
        out.push_back({a, extra});
    }
    return out;
}

namespace {

bool in_product(const SplModel& m, const ProductPair& p, ElementKind k, int e) {
    return k == ElementKind::Feature
               ? m.scope[std::size_t(p.spec)].elems.count(e) > 0
               : m.platform[std::size_t(p.arch)].elems.count(e) > 0;
}

}  // namespace

bool is_common(const SplModel& m, ElementKind k, int e) {
    for (const auto& p : products(m))
        if (!in_product(m, p, k, e)) return false;
    return true;
}

bool is_live(const SplModel& m, ElementKind k, int e) {
    for (const auto& p : products(m))
        if (in_product(m, p, k, e)) return true;
    return false;
}

bool is_dead(const SplModel& m, ElementKind k, int e) {
    return !is_live(m, k, e);
}

ElementStatus element_status(const SplModel& m, ElementKind k, int e) {
    if (products(m).empty()) return {Status::Dead, true};
    if (is_common(m, k, e)) return {Status::Common, false};
    if (is_live(m, k, e)) return {Status::Live, false};
    return {Status::Dead, false};
}

bool is_superfluous(const SplModel& m, int component) {
    // Dropping every architecture containing the component must not shrink
    // the set of specifications with products.
    for (const auto& s : m.scope) {
        bool with = false, without = false;
        for (const auto& a : m.platform) {
            if (!covers(m, a.elems, s.elems)) continue;
            with = true;
            if (!a.elems.count(component)) { without = true; break; }
        }
        if (with && !without) return false;
    }
    return true;
}

bool is_redundant(const SplModel& m, int component) {
    for (const auto& a : m.platform) {
        if (!a.elems.count(component)) continue;
        IdSet provided = provided_by(m, a.elems);
        bool replaced = false;
        for (const auto& b : m.platform) {
            if (b.elems.count(component) || !subset(b.elems, a.elems)) continue;
            if (provided_by(m, b.elems) == provided) { replaced = true; break; }
        }
        if (!replaced) return false;
    }
    return true;
}

bool is_critical(const SplModel& m, int component, int feature) {
    for (const auto& a : m.platform)
        if (implements(m, a.elems, feature) && !a.elems.count(component))
            return false;
    return true;
}

bool extends(const IdSet& F, const IdSet& F2, bool proper) {
    return subset(F, F2) && (!proper || F != F2);
}

bool is_extendable(const SplModel& m, const IdSet& F) {
    for (const auto& s : m.scope)
        if (extends(F, s.elems, true)) return true;
    return false;
}

}  // namespace splcheck
