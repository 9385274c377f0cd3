#include "splcheck/encoder.hpp"

#include <stdexcept>

namespace splcheck {

std::vector<int> EncodingContext::comp_vars() const {
    std::vector<int> v;
    v.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) v.push_back(comp_var(i));
    return v;
}

std::vector<int> EncodingContext::feat_vars() const {
    std::vector<int> v;
    v.reserve(std::size_t(m));
    for (int j = 0; j < m; ++j) v.push_back(feat_var(j));
    return v;
}

std::vector<int> EncodingContext::fresh_block(int k) {
    std::vector<int> v;
    v.reserve(std::size_t(k));
    for (int i = 0; i < k; ++i) v.push_back(fresh++);
    return v;
}

namespace {

// A parameter tuple: either fixed bits or variables, held uniformly as terms.
using Terms = std::vector<FormulaPtr>;

Terms terms_of(const PropVector& v) {
    Terms t;
    t.reserve(v.bits.size());
    for (bool b : v.bits) t.push_back(f_const(b));
    return t;
}

Terms terms_of(const std::vector<int>& vars) {
    Terms t;
    t.reserve(vars.size());
    for (int v : vars) t.push_back(f_var(v));
    return t;
}

FormulaPtr over(const IdSet& s, const std::vector<int>& vars) {
    std::vector<FormulaPtr> conj;
    for (int i : s) conj.push_back(f_var(vars[std::size_t(i)]));
    return f_and(std::move(conj));
}

FormulaPtr alt_formula(const AltSets& alts, const std::vector<int>& vars,
                       bool empty_value) {
    if (alts.undefined_or_empty()) return f_const(empty_value);
    std::vector<FormulaPtr> disj;
    for (const auto& s : alts.sets) disj.push_back(over(s, vars));
    return f_or(std::move(disj));
}

// The tuple equals one of the given sets: a disjunction of full minterms,
// negative literals included.
FormulaPtr membership(const std::vector<NamedSet>& sets, const Terms& t) {
    std::vector<FormulaPtr> disj;
    for (const auto& ns : sets) {
        std::vector<FormulaPtr> minterm;
        for (std::size_t i = 0; i < t.size(); ++i)
            minterm.push_back(ns.elems.count(int(i)) ? t[i] : f_not(t[i]));
        disj.push_back(f_and(std::move(minterm)));
    }
    return f_or(std::move(disj));
}

struct Encoder {
    EncodingContext& ctx;

    FormulaPtr prov(int f, const std::vector<int>& cvars) {
        return alt_formula(ctx.model->trace.prov[std::size_t(f)], cvars, false);
    }
    FormulaPtr req(int f, const std::vector<int>& cvars) {
        return alt_formula(ctx.model->trace.req[std::size_t(f)], cvars, true);
    }

    FormulaPtr ci(const Terms& c) { return membership(ctx.model->platform, c); }
    FormulaPtr cf(const Terms& f) { return membership(ctx.model->scope, f); }

    // "the inner architecture u extends the candidate c"
    FormulaPtr guard(const Terms& c, const std::vector<int>& u) {
        std::vector<FormulaPtr> conj;
        for (std::size_t i = 0; i < c.size(); ++i)
            conj.push_back(f_implies(c[i], f_var(u[i])));
        return f_and(std::move(conj));
    }

    // f_implements over a symbolic candidate; `block` is the universal block
    // to use (fresh by default, model variables for top-level queries).
    FormulaPtr implements_one(const Terms& c, int f, std::vector<int> block) {
        FormulaPtr body = f_implies(guard(c, block), prov(f, block));
        return f_forall(std::move(block), std::move(body));
    }
    FormulaPtr implements_one(const Terms& c, int f) {
        return implements_one(c, f, ctx.fresh_block(ctx.n));
    }

    // Conjunction of guarded implements over one shared universal block:
    // AND_j (fterm_j -> (guard -> prov_j)). Sound to share the block because
    // the fterm guards never mention it.
    FormulaPtr covers_shape(const Terms& c, const Terms& f,
                            std::vector<int> block) {
        std::vector<FormulaPtr> conj;
        for (int j = 0; j < ctx.m; ++j)
            conj.push_back(f_implies(
                f[std::size_t(j)],
                f_implies(guard(c, block), prov(j, block))));
        return f_forall(std::move(block), f_and(std::move(conj)));
    }

    // Provided_by(candidate) is a scope member: indicator variables g tied to
    // implements, constrained by the scope membership minterms.
    FormulaPtr provided_in_scope(const Terms& c) {
        std::vector<int> g = ctx.fresh_block(ctx.m);
        std::vector<FormulaPtr> conj;
        for (int j = 0; j < ctx.m; ++j)
            conj.push_back(f_iff(f_var(g[std::size_t(j)]),
                                 implements_one(c, j)));
        conj.push_back(cf(terms_of(g)));
        return f_exists(std::move(g), f_and(std::move(conj)));
    }

    FormulaPtr covers(const Terms& c, const Terms& f, std::vector<int> block) {
        FormulaPtr shape = covers_shape(c, f, std::move(block));
        if (ctx.covers_mode == CoversEncoding::Lemma) return shape;
        return f_and({std::move(shape), provided_in_scope(c)});
    }
    FormulaPtr covers(const Terms& c, const Terms& f) {
        return covers(c, f, ctx.fresh_block(ctx.n));
    }

    // Exact provided-set equality; positive fixed features share one
    // universal block, everything else gets its own.
    FormulaPtr realizes(const Terms& c, const Terms& f,
                        std::vector<int> pos_block) {
        std::vector<FormulaPtr> conj;
        std::vector<FormulaPtr> shared;
        for (int j = 0; j < ctx.m; ++j) {
            const FormulaPtr& fj = f[std::size_t(j)];
            if (fj->op == Op::True) {
                shared.push_back(
                    f_implies(guard(c, pos_block), prov(j, pos_block)));
            } else if (fj->op == Op::False) {
                conj.push_back(f_not(implements_one(c, j)));
            } else {
                conj.push_back(f_iff(fj, implements_one(c, j)));
            }
        }
        if (!shared.empty())
            conj.push_back(f_forall(pos_block, f_and(std::move(shared))));
        return f_and(std::move(conj));
    }
    FormulaPtr realizes(const Terms& c, const Terms& f) {
        return realizes(c, f, ctx.fresh_block(ctx.n));
    }
};

Terms const_feats(const EncodingContext& ctx, const IdSet& F) {
    return terms_of(prop_vector(F, std::size_t(ctx.m), UniverseKind::Feature));
}
Terms const_comps(const EncodingContext& ctx, const IdSet& C) {
    return terms_of(
        prop_vector(C, std::size_t(ctx.n), UniverseKind::Component));
}

}  // namespace

FormulaPtr formula_prov(EncodingContext& ctx, int f) {
    return formula_prov(ctx, f, ctx.comp_vars());
}
FormulaPtr formula_prov(EncodingContext& ctx, int f,
                        const std::vector<int>& cvars) {
    return Encoder{ctx}.prov(f, cvars);
}
FormulaPtr formula_req(EncodingContext& ctx, int f) {
    return formula_req(ctx, f, ctx.comp_vars());
}
FormulaPtr formula_req(EncodingContext& ctx, int f,
                       const std::vector<int>& cvars) {
    return Encoder{ctx}.req(f, cvars);
}

FormulaPtr c_i_predicate(EncodingContext& ctx, const std::vector<int>& cvars) {
    return membership(ctx.model->platform, terms_of(cvars));
}
FormulaPtr c_f_predicate(EncodingContext& ctx, const std::vector<int>& fvars) {
    return membership(ctx.model->scope, terms_of(fvars));
}

QbfFormula f_implements(EncodingContext& ctx, const PropVector& C, int f) {
    Encoder e{ctx};
    return {{}, e.implements_one(terms_of(C), f, ctx.comp_vars())};
}

QbfFormula f_covers(EncodingContext& ctx, const PropVector& C,
                    const PropVector& F) {
    Encoder e{ctx};
    return {{}, e.covers(terms_of(C), terms_of(F), ctx.comp_vars())};
}

QbfFormula f_realizes(EncodingContext& ctx, const PropVector& C,
                      const PropVector& F) {
    Encoder e{ctx};
    return {{}, e.realizes(terms_of(C), terms_of(F), ctx.comp_vars())};
}

QbfFormula tcf(EncodingContext& ctx) {
    Encoder e{ctx};
    std::vector<int> c = ctx.comp_vars();
    std::vector<FormulaPtr> conj;
    for (int f = 0; f < ctx.m; ++f)
        conj.push_back(f_implies(e.prov(f, c), e.req(f, c)));
    return {{}, f_forall(std::move(c), f_and(std::move(conj)))};
}

QbfFormula encode_property(EncodingContext& ctx, const PropertyQuery& q) {
    Encoder e{ctx};
    auto m = std::size_t(ctx.m);

    switch (q.kind) {
    case PropertyKind::Complete: {
        std::vector<int> fp = ctx.fresh_block(ctx.m);
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        Terms ft = terms_of(fp), ct = terms_of(cp);
        return {{},
                f_forall(fp, f_implies(e.cf(ft),
                                       f_exists(cp, f_and({e.ci(ct),
                                                           e.covers(ct, ft)}))))};
    }
    case PropertyKind::Sound: {
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> fp = ctx.fresh_block(ctx.m);
        Terms ct = terms_of(cp), ft = terms_of(fp);
        return {{},
                f_forall(cp, f_implies(e.ci(ct),
                                       f_exists(fp, f_and({e.cf(ft),
                                                           e.covers(ct, ft)}))))};
    }
    case PropertyKind::ExistentiallyExplicit: {
        Terms ft = const_feats(ctx, q.feature_set);
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp);
        return {{}, f_exists(cp, f_and({e.ci(ct), e.realizes(ct, ft)}))};
    }
    case PropertyKind::UniversallyExplicit: {
        Terms ft = const_feats(ctx, q.feature_set);
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> dp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp), dt = terms_of(dp);
        FormulaPtr exist = f_exists(cp, f_and({e.ci(ct), e.realizes(ct, ft)}));
        FormulaPtr univ = f_forall(
            dp, f_implies(f_and({e.ci(dt), e.covers(dt, ft)}),
                          e.realizes(dt, ft)));
        return {{}, f_and({std::move(exist), std::move(univ)})};
    }
    case PropertyKind::UniqueImplementation: {
        Terms ft = const_feats(ctx, q.feature_set);
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> dp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp), dt = terms_of(dp);
        std::vector<FormulaPtr> same;
        for (int i = 0; i < ctx.n; ++i)
            same.push_back(f_iff(dt[std::size_t(i)], ct[std::size_t(i)]));
        FormulaPtr inner = f_forall(
            dp, f_implies(f_and({e.ci(dt), e.covers(dt, ft)}),
                          f_and(std::move(same))));
        return {{},
                f_exists(cp, f_and({e.ci(ct), e.covers(ct, ft),
                                    std::move(inner)}))};
    }
    case PropertyKind::Common:
    case PropertyKind::Live:
    case PropertyKind::Dead: {
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> fp = ctx.fresh_block(ctx.m);
        Terms ct = terms_of(cp), ft = terms_of(fp);
        FormulaPtr target = q.element_kind == ElementKind::Component
                                ? ct[std::size_t(q.element)]
                                : ft[std::size_t(q.element)];
        FormulaPtr product =
            f_and({e.ci(ct), e.cf(ft), e.covers(ct, ft)});
        std::vector<int> block = cp;
        block.insert(block.end(), fp.begin(), fp.end());
        if (q.kind == PropertyKind::Live)
            return {{},
                    f_exists(block, f_and({std::move(product), target}))};
        if (q.kind == PropertyKind::Dead) target = f_not(target);
        return {{},
                f_forall(block, f_implies(std::move(product), target))};
    }
    case PropertyKind::Superfluous: {
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> fp = ctx.fresh_block(ctx.m);
        std::vector<int> dp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp), ft = terms_of(fp), dt = terms_of(dp);
        FormulaPtr ante =
            f_and({ct[std::size_t(q.component)], e.ci(ct), e.cf(ft),
                   e.covers(ct, ft)});
        FormulaPtr repl = f_exists(
            dp, f_and({f_not(dt[std::size_t(q.component)]), e.ci(dt),
                       e.covers(dt, ft)}));
        std::vector<int> block = cp;
        block.insert(block.end(), fp.begin(), fp.end());
        return {{},
                f_forall(block, f_implies(std::move(ante), std::move(repl)))};
    }
    case PropertyKind::Redundant: {
        // Scope-independent reading: every platform architecture containing
        // the component has a platform sub-architecture without it that
        // provides exactly the same features.
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        std::vector<int> dp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp), dt = terms_of(dp);
        std::vector<FormulaPtr> inner{f_not(dt[std::size_t(q.component)])};
        for (int i = 0; i < ctx.n; ++i)
            inner.push_back(
                f_implies(dt[std::size_t(i)], ct[std::size_t(i)]));
        inner.push_back(e.ci(dt));
        for (int j = 0; j < ctx.m; ++j)
            inner.push_back(
                f_iff(e.implements_one(ct, j), e.implements_one(dt, j)));
        FormulaPtr repl = f_exists(dp, f_and(std::move(inner)));
        return {{},
                f_forall(cp,
                         f_implies(f_and({ct[std::size_t(q.component)],
                                          e.ci(ct)}),
                                   std::move(repl)))};
    }
    case PropertyKind::Critical: {
        std::vector<int> cp = ctx.fresh_block(ctx.n);
        Terms ct = terms_of(cp);
        return {{},
                f_forall(cp,
                         f_implies(f_and({e.ci(ct),
                                          e.implements_one(ct, q.feature)}),
                                   ct[std::size_t(q.component)]))};
    }
    case PropertyKind::Extends: {
        Terms a = const_feats(ctx, q.feature_set);
        Terms b = const_feats(ctx, q.feature_set2);
        std::vector<FormulaPtr> conj;
        for (std::size_t j = 0; j < m; ++j)
            conj.push_back(f_implies(a[j], b[j]));
        return {{}, f_and(std::move(conj))};
    }
    case PropertyKind::Extendable: {
        // Scope membership plus proper extension; the bare lemma shape
        // "exists f' with F implied" is a tautology.
        Terms a = const_feats(ctx, q.feature_set);
        std::vector<int> fp = ctx.fresh_block(ctx.m);
        Terms ft = terms_of(fp);
        std::vector<FormulaPtr> conj{e.cf(ft)};
        std::vector<FormulaPtr> strict;
        for (std::size_t j = 0; j < m; ++j) {
            conj.push_back(f_implies(a[j], ft[j]));
            strict.push_back(f_and({ft[j], f_not(a[j])}));
        }
        conj.push_back(f_or(std::move(strict)));
        return {{}, f_exists(fp, f_and(std::move(conj)))};
    }
    case PropertyKind::Tcf:
        return tcf(ctx);
    case PropertyKind::Implements:
        return f_implements(ctx,
                            prop_vector(q.component_set, std::size_t(ctx.n),
                                        UniverseKind::Component),
                            q.feature);
    case PropertyKind::Covers:
        return f_covers(ctx,
                        prop_vector(q.component_set, std::size_t(ctx.n),
                                    UniverseKind::Component),
                        prop_vector(q.feature_set, std::size_t(ctx.m),
                                    UniverseKind::Feature));
    case PropertyKind::Realizes:
        return f_realizes(ctx,
                          prop_vector(q.component_set, std::size_t(ctx.n),
                                      UniverseKind::Component),
                          prop_vector(q.feature_set, std::size_t(ctx.m),
                                      UniverseKind::Feature));
    }
    throw std::logic_error("unreachable");
}

std::vector<std::string> variable_legend(const EncodingContext& ctx) {
    std::vector<std::string> out;
    for (int i = 0; i < ctx.n; ++i)
        out.push_back("var " + std::to_string(ctx.comp_var(i)) +
                      " = component " +
                      ctx.model->components[std::size_t(i)]);
    for (int j = 0; j < ctx.m; ++j)
        out.push_back("var " + std::to_string(ctx.feat_var(j)) +
                      " = feature " + ctx.model->features[std::size_t(j)]);
    return out;
}

}  // namespace splcheck
