// Compiles product-line analyses into quantified boolean formulas.
//
// Variable numbering: components take 1..n in declaration order, features
// n+1..n+m; every parameter tuple (candidate architectures/specifications,
// inner universals, provided-set indicators) is allocated fresh from n+m+1.
#pragma once

#include "splcheck/model.hpp"
#include "splcheck/qbf.hpp"
#include "splcheck/semantic.hpp"

namespace splcheck {

// The lemma-shaped covers formula only demands F ⊆ Provided_by(C); the
// definition additionally demands Provided_by(C) ∈ scope. `Definition` is the
// default and the one that agrees with the semantic engine.
enum class CoversEncoding { Lemma, Definition };

struct EncodingContext {
    const SplModel* model;
    int n, m;    // component / feature universe sizes
    int fresh;   // next unused variable
    CoversEncoding covers_mode;

    explicit EncodingContext(const SplModel& mdl,
                             CoversEncoding mode = CoversEncoding::Definition)
        : model(&mdl),
          n(int(mdl.components.size())),
          m(int(mdl.features.size())),
          fresh(n + int(mdl.features.size()) + 1),
          covers_mode(mode) {}

    int comp_var(int i) const { return i + 1; }
    int feat_var(int j) const { return n + j + 1; }
    std::vector<int> comp_vars() const;
    std::vector<int> feat_vars() const;
    std::vector<int> fresh_block(int k);
};

// Disjunction over prov(f) alternatives of the conjunction of their members,
// read over an arbitrary component-variable vector. Bottom/empty prov is
// FALSE; empty or undefined req is TRUE.
FormulaPtr formula_prov(EncodingContext& ctx, int f);
FormulaPtr formula_prov(EncodingContext& ctx, int f,
                        const std::vector<int>& cvars);
FormulaPtr formula_req(EncodingContext& ctx, int f);
FormulaPtr formula_req(EncodingContext& ctx, int f,
                       const std::vector<int>& cvars);

// Membership minterms: the tuple equals some platform (resp. scope) member.
FormulaPtr c_i_predicate(EncodingContext& ctx, const std::vector<int>& cvars);
FormulaPtr c_f_predicate(EncodingContext& ctx, const std::vector<int>& fvars);

// Closed formulas for fixed architecture / specification arguments. The
// universal block of a single implements/covers query is the model component
// variables themselves.
QbfFormula f_implements(EncodingContext& ctx, const PropVector& C, int f);
QbfFormula f_covers(EncodingContext& ctx, const PropVector& C,
                    const PropVector& F);
QbfFormula f_realizes(EncodingContext& ctx, const PropVector& C,
                      const PropVector& F);

// Traceability-consistent-formula: every provider satisfies some requirement.
QbfFormula tcf(EncodingContext& ctx);

enum class PropertyKind {
    Complete,
    Sound,
    ExistentiallyExplicit,
    UniversallyExplicit,
    UniqueImplementation,
    Common,
    Live,
    Dead,
    Superfluous,
    Redundant,
    Critical,
    Extends,
    Extendable,
    Tcf,
    Implements,
    Covers,
    Realizes,
};

struct PropertyQuery {
    PropertyKind kind;
    IdSet feature_set;       // EE / UE / unique / extendable / covers / realizes
    IdSet feature_set2;      // extends target
    IdSet component_set;     // implements / covers / realizes
    ElementKind element_kind = ElementKind::Feature;
    int element = -1;        // common / live / dead
    int component = -1;      // superfluous / redundant / critical
    int feature = -1;        // critical / implements
};

QbfFormula encode_property(EncodingContext& ctx, const PropertyQuery& q);

// "var 3 = component Auto_Lock" lines for QDIMACS comments.
std::vector<std::string> variable_legend(const EncodingContext& ctx);

}  // namespace splcheck
