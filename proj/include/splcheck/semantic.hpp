// Direct set-theoretic evaluation of all product-line analyses: the reference
// engine the QBF pipeline is checked against.
#pragma once

#include "splcheck/model.hpp"

namespace splcheck {

// General two-alternative test: some prov alternative fits inside C and has a
// satisfiable requirement. On canonical relations this coincides with the
// simpler "some prov alternative is a subset of C".
bool implements(const Traceability& t, const IdSet& C, int feature);
bool implements(const SplModel& m, const IdSet& C, int feature);

IdSet provided_by(const SplModel& m, const IdSet& C);

// realizes: C provides exactly F. covers: Provided_by(C) is in scope and
// contains F.
bool realizes(const SplModel& m, const IdSet& C, const IdSet& F);
bool covers(const SplModel& m, const IdSet& C, const IdSet& F);

struct ProductPair {
    int spec;  // index into scope
    int arch;  // index into platform
    bool operator==(const ProductPair&) const = default;
};

// All (specification, architecture) pairs where the architecture covers the
// specification; ordered by spec index, then arch index.
std::vector<ProductPair> products(const SplModel& m);

bool is_complete(const SplModel& m);  // every specification covered
bool is_sound(const SplModel& m);     // every platform architecture covers

// The next four require F to be a scope member; std::invalid_argument if not.
bool is_existentially_explicit(const SplModel& m, const IdSet& F);
bool is_universally_explicit(const SplModel& m, const IdSet& F);
bool has_unique_implementation(const SplModel& m, const IdSet& F);

struct Emergence {
    int arch;       // covering architecture (platform index)
    IdSet extra;    // provided features beyond F (may be empty)
};
std::vector<Emergence> emerging(const SplModel& m, const IdSet& F);

enum class ElementKind { Feature, Component };

bool is_common(const SplModel& m, ElementKind k, int e);
bool is_live(const SplModel& m, ElementKind k, int e);
bool is_dead(const SplModel& m, ElementKind k, int e);

enum class Status { Common, Live, Dead };
struct ElementStatus {
    Status status;
    bool vacuous;  // no products: everything is classified dead
};
ElementStatus element_status(const SplModel& m, ElementKind k, int e);

bool is_superfluous(const SplModel& m, int component);
bool is_redundant(const SplModel& m, int component);
bool is_critical(const SplModel& m, int component, int feature);

bool extends(const IdSet& F, const IdSet& F2, bool proper = false);
bool is_extendable(const SplModel& m, const IdSet& F);  // proper, in scope

}  // namespace splcheck
