// Core data model for software product lines with provides/requires
// traceability: feature and component universes, scope (specifications),
// platform (architectures), and the traceability relation itself.
#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace splcheck {

enum class UniverseKind { Feature, Component };

// Indices into one of the two universes, in declaration order.
using IdSet = std::set<int>;

// 0/1 tuple indexed like the corresponding universe.
struct PropVector {
    UniverseKind kind;
    std::vector<bool> bits;

    bool operator==(const PropVector&) const = default;
};

// A named member of the scope or the platform.
struct NamedSet {
    std::string name;
    IdSet elems;

    bool operator==(const NamedSet&) const = default;
};

// prov(f) or req(f): either Bottom or a list of alternative component sets.
// Bottom is distinct from an empty list of alternatives.
struct AltSets {
    bool bottom = false;
    std::vector<IdSet> sets;

    bool is_bottom() const { return bottom; }
    bool undefined_or_empty() const { return bottom || sets.empty(); }
    bool operator==(const AltSets&) const = default;
};

struct Traceability {
    std::vector<AltSets> prov;  // indexed by feature
    std::vector<AltSets> req;

    bool operator==(const Traceability&) const = default;
};

struct SplModel {
    std::vector<std::string> features;    // declaration order
    std::vector<std::string> components;  // declaration order
    std::vector<NamedSet> scope;          // specifications
    std::vector<NamedSet> platform;       // architectures
    Traceability trace;

    bool operator==(const SplModel&) const = default;

    int feature_index(const std::string& name) const;
    int component_index(const std::string& name) const;
    int scope_index(const IdSet& feature_set) const;     // -1 if absent
    int platform_index(const IdSet& component_set) const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

// Parses the sectioned model format ([features], [components], [scope],
// [platform], [prov], [req]); '#' starts a comment. Throws ParseError.
SplModel parse_model(const std::string& text);
SplModel load_model(const std::string& path);

// Deterministic textual form; parse_model(serialize_model(m)) == m.
std::string serialize_model(const SplModel& m);

PropVector prop_vector(const IdSet& s, std::size_t universe_size,
                       UniverseKind kind);
IdSet set_of(const PropVector& v);

// a ⊆ b, elementwise over vectors of the same kind and length.
bool subset(const PropVector& a, const PropVector& b);
bool subset(const IdSet& a, const IdSet& b);

}  // namespace splcheck
