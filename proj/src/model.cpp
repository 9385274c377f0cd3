#include "splcheck/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace splcheck {

int SplModel::feature_index(const std::string& name) const {
    auto it = std::find(features.begin(), features.end(), name);
    return it == features.end() ? -1 : int(it - features.begin());
}

int SplModel::component_index(const std::string& name) const {
    auto it = std::find(components.begin(), components.end(), name);
    return it == components.end() ? -1 : int(it - components.begin());
}

int SplModel::scope_index(const IdSet& feature_set) const {
    for (std::size_t i = 0; i < scope.size(); ++i)
        if (scope[i].elems == feature_set) return int(i);
    return -1;
}

int SplModel::platform_index(const IdSet& component_set) const {
    for (std::size_t i = 0; i < platform.size(); ++i)
        if (platform[i].elems == component_set) return int(i);
    return -1;
}

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
    if (!s.empty() && s.back() == ',') out.push_back("");
    return out;
}

struct Parser {
    const SplModel* m;
    int line;

    int lookup(const std::string& name, UniverseKind kind) const {
        if (!valid_identifier(name))
            throw ParseError(line, "invalid identifier '" + name + "'");
        int idx = kind == UniverseKind::Feature ? m->feature_index(name)
                                                : m->component_index(name);
        if (idx < 0)
            throw ParseError(line, std::string("unknown ") +
                                       (kind == UniverseKind::Feature
                                            ? "feature '"
                                            : "component '") +
                                       name + "'");
        return idx;
    }

    IdSet id_set(const std::string& rhs, UniverseKind kind) const {
        IdSet out;
        if (trim(rhs).empty()) return out;
        for (const auto& tok : split_commas(rhs)) {
            if (tok.empty()) throw ParseError(line, "empty list element");
            out.insert(lookup(tok, kind));
        }
        return out;
    }
};

}  // namespace

SplModel parse_model(const std::string& text) {
    SplModel m;
    std::map<std::string, int> seen_ids;  // id -> line, across both universes
    std::map<std::string, int> seen_names[2];
    bool section_seen[6] = {};
    enum Section { None = -1, Feat, Comp, Scope, Platform, Prov, Req };
    Section sec = None;
    Parser p{&m, 0};

    // req lines may precede knowledge of Bottom-ness; resolved after the scan.
    std::vector<bool> prov_declared, req_declared, prov_bottom;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        p.line = lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(lineno, "malformed section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            static const std::map<std::string, Section> sections = {
                {"features", Feat},     {"components", Comp},
                {"scope", Scope},       {"platform", Platform},
                {"prov", Prov},         {"req", Req}};
            auto it = sections.find(name);
            if (it == sections.end())
                throw ParseError(lineno, "unknown section [" + name + "]");
            if (section_seen[it->second])
                throw ParseError(lineno, "duplicate section [" + name + "]");
            section_seen[it->second] = true;
            sec = it->second;
            continue;
        }

        switch (sec) {
        case None:
            throw ParseError(lineno, "content before any section header");
        case Feat:
        case Comp: {
            for (const auto& tok : split_commas(line)) {
                if (!valid_identifier(tok))
                    throw ParseError(lineno, "invalid identifier '" + tok + "'");
                if (seen_ids.count(tok))
                    throw ParseError(lineno, "duplicate identifier '" + tok +
                                                 "' (first declared on line " +
                                                 std::to_string(seen_ids[tok]) +
                                                 ")");
                seen_ids[tok] = lineno;
                (sec == Feat ? m.features : m.components).push_back(tok);
            }
            break;
        }
        case Scope:
        case Platform: {
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError(lineno, "expected 'NAME: id, id, ...'");
            std::string name = trim(line.substr(0, colon));
            if (!valid_identifier(name))
                throw ParseError(lineno, "invalid set name '" + name + "'");
            auto& dest = sec == Scope ? m.scope : m.platform;
            auto& names = seen_names[sec == Scope ? 0 : 1];
            if (names.count(name))
                throw ParseError(lineno, "duplicate name '" + name + "'");
            names[name] = lineno;
            IdSet elems = p.id_set(line.substr(colon + 1),
                                   sec == Scope ? UniverseKind::Feature
                                                : UniverseKind::Component);
            for (const auto& ns : dest)
                if (ns.elems == elems)
                    throw ParseError(lineno,
                                     "duplicate " +
                                         std::string(sec == Scope ? "scope"
                                                                  : "platform") +
                                         " entry (same set as '" + ns.name +
                                         "')");
            dest.push_back({name, elems});
            break;
        }
        case Prov:
        case Req: {
            auto arrow = line.find("<-");
            if (arrow == std::string::npos)
                throw ParseError(lineno, "expected 'feature <- comp, ...'");
            std::string fname = trim(line.substr(0, arrow));
            int f = p.lookup(fname, UniverseKind::Feature);
            auto& tr = sec == Prov ? m.trace.prov : m.trace.req;
            if (tr.size() < m.features.size()) {
                tr.resize(m.features.size());
                prov_declared.resize(m.features.size());
                req_declared.resize(m.features.size());
                prov_bottom.resize(m.features.size());
            }
            std::string rhs = trim(line.substr(arrow + 2));
            (sec == Prov ? prov_declared : req_declared)[f] = true;
            if (rhs == "!") {
                if (!tr[f].sets.empty())
                    throw ParseError(lineno,
                                     "'" + fname +
                                         "' already has alternatives; '!' "
                                         "cannot be mixed with them");
                if (tr[f].bottom)
                    throw ParseError(lineno, "duplicate '!' for '" + fname + "'");
                tr[f].bottom = true;
                if (sec == Prov) prov_bottom[f] = true;
                break;
            }
            if (tr[f].bottom)
                throw ParseError(lineno,
                                 "'" + fname +
                                     "' is declared Bottom ('!'); it cannot "
                                     "also list alternatives");
            tr[f].sets.push_back(p.id_set(rhs, UniverseKind::Component));
            break;
        }
        }
    }

    for (int s = Feat; s <= Comp; ++s)
        if (!section_seen[s])
            throw ParseError(lineno, std::string("missing section [") +
                                         (s == Feat ? "features" : "components") +
                                         "]");

    std::size_t nf = m.features.size();
    m.trace.prov.resize(nf);
    m.trace.req.resize(nf);
    prov_declared.resize(nf);
    req_declared.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        // A feature absent from [prov] has prov = Bottom; req follows suit
        // unless [req] explicitly listed something (the canonizer then
        // records the collapse).
        if (!prov_declared[f]) {
            m.trace.prov[f].bottom = true;
            if (!req_declared[f]) m.trace.req[f].bottom = true;
        }
    }
    return m;
}

SplModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

namespace {

std::string join_names(const IdSet& s, const std::vector<std::string>& names) {
    std::string out;
    for (int i : s) {
        if (!out.empty()) out += ", ";
        out += names[std::size_t(i)];
    }
    return out;
}

}  // namespace

std::string serialize_model(const SplModel& m) {
    std::ostringstream out;
    out << "[features]\n";
    for (const auto& f : m.features) out << f << "\n";
    out << "\n[components]\n";
    for (const auto& c : m.components) out << c << "\n";
    out << "\n[scope]\n";
    for (const auto& s : m.scope)
        out << s.name << ": " << join_names(s.elems, m.features) << "\n";
    out << "\n[platform]\n";
    for (const auto& a : m.platform)
        out << a.name << ": " << join_names(a.elems, m.components) << "\n";
    out << "\n[prov]\n";
    for (std::size_t f = 0; f < m.features.size(); ++f) {
        const auto& pv = m.trace.prov[f];
        if (pv.bottom) continue;  // absent from [prov] means Bottom
        for (const auto& alt : pv.sets)
            out << m.features[f] << " <- " << join_names(alt, m.components)
                << "\n";
    }
    out << "\n[req]\n";
    for (std::size_t f = 0; f < m.features.size(); ++f) {
        const auto& rv = m.trace.req[f];
        if (rv.bottom) {
            // Only written when prov is not Bottom (else implied by absence).
            if (!m.trace.prov[f].bottom) out << m.features[f] << " <- !\n";
            continue;
        }
        for (const auto& alt : rv.sets)
            out << m.features[f] << " <- " << join_names(alt, m.components)
                << "\n";
    }
    return out.str();
}

PropVector prop_vector(const IdSet& s, std::size_t universe_size,
                       UniverseKind kind) {
    PropVector v{kind, std::vector<bool>(universe_size, false)};
    for (int i : s) {
        if (i < 0 || std::size_t(i) >= universe_size)
            throw std::invalid_argument("element index out of range");
        v.bits[std::size_t(i)] = true;
    }
    return v;
}

IdSet set_of(const PropVector& v) {
    IdSet s;
    for (std::size_t i = 0; i < v.bits.size(); ++i)
        if (v.bits[i]) s.insert(int(i));
    return s;
}

bool subset(const PropVector& a, const PropVector& b) {
    if (a.kind != b.kind || a.bits.size() != b.bits.size())
        throw std::invalid_argument("prop vectors over different universes");
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] && !b.bits[i]) return false;
    return true;
}

bool subset(const IdSet& a, const IdSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace splcheck
