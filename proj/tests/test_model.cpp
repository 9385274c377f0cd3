#include "util.hpp"

#include <doctest.h>

using namespace splcheck;
using namespace testutil;

TEST_CASE("central-locking fixture parses with the expected shape") {
    SplModel m = load_model(fixture("ecpl.spl"));
    CHECK(m.features.size() == 8);
    CHECK(m.components.size() == 13);
    CHECK(m.scope.size() == 8);
    CHECK(m.platform.size() == 9);

    int ml = m.feature_index("Manual_Lock");
    REQUIRE(ml >= 0);
    CHECK(m.trace.prov[std::size_t(ml)].bottom);
    CHECK(m.trace.req[std::size_t(ml)].bottom);

    int pl = m.feature_index("Power_Lock");
    REQUIRE(pl >= 0);
    REQUIRE(m.trace.prov[std::size_t(pl)].sets.size() == 1);
    IdSet want{m.component_index("Door_Lock_Manager"),
               m.component_index("C_Power_Lock")};
    CHECK(m.trace.prov[std::size_t(pl)].sets[0] == want);
    CHECK(m.trace.req[std::size_t(pl)].sets[0] == want);
}

TEST_CASE("name lookups") {
    SplModel m = load_model(fixture("ecpl.spl"));
    CHECK(m.feature_index("no_such_feature") == -1);
    CHECK(m.component_index("Auto_Lock") >= 0);
    CHECK(m.scope_index(m.scope[3].elems) == 3);
    CHECK(m.platform_index(m.platform[6].elems) == 6);
    CHECK(m.platform_index(IdSet{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}) == -1);
}

TEST_CASE("serialize/parse round trip on the fixtures") {
    for (const char* name : {"ecpl.spl", "illustrative.spl"}) {
        SplModel m = load_model(fixture(name));
        CHECK(parse_model(serialize_model(m)) == m);
    }
}

TEST_CASE("serialize/parse round trip on random models") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 50; ++i) {
        SplModel m = random_model(rng);
        // The text format has no spelling for an empty-but-defined prov list
        // (absence means Bottom), so normalize those before the trip.
        for (std::size_t f = 0; f < m.features.size(); ++f) {
            auto& pv = m.trace.prov[f];
            auto& rv = m.trace.req[f];
            if (!pv.bottom && pv.sets.empty()) pv.bottom = true;
            if (pv.bottom && !rv.bottom && rv.sets.empty()) rv.bottom = true;
        }
        SplModel back = parse_model(serialize_model(m));
        CHECK(back == m);
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_model(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("[features]\nf1\nf1\n") == 3);           // duplicate name
    CHECK(line_of("junk before any section\n") == 1);      // no section yet
    CHECK(line_of("[features]\nf1\n[nonsense]\n") == 3);   // unknown section
    CHECK(line_of("[features]\nf1\n[components]\nc1\n"
                  "[prov]\ng <- c1\n") == 6);               // unknown feature
    CHECK(line_of("[features]\nf1\n[components]\nc1\n"
                  "[prov]\nf1 <- c2\n") == 6);              // unknown component
    CHECK(line_of("[features]\nf1\n[components]\nc1\n"
                  "[scope]\nS1: c1\n") == 6);               // wrong universe
    CHECK(line_of("[features]\nf1\n[components]\nc1\n"
                  "[prov]\nf1 <- !\nf1 <- c1\n") == 7);     // '!' then alts
}

TEST_CASE("absent prov with declared req parses as req given, prov bottom") {
    SplModel m = parse_model(
        "[features]\nf1\nf2\n[components]\nc1\n"
        "[prov]\nf1 <- c1\n[req]\nf2 <- c1\n");
    CHECK(m.trace.prov[1].bottom);
    CHECK_FALSE(m.trace.req[1].bottom);
    // f1's unspoken req stays undefined, which reads as trivially satisfied
    CHECK_FALSE(m.trace.req[0].bottom);
    CHECK(m.trace.req[0].undefined_or_empty());
}

TEST_CASE("prop_vector and set_of are inverse") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        int n = 1 + int(rng() % 8);
        IdSet s = random_subset(rng, n);
        PropVector v = prop_vector(s, std::size_t(n), UniverseKind::Component);
        CHECK(v.bits.size() == std::size_t(n));
        CHECK(set_of(v) == s);
    }
}

TEST_CASE("subset agrees between set and vector forms, exhaustively") {
    const int n = 6;
    for (unsigned a = 0; a < (1u << n); ++a) {
        for (unsigned b = 0; b < (1u << n); ++b) {
            IdSet sa, sb;
            for (int i = 0; i < n; ++i) {
                if (a >> i & 1) sa.insert(i);
                if (b >> i & 1) sb.insert(i);
            }
            bool want = (a & ~b) == 0;
            CHECK(subset(sa, sb) == want);
            CHECK(subset(prop_vector(sa, n, UniverseKind::Feature),
                         prop_vector(sb, n, UniverseKind::Feature)) == want);
        }
    }
}

TEST_CASE("subset rejects mismatched vector kinds") {
    PropVector a{UniverseKind::Feature, {true, false}};
    PropVector b{UniverseKind::Component, {true, true}};
    CHECK_THROWS_AS((void)subset(a, b), std::invalid_argument);
}
