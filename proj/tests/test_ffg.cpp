#include "doctest.h"

#include "oracles.hpp"
#include "random_gen.hpp"
#include "sfg/ffg.hpp"

using namespace sfg;

namespace {

// The running three-factor topology: f1(t1, m1, m3), f2(t2, m1, m2),
// f3(t3, t4, m2, m3).
Ffg three_factor_graph(const GroupCode& c1, const GroupCode& c2, const GroupCode& c3) {
    Ffg g(c1.field());
    for (const char* t : {"t1", "t2", "t3", "t4"}) g.add_half_edge(t);
    for (const char* m : {"m1", "m2", "m3"}) g.add_edge(m, 1);
    g.add_factor("f1", {"t1", "m1", "m3"}, c1);
    g.add_factor("f2", {"t2", "m1", "m2"}, c2);
    g.add_factor("f3", {"t3", "t4", "m2", "m3"}, c3);
    return g;
}

Ffg random_three_factor(SplitMix64& rng, testgen::LocalCodeKind kind) {
    PrimeField f2(2);
    auto make = [&](std::size_t pairs) {
        switch (kind) {
            case testgen::LocalCodeKind::SelfOrthogonal:
                return testgen::random_self_orthogonal(rng, f2, pairs, rng.next_below(pairs + 1));
            case testgen::LocalCodeKind::SelfDual:
                return testgen::random_self_dual(rng, f2, pairs);
            default:
                return testgen::random_code(rng, f2, pairs);
        }
    };
    return three_factor_graph(make(3), make(3), make(4));
}

} // namespace

TEST_CASE("validate accepts the three-factor topology") {
    PrimeField f2(2);
    Ffg g = three_factor_graph(GroupCode::full(f2, 3), GroupCode::full(f2, 3),
                               GroupCode::full(f2, 4));
    CHECK(g.validate().empty());
}

TEST_CASE("validate flags structural problems") {
    PrimeField f2(2);

    // Edge with a single attachment.
    {
        Ffg g(f2);
        g.add_half_edge("t1");
        g.add_edge("m1", 1);
        g.add_factor("f1", {"t1", "m1"}, GroupCode::full(f2, 2));
        auto v = g.validate();
        REQUIRE(v.size() == 1);
        CHECK(v[0].element == "m1");
    }
    // Factor whose code length differs from its port multiplicities.
    {
        Ffg g(f2);
        g.add_half_edge("t1");
        g.add_factor("f1", {"t1"}, GroupCode::full(f2, 2));
        auto v = g.validate();
        REQUIRE(v.size() == 1);
        CHECK(v[0].element == "f1");
    }
    // Half-edge used twice; unknown variable; duplicate names.
    {
        Ffg g(f2);
        g.add_half_edge("t1");
        g.add_half_edge("t1");
        g.add_factor("f1", {"t1", "t1", "nope"}, GroupCode::full(f2, 2));
        CHECK(g.validate().size() >= 3);
    }
    // Degree-3 edge is a violation until normalized.
    {
        Ffg g(f2);
        g.add_edge("m", 1);
        g.add_half_edge("t1");
        g.add_half_edge("t2");
        g.add_half_edge("t3");
        g.add_factor("f1", {"t1", "m"}, GroupCode::full(f2, 2));
        g.add_factor("f2", {"t2", "m"}, GroupCode::full(f2, 2));
        g.add_factor("f3", {"t3", "m"}, GroupCode::full(f2, 2));
        auto v = g.validate();
        REQUIRE(v.size() == 1);
        CHECK(v[0].element == "m");
        CHECK_THROWS_AS(extract_global_code(g), std::invalid_argument);
    }
}

TEST_CASE("extract: single factor with only half-edges is the local code") {
    SplitMix64 rng(51);
    PrimeField f2(2);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        GroupCode c = testgen::random_code(rng, f2, n);
        Ffg g(f2);
        std::vector<std::string> ports;
        for (std::size_t i = 0; i < n; ++i) {
            ports.push_back("t" + std::to_string(i + 1));
            g.add_half_edge(ports.back());
        }
        g.add_factor("f1", ports, c);
        CHECK(extract_global_code(g) == c);
    }
}

TEST_CASE("extract: full local codes impose no constraint") {
    PrimeField f2(2);
    Ffg g(f2);
    g.add_half_edge("t1");
    g.add_half_edge("t2");
    g.add_edge("m", 2);
    g.add_factor("f1", {"t1", "m"}, GroupCode::full(f2, 3));
    g.add_factor("f2", {"t2", "m"}, GroupCode::full(f2, 3));
    CHECK(extract_global_code(g) == GroupCode::full(f2, 2));
}

TEST_CASE("extract matches the sequential-join oracle") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        Ffg g = random_three_factor(rng, testgen::LocalCodeKind::SelfOrthogonal);
        CHECK(oracle::equals_code(oracle::brute_extract_set(g), extract_global_code(g)));
    }
    // Arbitrary local codes as well.
    for (int trial = 0; trial < 40; ++trial) {
        Ffg g = random_three_factor(rng, testgen::LocalCodeKind::Arbitrary);
        CHECK(oracle::equals_code(oracle::brute_extract_set(g), extract_global_code(g)));
    }
    // And random topologies.
    PrimeField f2(2);
    for (int trial = 0; trial < 60; ++trial) {
        Ffg g = testgen::random_ffg(rng, f2, 4, 3, testgen::LocalCodeKind::Arbitrary);
        CHECK(oracle::equals_code(oracle::brute_extract_set(g), extract_global_code(g)));
    }
}

TEST_CASE("extract is invariant under factor reordering and edge renaming") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 15; ++trial) {
        Ffg g = random_three_factor(rng, testgen::LocalCodeKind::Arbitrary);
        GroupCode base = extract_global_code(g);

        Ffg reordered(g.field());
        for (const HalfEdge& h : g.half_edges()) reordered.add_half_edge(h.name);
        for (const EdgeVar& e : g.edges()) reordered.add_edge(e.name, e.mu);
        for (std::size_t i = g.factors().size(); i-- > 0;) {
            const FactorNode& fn = g.factors()[i];
            reordered.add_factor(fn.name, fn.ports, fn.code);
        }
        CHECK(extract_global_code(reordered) == base);

        Ffg renamed(g.field());
        auto rn = [](const std::string& s) { return "var_" + s; };
        for (const HalfEdge& h : g.half_edges()) renamed.add_half_edge(h.name);
        for (const EdgeVar& e : g.edges()) renamed.add_edge(rn(e.name), e.mu);
        for (const FactorNode& fn : g.factors()) {
            std::vector<std::string> ports;
            for (const std::string& p : fn.ports)
                ports.push_back(g.is_half_edge(p) ? p : rn(p));
            renamed.add_factor(fn.name, ports, fn.code);
        }
        CHECK(extract_global_code(renamed) == base);
    }
}

TEST_CASE("dualize: self-dual local codes are a fixed point") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        Ffg g = random_three_factor(rng, testgen::LocalCodeKind::SelfDual);
        Ffg d = dualize(g);
        for (std::size_t i = 0; i < g.factors().size(); ++i)
            CHECK(d.factors()[i].code == g.factors()[i].code);
    }
}

TEST_CASE("dualize requires p = 2") {
    PrimeField f3(3);
    Ffg g(f3);
    g.add_half_edge("t1");
    g.add_factor("f1", {"t1"}, GroupCode::full(f3, 1));
    CHECK_THROWS_AS(dualize(g), std::invalid_argument);
    CHECK_NOTHROW(dualize_general(g));
}

TEST_CASE("duality round trip: extract(dualize(g)) == dual(extract(g))") {
    SplitMix64 rng(67);
    PrimeField f2(2);
    for (int trial = 0; trial < 120; ++trial) {
        Ffg g = trial % 2 ? testgen::random_ffg(rng, f2, 4, 3, testgen::LocalCodeKind::Arbitrary)
                          : random_three_factor(rng, testgen::LocalCodeKind::Arbitrary);
        GroupCode lhs = extract_global_code(dualize(g));
        GroupCode rhs = dual(extract_global_code(g));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("dualizing twice recovers the original global code") {
    SplitMix64 rng(71);
    PrimeField f2(2);
    for (int trial = 0; trial < 30; ++trial) {
        Ffg g = testgen::random_ffg(rng, f2, 3, 3, testgen::LocalCodeKind::Arbitrary);
        CHECK(extract_global_code(dualize(dualize(g))) == extract_global_code(g));
    }
}

TEST_CASE("dualize_general at p = 3 matches the brute-force dual") {
    SplitMix64 rng(73);
    PrimeField f3(3);
    for (int trial = 0; trial < 50; ++trial) {
        // Single- and two-factor graphs, n_i <= 2 to keep 3^(2n) small.
        Ffg g(f3);
        bool two = rng.next_below(2);
        if (!two) {
            std::size_t n = 1 + rng.next_below(2);
            std::vector<std::string> ports;
            for (std::size_t i = 0; i < n; ++i) {
                ports.push_back("t" + std::to_string(i + 1));
                g.add_half_edge(ports.back());
            }
            g.add_factor("f1", ports, testgen::random_code(rng, f3, n));
        } else {
            g.add_half_edge("t1");
            g.add_half_edge("t2");
            g.add_edge("m1", 1);
            g.add_factor("f1", {"t1", "m1"}, testgen::random_code(rng, f3, 2));
            g.add_factor("f2", {"t2", "m1"}, testgen::random_code(rng, f3, 2));
        }

        GroupCode direct = extract_global_code(g);
        Ffg dg = dualize_general(g);
        CHECK(dg.validate().empty());
        GroupCode via_ffg = extract_global_code(dg);
        CHECK(via_ffg == dual(direct));
        CHECK(oracle::brute_dual_set(direct) == oracle::code_set(via_ffg));

        // Round trip at odd characteristic.
        CHECK(extract_global_code(dualize_general(dg)) == direct);
    }
}

TEST_CASE("dualize_general at p = 2 degenerates to equality ties") {
    SplitMix64 rng(79);
    PrimeField f2(2);
    Ffg g = random_three_factor(rng, testgen::LocalCodeKind::Arbitrary);
    Ffg dg = dualize_general(g);
    // Negation factors at p = 2 are equality factors.
    for (const FactorNode& fn : dg.factors())
        if (fn.name.rfind("~", 0) == 0) CHECK(fn.code == equality_code(f2, 1, 2));
    CHECK(extract_global_code(dg) == dual(extract_global_code(g)));
}

TEST_CASE("contract_negations reproduces the direct dual graph") {
    SplitMix64 rng(83);
    PrimeField f2(2);
    for (int trial = 0; trial < 15; ++trial) {
        Ffg g = testgen::random_ffg(rng, f2, 4, 3, testgen::LocalCodeKind::Arbitrary);
        Ffg contracted = contract_negations(dualize_general(g));
        Ffg direct = dualize(g);
        CHECK(contracted.factors().size() == direct.factors().size());
        CHECK(contracted.edges().size() == direct.edges().size());
        CHECK(extract_global_code(contracted) == extract_global_code(direct));
    }
}

TEST_CASE("normalize_variable ties replicas with an equality factor") {
    PrimeField f2(2);
    SplitMix64 rng(89);
    for (int trial = 0; trial < 25; ++trial) {
        // Three factors sharing one degree-3 edge plus private outputs.
        Ffg g(f2);
        g.add_edge("m", 1);
        for (int i = 1; i <= 3; ++i) {
            std::string t = "t" + std::to_string(i);
            g.add_half_edge(t);
            g.add_factor("f" + std::to_string(i), {t, "m"}, testgen::random_code(rng, f2, 2));
        }
        REQUIRE_FALSE(g.validate().empty());

        Ffg norm = normalize_variable(g, "m");
        CHECK(norm.validate().empty());
        // The equality factor is the repetition code per symbol pair.
        CHECK(norm.factors().back().code == equality_code(f2, 1, 3));
        // The oracle evaluates the shared-variable semantics directly.
        CHECK(oracle::equals_code(oracle::brute_extract_set(g), extract_global_code(norm)));
    }

    Ffg g(f2);
    g.add_half_edge("t1");
    g.add_half_edge("t2");
    g.add_edge("m", 1);
    g.add_factor("f1", {"t1", "m"}, GroupCode::full(f2, 2));
    g.add_factor("f2", {"t2", "m"}, GroupCode::full(f2, 2));
    CHECK_THROWS_AS(normalize_variable(g, "m"), std::invalid_argument);
    CHECK_THROWS_AS(normalize_variable(g, "zz"), std::invalid_argument);
}

TEST_CASE("equality and negation codes") {
    PrimeField f2(2);
    // Degree-2 equality (the tail-biting tie) is self-dual.
    CHECK(is_self_dual(equality_code(f2, 1, 2)));
    CHECK(is_self_dual(equality_code(f2, 2, 2)));
    // Degree-3 equality is not self-orthogonal (odd overlap).
    CHECK_FALSE(is_self_orthogonal(equality_code(f2, 1, 3)));
    // The zero code is self-orthogonal but not self-dual.
    CHECK(is_self_orthogonal(GroupCode::zero(f2, 2)));
    CHECK_FALSE(is_self_dual(GroupCode::zero(f2, 2)));
    // At p = 2 negation and equality coincide.
    CHECK(negation_code(f2, 2) == equality_code(f2, 2, 2));

    PrimeField f3(3);
    GroupCode neg3 = negation_code(f3, 1);
    CHECK(neg3.rank() == 2);
    // (a, -a) pairs only.
    CHECK(neg3.contains(SympVector(f3, {1, 2}, {0, 0})));
    CHECK_FALSE(neg3.contains(SympVector(f3, {1, 1}, {0, 0})));
}

TEST_CASE("certify_prop1") {
    PrimeField f2(2);
    SplitMix64 rng(97);

    // All self-dual -> SelfDual certificate.
    Ffg sd = random_three_factor(rng, testgen::LocalCodeKind::SelfDual);
    CHECK(certify_prop1(sd).certificate == Certificate::SelfDual);

    // Zero codes of even length are self-orthogonal, not self-dual.
    Ffg so(f2);
    so.add_half_edge("t1");
    so.add_half_edge("t2");
    so.add_factor("f1", {"t1", "t2"}, GroupCode::zero(f2, 2));
    CertifyResult res = certify_prop1(so);
    CHECK(res.certificate == Certificate::SelfOrthogonal);

    // A non-self-orthogonal factor spoils the certificate and is named.
    Ffg bad(f2);
    bad.add_half_edge("t1");
    bad.add_half_edge("t2");
    bad.add_factor("good", {"t1"}, GroupCode::from_pauli_rows({"X"}));
    bad.add_factor("spoiler", {"t2"}, GroupCode::full(f2, 1));
    res = certify_prop1(bad);
    CHECK(res.certificate == Certificate::NoCertificate);
    bool named = false;
    for (const FactorReport& fr : res.factors)
        if (!fr.self_orthogonal) {
            CHECK(fr.factor == "spoiler");
            named = true;
        }
    CHECK(named);
}

TEST_CASE("certification is monotone in the factor set") {
    SplitMix64 rng(99);
    PrimeField f2(2);
    for (int trial = 0; trial < 20; ++trial) {
        Ffg g = random_three_factor(rng, testgen::LocalCodeKind::SelfDual);
        Certificate before = certify_prop1(g).certificate;

        // Adding a non-self-orthogonal factor can only degrade the
        // certificate.
        Ffg worse = g;
        worse.add_half_edge("spoil_t");
        worse.add_factor("spoil", {"spoil_t"}, GroupCode::full(f2, 1));
        CHECK(certify_prop1(worse).certificate == Certificate::NoCertificate);

        // Adding a self-orthogonal, non-self-dual factor degrades
        // SelfDual to SelfOrthogonal but never further.
        Ffg milder = g;
        milder.add_half_edge("zero_t");
        milder.add_factor("zero", {"zero_t"}, GroupCode::zero(f2, 1));
        Certificate after = certify_prop1(milder).certificate;
        CHECK(after == Certificate::SelfOrthogonal);
        CHECK(before == Certificate::SelfDual);
    }
}

TEST_CASE("composition rule: certified graphs extract certified codes") {
    SplitMix64 rng(101);
    PrimeField f2(2);
    for (int trial = 0; trial < 60; ++trial) {
        Ffg g = trial % 2
                    ? testgen::random_ffg(rng, f2, 4, 3, testgen::LocalCodeKind::SelfOrthogonal)
                    : random_three_factor(rng, testgen::LocalCodeKind::SelfOrthogonal);
        CHECK(is_self_orthogonal(extract_global_code(g)));
    }
    for (int trial = 0; trial < 60; ++trial) {
        Ffg g = trial % 2 ? testgen::random_ffg(rng, f2, 4, 3, testgen::LocalCodeKind::SelfDual)
                          : random_three_factor(rng, testgen::LocalCodeKind::SelfDual);
        CHECK(is_self_dual(extract_global_code(g)));
    }
}
