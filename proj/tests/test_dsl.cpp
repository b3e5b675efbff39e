#include "doctest.h"

#include "sfg/corpus.hpp"
#include "sfg/dsl.hpp"
#include "sfg/rng.hpp"

using namespace sfg;
using dsl::Document;
using dsl::ParseError;

TEST_CASE("empty input parses to an empty document") {
    Document d = dsl::parse("");
    CHECK(d.code_names().empty());
    CHECK(d.ffg_names().empty());
    CHECK(dsl::parse("  \n# just a comment\n\n") == Document{});
}

TEST_CASE("five-qubit code block parses to the additive generators") {
    Document d = dsl::parse(corpus::file("fivequbit.sfg"));
    GroupCode c = d.resolve_code("fivequbit");
    CHECK(c == GroupCode::from_pauli_rows({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}));
    // The linear block closes the two GF(4) rows into the same code.
    CHECK(d.resolve_code("fivequbit_linear") == c);
}

TEST_CASE("row forms are interchangeable") {
    Document d = dsl::parse(
        "code a {\n"
        "  pauli XZY\n"
        "}\n"
        "code b {\n"
        "  xz 101 011\n"
        "}\n"
        "code c {\n"
        "  gf4 w w2 1\n"
        "}\n");
    CHECK(d.resolve_code("a") == d.resolve_code("b"));
    CHECK(d.resolve_code("a") == d.resolve_code("c"));
}

TEST_CASE("graph blocks: edge list and adjacency rows agree") {
    Document d = dsl::parse(
        "graph a {\n"
        "  vertices 3\n"
        "  edge 1 2\n"
        "  edge 2 3\n"
        "}\n"
        "graph b {\n"
        "  adj 010\n"
        "  adj 101\n"
        "  adj 010\n"
        "}\n");
    CHECK(d.graph("a").edge_list() == d.graph("b").edge_list());
}

TEST_CASE("section blocks carry mu and close GF(4) rows") {
    Document d = dsl::parse(corpus::file("conv_rate13.sfg"));
    const TrellisSection& s = d.section("conv13");
    CHECK(s.mu == 1);
    CHECK(s.k_sym == 3);
    CHECK(s.code.rank() == 4);
    CHECK(is_self_orthogonal(s.code));
}

TEST_CASE("ffg blocks instantiate against named codes") {
    Document d = dsl::parse(corpus::file("ffg_demo.sfg"));
    Ffg g = d.instantiate_ffg("demo");
    CHECK(g.validate().empty());
    CHECK(certify_prop1(g).certificate == Certificate::SelfDual);
}

TEST_CASE("diagnostics carry positions") {
    // Dangling code reference: the diagnostic points at the reference.
    try {
        dsl::parse("ffg g {\n  halfedge t1\n  factor f1 nosuch t1\n}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.col == 13);
        CHECK(std::string(e.what()).find("nosuch") != std::string::npos);
    }

    CHECK_THROWS_AS(dsl::parse("code x {\n"), ParseError);              // unterminated
    CHECK_THROWS_AS(dsl::parse("code x {\n  pauli XQ\n}\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse("blob x {\n}\n"), ParseError);           // unknown kind
    CHECK_THROWS_AS(dsl::parse("code x {\n  pauli XX\n  pauli X\n}\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse("code x {\n}\ncode x {\n}\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse("section s {\n  gf4 0 1\n}\n"), ParseError);  // missing mu
    CHECK_THROWS_AS(dsl::parse("graph g {\n  edge 0 1\n  vertices 2\n}\n"), ParseError);
}

TEST_CASE("length statements: rank-0 codes and mismatches") {
    // A code with no rows needs a length to be well-defined.
    Document d = dsl::parse("code z {\n  length 3\n}\n");
    CHECK(d.resolve_code("z") == GroupCode::zero(PrimeField(2), 3));
    // ... and round trips through the canonical form.
    CHECK(dsl::serialize(dsl::parse(dsl::serialize(d))) == dsl::serialize(d));

    CHECK_THROWS_AS(dsl::parse("code x {\n}\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse("code x {\n  length 2\n  pauli XXX\n}\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse("code x {\n  pauli XXX\n  length 2\n}\n"), ParseError);
}

TEST_CASE("serialize: canonical, stable, parse-inverse") {
    for (const corpus::CorpusFile& f : corpus::files()) {
        if (std::string(f.name).find(".sfg") == std::string::npos) continue;
        CAPTURE(f.name);
        Document d = dsl::parse(f.contents);
        std::string once = dsl::serialize(d);
        Document d2 = dsl::parse(once);
        std::string twice = dsl::serialize(d2);
        CHECK(once == twice);  // byte-identical second serialization
        CHECK(d == d2);
    }
}

TEST_CASE("statement order does not affect the canonical form") {
    std::string a =
        "code c1 {\n  pauli XZ\n  pauli ZX\n}\n"
        "graph g1 {\n  vertices 2\n  edge 1 2\n}\n";
    std::string b =
        "graph g1 {\n  adj 01\n  adj 10\n}\n"
        "code c1 {\n  pauli ZX\n  pauli XZ\n}\n";
    CHECK(dsl::serialize(dsl::parse(a)) == dsl::serialize(dsl::parse(b)));
}

TEST_CASE("documents built from graphs round trip") {
    Document d = dsl::parse(corpus::file("graphstate5.sfg"));
    Document out;
    out.add_ffg("gs", graph_state_ffg(d.graph("gs5")));
    std::string text = dsl::serialize(out);
    Document back = dsl::parse(text);
    CHECK(back == out);
    Ffg g = back.instantiate_ffg("gs");
    CHECK(extract_global_code(g) == graph_state_code(d.graph("gs5")));
    // Shared edge code is emitted once, not per factor.
    CHECK(back.code_names().size() == out.code_names().size());
}

TEST_CASE("fuzzed inputs produce diagnostics, never crashes") {
    SplitMix64 rng(401);
    std::string seedtext = corpus::file("graphstate5.sfg") + corpus::file("fivequbit.sfg");
    int parsed = 0, rejected = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::string input;
        switch (rng.next_below(3)) {
            case 0: {  // random bytes
                std::size_t len = rng.next_below(200);
                for (std::size_t i = 0; i < len; ++i)
                    input += static_cast<char>(rng.next_below(256));
                break;
            }
            case 1: {  // truncation of a valid file
                input = seedtext.substr(0, rng.next_below(seedtext.size() + 1));
                break;
            }
            default: {  // valid file with random byte edits
                input = seedtext;
                for (int k = 0; k < 8; ++k)
                    input[rng.next_below(input.size())] =
                        static_cast<char>(32 + rng.next_below(96));
                break;
            }
        }
        try {
            Document d = dsl::parse(input);
            (void)dsl::serialize(d);
            ++parsed;
        } catch (const ParseError&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 3000);
    CHECK(rejected > 0);
}
