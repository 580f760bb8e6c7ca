#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomnfa/errors.hpp"
#include "atomnfa/io.hpp"
#include "support.hpp"

using namespace atomnfa;
using namespace atomnfa::testing;

TEST_CASE("automaton text round trips") {
    Dfa d = fix_ab();
    Automaton back = parse_automaton(write_dfa(d), "ab.dfa");
    REQUIRE(std::holds_alternative<Dfa>(back));
    const Dfa& d2 = std::get<Dfa>(back);
    CHECK(d2.alphabet == d.alphabet);
    CHECK(d2.trans == d.trans);
    CHECK(d2.init == d.init);
    CHECK(d2.finals == d.finals);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        Nfa n = random_nfa(rng, 4, ab());
        Automaton a = parse_automaton(write_nfa(n));
        REQUIRE(std::holds_alternative<Nfa>(a));
        const Nfa& n2 = std::get<Nfa>(a);
        CHECK(n2.trans == n.trans);
        CHECK(n2.inits == n.inits);
        CHECK(n2.finals == n.finals);
    }
}

TEST_CASE("automaton parser diagnostics carry file and line") {
    try {
        parse_automaton("type dfa\nalphabet a b\nstates 1\ninit 0\nfinal\n"
                        "trans 0 a 0\ntrans 0 c 0\n", "bad.dfa");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.file == "bad.dfa");
        CHECK(e.line == 7);
    }
    // incomplete dfa table
    CHECK_THROWS_AS(parse_automaton("type dfa\nalphabet a\nstates 1\ninit 0\n"
                                    "final 0\n"),
                    ParseError);
    // empty alphabet is rejected
    CHECK_THROWS_AS(parse_automaton("type nfa\nalphabet\nstates 1\ninit 0\n"
                                    "final 0\n"),
                    ParseError);
    // comments and blank lines are fine
    Automaton ok = parse_automaton(
        "# a comment\ntype dfa\nalphabet a\nstates 1\n\ninit 0\nfinal 0\n"
        "trans 0 a 0  # loop\n");
    CHECK(std::holds_alternative<Dfa>(ok));
}

TEST_CASE("lattice and morphism round trips") {
    for (const FinLattice& s : lattices_up_to(5)) {
        FinLattice back = parse_lattice(write_lattice(s));
        CHECK(back.leq_table() == s.leq_table());
    }
    // indices need not be ordered bottom-up, so this one is fine
    CHECK(parse_lattice("lattice 2\n10\n11\n").size() == 2);
    // antisymmetry violation
    CHECK_THROWS_AS(parse_lattice("lattice 2\n11\n11\n"), ParseError);

    auto dom = share(chain(3));
    auto cod = share(diamond());
    JslMorphism f = ostar(0, 3, dom, cod);
    std::string dom_text = write_lattice(*dom);
    std::string cod_text = write_lattice(*cod);
    auto loader = [&](const std::string& name) {
        return name == "dom.lat" ? dom_text : cod_text;
    };
    JslMorphism back =
        parse_morphism(write_morphism(f, "dom.lat", "cod.lat"), loader);
    CHECK(back.map() == f.map());
    CHECK(back.dom() == *dom);
    CHECK(back.cod() == *cod);
}

TEST_CASE("relation round trips keep labels") {
    Rel r = rel_r0();
    r.row_labels = {"p", "q"};
    r.col_labels = {"x", "y"};
    Rel back = parse_rel(write_rel(r));
    CHECK(back == r);
    CHECK(back.row_labels == r.row_labels);
    CHECK(back.col_labels == r.col_labels);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        Rel rr = random_rel(rng, 5, 5);
        CHECK(parse_rel(write_rel(rr)) == rr);
    }
    Rel zero(0, 3);
    CHECK(parse_rel(write_rel(zero)) == zero);
}

TEST_CASE("monoid round trips") {
    MonoidRecognizer m = syntactic_monoid(fix_ab());
    MonoidRecognizer back = parse_monoid(write_monoid(m));
    CHECK(back.size == m.size);
    CHECK(back.table == m.table);
    CHECK(back.letter_map == m.letter_map);
    CHECK(back.finals == m.finals);
    CHECK(back.alphabet == m.alphabet);

    // 1 . 0 = 0 breaks the identity law for element 0
    CHECK_THROWS_AS(parse_monoid("monoid 2\n0 1\n0 1\nh a 1\nfinal 0\n"),
                    ParseError);
}

TEST_CASE("cover round trips") {
    BicliqueCover c;
    c.bicliques.push_back({Bits::single(2, 0), Bits::ones(2)});
    c.bicliques.push_back({Bits::single(2, 1), Bits::single(2, 1)});
    BicliqueCover back = parse_cover(write_cover(c), 2, 2);
    REQUIRE(back.bicliques.size() == 2);
    CHECK(back.bicliques[0] == c.bicliques[0]);
    CHECK(back.bicliques[1] == c.bicliques[1]);
}

TEST_CASE("certificate round trips") {
    Dfa a = fix_ab(), b = fix_ba();
    Nfa rfsa = nfa_of_join_irreducibles(sld_lattice(derivative_system(a, b)));
    Certificate c = extract_certificate(rfsa, a, b);
    c.instance_digest = instance_digest(a, b);
    Certificate back = parse_certificate(write_certificate(c, a.alphabet));
    CHECK(back.kind == c.kind);
    CHECK(back.k == c.k);
    CHECK(back.instance_digest == c.instance_digest);
    CHECK(back.s == c.s);
    CHECK(back.p == c.p);
    CHECK(back.q == c.q);
    CHECK(back.t == c.t);
    CHECK(verify_atomic_certificate(a, b, back, back.k));
}

TEST_CASE("digests are stable and order sensitive") {
    CHECK(digest64("abc") == digest64("abc"));
    CHECK(digest64("abc") != digest64("acb"));
    CHECK(digest_hex(digest64("")).size() == 16);
    CHECK(instance_digest(fix_ab(), fix_ba()) !=
          instance_digest(fix_ba(), fix_ab()));
}
