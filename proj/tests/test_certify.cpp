#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomnfa/certify.hpp"
#include "atomnfa/errors.hpp"
#include "atomnfa/speclang.hpp"
#include "support.hpp"

using namespace atomnfa;
using namespace atomnfa::testing;

namespace {

Nfa canonical_rfsa(const Dfa& a, const Dfa& b) {
    return nfa_of_join_irreducibles(sld_lattice(derivative_system(a, b)));
}

// All (table, position) choices of a single certificate bit.
std::vector<Certificate> all_single_bit_mutations(const Certificate& c) {
    std::vector<Certificate> out;
    auto flip_in = [&](BitMatrix Certificate::* field) {
        const BitMatrix& m = c.*field;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                Certificate mut = c;
                (mut.*field).flip(i, j);
                out.push_back(std::move(mut));
            }
    };
    for (int i = 0; i < c.s.rows; ++i)
        for (int j = 0; j < c.s.cols; ++j) {
            Certificate mut = c;
            mut.s.bits.flip(i, j);
            out.push_back(std::move(mut));
        }
    flip_in(&Certificate::p);
    flip_in(&Certificate::q);
    for (std::size_t t = 0; t < c.t.size(); ++t)
        for (int i = 0; i < c.t[t].rows(); ++i)
            for (int j = 0; j < c.t[t].cols(); ++j) {
                Certificate mut = c;
                mut.t[t].flip(i, j);
                out.push_back(std::move(mut));
            }
    return out;
}

}  // namespace

TEST_CASE("extracted certificate of the canonical acceptor verifies") {
    Dfa a = fix_ab(), b = fix_ba();
    Nfa rfsa = canonical_rfsa(a, b);
    REQUIRE(rfsa.state_count == 2);
    Certificate c = extract_certificate(rfsa, a, b);
    CHECK(c.s.rows <= 2);
    CHECK(verify_atomic_certificate(a, b, c, 2));
    CHECK_FALSE(verify_atomic_certificate(a, b, c, c.s.rows - 1));

    // corrupting any single transition bit breaks some equation or, when
    // it still verifies, still packs a correct acceptor
    LowerPath lp = lower_path(derivative_system(a, b));
    for (const Certificate& mut : all_single_bit_mutations(c)) {
        bool ok;
        try {
            ok = verify_atomic_certificate(a, b, mut, 2);
        } catch (const Error&) {
            continue;
        }
        if (ok) {
            Nfa packed = certificate_to_nfa(mut, lp);
            CHECK(equivalent(packed, a));
            CHECK(is_atomic(packed));
        }
    }
}

TEST_CASE("trivial language has the all-ones one-state certificate") {
    Dfa s = sigma_star();
    Certificate c;
    c.kind = CertKind::atomic;
    c.k = 1;
    c.s = Rel(1, 1);
    c.s.set(0, 0);
    c.p = BitMatrix(1, 1);
    c.p.set(0, 0);
    c.q = BitMatrix(1, 1);
    c.q.set(0, 0);
    c.t.assign(2, c.p);
    CHECK(verify_atomic_certificate(s, s, c, 1));

    LowerPath lp = lower_path(derivative_system(s, s));
    Nfa packed = certificate_to_nfa(c, lp);
    CHECK(packed.state_count == 1);
    CHECK(equivalent(packed, s));
}

TEST_CASE("certificates pack the acceptor they certify") {
    Dfa a = fix_ab(), b = fix_ba();
    Certificate c = extract_certificate(canonical_rfsa(a, b), a, b);
    LowerPath lp = lower_path(derivative_system(a, b));
    Nfa packed = certificate_to_nfa(c, lp);
    CHECK(packed.state_count == 2);
    CHECK(equivalent(packed, a));
    CHECK(is_atomic(packed));

    Dfa l3 = ln_family(3);
    Dfa l3r = rev_pair_of(l3);
    Certificate c3 = extract_certificate(canonical_rfsa(l3, l3r), l3, l3r);
    CHECK(verify_atomic_certificate(l3, l3r, c3, 3));
    Nfa packed3 = certificate_to_nfa(c3, lower_path(derivative_system(l3, l3r)));
    CHECK(packed3.state_count == 3);
    CHECK(equivalent(packed3, l3));
}

TEST_CASE("extracting from the atomaton uses the class count") {
    Dfa a = fix_ab(), b = fix_ba();
    Nfa at = atomaton(derivative_system(a, b));
    Certificate c = extract_certificate(at, a, b);
    CHECK(c.s.rows <= 3);
    CHECK(verify_atomic_certificate(a, b, c, 3));

    Nfa one = to_nfa(sigma_star());
    Certificate triv = extract_certificate(one, sigma_star(), sigma_star());
    CHECK(verify_atomic_certificate(sigma_star(), sigma_star(), triv, 1));
}

TEST_CASE("extraction rejects bad inputs") {
    Dfa a = fix_ab(), b = fix_ba();
    CHECK_THROWS_AS(extract_certificate(to_nfa(sigma_star()), a, b),
                    LanguageMismatch);
    // a non-atomic acceptor of a*b: duplicate the final state reachability
    Nfa bad = Nfa::make(ab(), 2, {0, 1}, {1},
                        {{0}, {1}, {}, {}});
    if (equivalent(bad, a) && !is_atomic(bad))
        CHECK_THROWS_AS(extract_certificate(bad, a, b), NotAtomic);
}

TEST_CASE("certificate equations survive permuting the object") {
    Dfa a = fix_ab(), b = fix_ba();
    Certificate c = extract_certificate(atomaton(derivative_system(a, b)), a, b);
    REQUIRE(verify_atomic_certificate(a, b, c, 3));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> pr(c.s.rows), pc(c.s.cols);
        for (int i = 0; i < c.s.rows; ++i) pr[i] = i;
        for (int j = 0; j < c.s.cols; ++j) pc[j] = j;
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        Certificate perm = c;
        perm.s = Rel(c.s.rows, c.s.cols);
        for (int i = 0; i < c.s.rows; ++i)
            for (int j = 0; j < c.s.cols; ++j)
                if (c.s.test(i, j)) perm.s.set(pr[i], pc[j]);
        perm.p = BitMatrix(c.p.rows(), c.p.cols());
        for (int i = 0; i < c.p.rows(); ++i)
            for (int j = 0; j < c.p.cols(); ++j)
                if (c.p.test(i, j)) perm.p.set(i, pc[j]);
        perm.q = BitMatrix(c.q.rows(), c.q.cols());
        for (int i = 0; i < c.q.rows(); ++i)
            for (int j = 0; j < c.q.cols(); ++j)
                if (c.q.test(i, j)) perm.q.set(pr[i], j);
        for (std::size_t t = 0; t < c.t.size(); ++t) {
            perm.t[t] = BitMatrix(c.t[t].rows(), c.t[t].cols());
            for (int i = 0; i < c.t[t].rows(); ++i)
                for (int j = 0; j < c.t[t].cols(); ++j)
                    if (c.t[t].test(i, j)) perm.t[t].set(pr[i], pc[j]);
        }
        CHECK(verify_atomic_certificate(a, b, perm, 3));
    }
}

TEST_CASE("subatomic certificates over the monoid presentation") {
    // unary (aa)*: canonical acceptor has two states
    Dfa d = even_a();
    Dfa dr = rev_pair_of(d);
    MonoidRecognizer m = syntactic_monoid(d);
    Nfa rfsa = canonical_rfsa(d, dr);
    REQUIRE(rfsa.state_count == 2);
    Certificate c = extract_subatomic_certificate(rfsa, m);
    CHECK(c.kind == CertKind::subatomic);
    CHECK(verify_subatomic_certificate(m, c, 2));

    // trivial language over the one-element monoid
    MonoidRecognizer one;
    one.size = 1;
    one.table = {0};
    one.letter_map = {0, 0};
    one.finals = Bits::ones(1);
    one.alphabet = ab();
    one.reps = {Word{}};
    Certificate ct;
    ct.kind = CertKind::subatomic;
    ct.k = 1;
    ct.s = Rel(1, 1);
    ct.s.set(0, 0);
    ct.p = BitMatrix(1, 1);
    ct.p.set(0, 0);
    ct.q = BitMatrix(1, 1);
    ct.q.set(0, 0);
    ct.t.assign(2, ct.p);
    CHECK(verify_subatomic_certificate(one, ct, 1));

    // corrupted tables on the a*b instance fail
    MonoidRecognizer mab = syntactic_monoid(fix_ab());
    Nfa rab = canonical_rfsa(fix_ab(), fix_ba());
    Certificate cab = extract_subatomic_certificate(rab, mab);
    REQUIRE(verify_subatomic_certificate(mab, cab, 2));
    Certificate corrupt = cab;
    for (int j = 0; j < corrupt.q.cols(); ++j) corrupt.q.assign(0, j, false);
    CHECK_FALSE(verify_subatomic_certificate(mab, corrupt, 2));
}

TEST_CASE("atomic acceptor-size oracle") {
    auto ab_res = na_oracle(fix_ab(), fix_ba(), 3);
    REQUIRE(ab_res.has_value());
    CHECK(ab_res->value == 2);
    Nfa witness = nfa_of_join_irreducibles(ab_res->witness);
    CHECK(witness.state_count == 2);
    CHECK(equivalent(witness, fix_ab()));
    CHECK(is_atomic(witness));

    auto triv = na_oracle(sigma_star(), sigma_star(), 1);
    REQUIRE(triv.has_value());
    CHECK(triv->value == 1);

    auto none = na_oracle(fix_ab(), fix_ba(), 1);
    CHECK_FALSE(none.has_value());

    auto empty = na_oracle(empty_lang(), empty_lang(), 1);
    REQUIRE(empty.has_value());
    CHECK(empty->value == 0);
}

TEST_CASE("oracle values match the dimension on lattice instances") {
    for (const FinLattice& s : lattices_up_to(5)) {
        Rel p = pirr_of(s);
        if (p.rows == 0 || p.cols == 0) continue;  // trivial lattice
        auto d = exact_dim(p);
        REQUIRE(d.has_value());
        ReductionInstance inst = lattice_language_instance(p, d->dim);
        auto na = na_oracle(inst.dfa_l, inst.dfa_rl,
                            std::max(d->dim, 1) + 1, 1 << 20);
        REQUIRE(na.has_value());
        CHECK(na->value == d->dim);
    }
}

TEST_CASE("subatomic acceptor-size oracle") {
    MonoidRecognizer triv = syntactic_monoid(sigma_star());
    auto t = nmu_oracle(triv, 1);
    REQUIRE(t.has_value());
    CHECK(t->value == 1);

    // unary languages: the two oracle values coincide
    Dfa d = even_a();
    auto na = na_oracle(d, rev_pair_of(d), 2);
    auto nmu = nmu_oracle(syntactic_monoid(d), 2);
    REQUIRE(na.has_value());
    REQUIRE(nmu.has_value());
    CHECK(na->value == nmu->value);

    // the circulant 3-state group language
    Dfa l3 = ln_family(3);
    auto na3 = na_oracle(l3, rev_pair_of(l3), 3);
    auto nmu3 = nmu_oracle(syntactic_monoid(l3), 3);
    REQUIRE(na3.has_value());
    REQUIRE(nmu3.has_value());
    CHECK(na3->value == nmu3->value);
    CHECK(na3->value == 3);

    // witnesses are genuine subatomic acceptors
    Nfa w = nfa_of_join_irreducibles(nmu3->witness);
    CHECK(equivalent(w, l3));
    CHECK(is_subatomic(w, minimize_dfa(l3)));

    CHECK_THROWS_AS(nmu_oracle(syntactic_monoid(ln_family(4)), 4, 1 << 12),
                    BudgetExceeded);
}
