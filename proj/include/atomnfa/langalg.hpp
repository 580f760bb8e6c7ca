#pragma once

#include <cstdint>
#include <vector>

#include "atomnfa/automata.hpp"
#include "atomnfa/dep.hpp"
#include "atomnfa/semilattice.hpp"

namespace atomnfa {

/// Materialization guard for the derivative boolean algebras (number of
/// elements the guarded construction may reach).
inline constexpr std::uint64_t kDefaultFamilyBudget = std::uint64_t(1) << 12;

/// Minimal dfas for L and r(L) together with shortest (BFS, lex-least)
/// representative words per state. The states of lang_dfa and rev_dfa are
/// in bijection with the left derivatives of L and r(L).
struct DerivativeSystem {
    Dfa lang_dfa;
    Dfa rev_dfa;
    std::vector<Word> reps_left;   // w_A(p), one per lang_dfa state
    std::vector<Word> reps_right;  // w_B(q), one per rev_dfa state
};

/// Requires L(b) = r(L(a)); both inputs are minimized internally.
/// Throws NotReversePair otherwise.
DerivativeSystem derivative_system(const Dfa& a, const Dfa& b);

/// The dependency relation and its companions, the translated structure
/// of the state-minimal semilattice dfa:
///   dr(p,q)    iff  a accepts w_A(p) . r(w_B(q))
///   dr_a(p,q)  iff  a accepts w_A(p) . a . r(w_B(q))
///   i_rel(*,q) iff  w_B(q) in r(L),    f_rel(p,*) iff w_A(p) in L
struct LowerPath {
    Alphabet alphabet;
    Rel dr;
    std::vector<Rel> dr_sym;
    Rel i_rel;  // 1 x |rev states|
    Rel f_rel;  // |lang states| x 1
};

LowerPath lower_path(const DerivativeSystem& ds);

/// The translated structure of the boolean algebra of left derivatives:
/// carriers are Nerode classes, indexed by rev_dfa states.
struct UpperPathAtomic {
    int classes = 0;
    Rel i2;                  // 1 x classes
    std::vector<Rel> d2_sym; // classes x classes per symbol
    Rel f2;                  // classes x 1
};

UpperPathAtomic nerode_upper_path(const DerivativeSystem& ds);

/// Multiplication table + letter map + accepting subset. Element 0 is the
/// identity; elements are ordered by shortest (shortlex) representative.
struct MonoidRecognizer {
    int size = 0;
    std::vector<int> table;       // size x size, table[i*size+j] = i . j
    std::vector<int> letter_map;  // one element per alphabet symbol
    Bits finals;
    Alphabet alphabet;
    std::vector<Word> reps;       // shortlex-least representative words

    int mul(int i, int j) const { return table[i * size + j]; }
    int eval(const Word& w) const;
    bool accepts(const Word& w) const { return finals.test(eval(w)); }
    bool is_associative_with_identity() const;
};

/// The transition monoid of the minimal dfa for L(a) (a is minimized
/// internally), which realizes the syntactic monoid.
MonoidRecognizer syntactic_monoid(const Dfa& a);

/// A deterministic automaton whose state set is a finite lattice, whose
/// transitions preserve joins, and whose finals form the prime filter of
/// elements not below final_filter.
struct JslDfa {
    FinLatticePtr lattice;
    Alphabet alphabet;
    std::vector<JslMorphism> trans;  // one endomorphism per symbol
    int init = 0;
    int final_filter = 0;  // finals = { s : not (s <= final_filter) }

    bool is_final(int s) const { return !lattice->leq(s, final_filter); }
    int step(int s, int sym) const { return trans[sym](s); }
    bool accepts(const Word& w) const;

    /// Column subsets backing each element, when the lattice was built
    /// from a family of sets (empty otherwise).
    std::vector<Bits> element_sets;
};

/// The state-minimal semilattice dfa: elements are the distinct unions of
/// left derivatives, represented by the rev_dfa-state subsets they
/// saturate; transitions take left derivatives.
JslDfa sld_lattice(const DerivativeSystem& ds);

/// For each rev_dfa state q, the index in sld of the largest element
/// whose dependency row avoids q (the image of the fundamental
/// order-reversing correspondence between the two derivative lattices).
std::vector<int> drl_iso(const DerivativeSystem& ds, const JslDfa& sld);

/// The nfa whose states are the Nerode classes; accepts L.
Nfa atomaton(const DerivativeSystem& ds);

/// The nfa of join-irreducibles: states J(Q), edge q1 -a-> q2 iff
/// q2 <= delta_a(q1), initial iff q <= init, final iff q is final.
Nfa nfa_of_join_irreducibles(const JslDfa& m);

/// View a monoid recognizer as a dfa for its language (right action), or
/// for the reversed language (left action of the opposite monoid).
Dfa monoid_to_dfa(const MonoidRecognizer& m);
Dfa opposite_monoid_to_dfa(const MonoidRecognizer& m);

}  // namespace atomnfa
