#pragma once

#include <cstdint>
#include <optional>

#include "atomnfa/biclique.hpp"
#include "atomnfa/certify.hpp"
#include "atomnfa/langalg.hpp"

namespace atomnfa {

/// True iff every per-symbol dependency relation is a union of rectangles
/// column-fan x row-fan of the base dependency relation, decided by
/// greedy saturation with all contained rectangles.
bool is_nuclear(const DerivativeSystem& ds);

struct NuclearNsResult {
    int value = 0;
    Nfa nfa;  // acceptor with exactly `value` states
};

/// For a nuclear language the least acceptor size equals the bipartite
/// dimension of the dependency relation; also constructs a witnessing
/// acceptor by transporting the transitions along the cover embedding.
/// Throws NotNuclear when the language is not nuclear.
std::optional<NuclearNsResult> nuclear_ns(const DerivativeSystem& ds, int kmax,
                                          std::uint64_t budget = kDefaultDimBudget);

/// Output bundle of the reductions from biclique cover.
struct ReductionInstance {
    Dfa dfa_l;
    Dfa dfa_rl;
    MonoidRecognizer monoid;
    int k = 0;
    Rel source_rel;
};

/// Builds the two-automata instance of the lattice language of the
/// open-set lattice of r: alphabet J#i / M#i, the (|J|+2)-state acceptor
/// of words avoiding a J-symbol directly followed by an M-symbol above
/// it, its (|M|+2)-state reverse, and the transition monoid. Throws
/// EmptyIrreducibles when the open-set lattice is trivial.
ReductionInstance lattice_language_instance(const Rel& r, int k);

/// True iff every element has a two-sided inverse.
bool is_group_language(const MonoidRecognizer& m);

/// Builds the closure map from unions of syntactic classes onto unions of
/// Nerode classes and checks it commutes with every letter action.
bool group_cl_check(const DerivativeSystem& ds,
                    std::uint64_t budget = kDefaultFamilyBudget);

bool is_unary(const Dfa& a);

/// Reverse of the minimal complete dfa is deterministic: at most one
/// final state and every letter action injective (so the reversed
/// transition relations are functions).
bool is_bideterministic(const Dfa& a);

/// The n-state circulant/transposition family: pi rotates, tau swaps the
/// first two states, initial and final state 1. Requires n >= 2.
Dfa ln_family(int n);

}  // namespace atomnfa
