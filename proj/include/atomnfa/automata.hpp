#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atomnfa/bits.hpp"

namespace atomnfa {

/// Ordered list of distinct symbol names. The listed order is canonical:
/// it defines every iteration order downstream.
struct Alphabet {
    std::vector<std::string> symbols;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> syms);

    int size() const { return static_cast<int>(symbols.size()); }
    int index_of(const std::string& sym) const;  // -1 if absent

    bool operator==(const Alphabet& o) const { return symbols == o.symbols; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }
};

using Word = std::vector<int>;  // symbol indices

Word reversed(Word w);
std::string word_to_string(const Word& w, const Alphabet& a);

/// Complete deterministic finite automaton. The transition table is
/// total: trans[state * |alphabet| + symbol].
struct Dfa {
    Alphabet alphabet;
    int state_count = 0;
    int init = 0;
    Bits finals;
    std::vector<int> trans;

    static Dfa make(Alphabet alphabet, int state_count, int init,
                    const std::vector<int>& finals,
                    std::vector<int> trans);

    int step(int state, int sym) const {
        return trans[state * alphabet.size() + sym];
    }
    int run(int state, const Word& w) const;
    bool accepts(const Word& w) const;
};

/// Nondeterministic finite automaton; transitions are state sets.
struct Nfa {
    Alphabet alphabet;
    int state_count = 0;
    Bits inits;
    Bits finals;
    std::vector<Bits> trans;  // state * |alphabet| + symbol -> state set

    static Nfa make(Alphabet alphabet, int state_count,
                    const std::vector<int>& inits,
                    const std::vector<int>& finals,
                    const std::vector<std::vector<int>>& edges_by_cell);

    const Bits& step(int state, int sym) const {
        return trans[state * alphabet.size() + sym];
    }
    Bits step_set(const Bits& states, int sym) const;
    Bits run(Bits states, const Word& w) const;
    bool accepts(const Word& w) const;

    /// States X with step(X, sym) meeting target.
    Bits pre(const Bits& target, int sym) const;
};

Nfa to_nfa(const Dfa& d);

/// Reverses every edge and swaps inits with finals.
Nfa reverse(const Nfa& n);
Nfa reverse(const Dfa& d);

/// Subset construction restricted to the reachable part, subset states
/// ordered by BFS discovery (symbol order as tie-break).
Dfa determinize_reachable(const Nfa& n);

/// Minimal complete DFA for L(d); states emitted in BFS order from the
/// initial state with symbol order as tie-break.
Dfa minimize_dfa(const Dfa& d);

bool equivalent(const Dfa& x, const Dfa& y);
bool equivalent(const Dfa& x, const Nfa& y);
bool equivalent(const Nfa& x, const Dfa& y);
bool equivalent(const Nfa& x, const Nfa& y);

/// True iff L(b) = reverse(L(a)), decided by the two emptiness tests
/// complement(L(a)) meet r(L(b)) and complement(L(b)) meet r(L(a)).
bool check_reverse_pair(const Dfa& a, const Dfa& b);

/// An nfa is atomic iff determinizing its reverse yields a minimal dfa.
bool is_atomic(const Nfa& n);

/// Direct definition: every state language is a union of Nerode classes,
/// decided by saturation over the reachable subset/class product.
bool is_atomic_by_saturation(const Nfa& n);

/// True iff every state language of n is a union of syntactic congruence
/// classes of L(min_dfa); throws LanguageMismatch if L(n) != L(min_dfa).
bool is_subatomic(const Nfa& n, const Dfa& min_dfa);

inline constexpr std::uint64_t kDefaultNsBudget = std::uint64_t(1) << 26;

/// Least k <= kmax such that some k-state NFA over the same alphabet
/// accepts L(a), by exhaustive enumeration in canonical order (state 0 is
/// always initial). Returns nullopt if no such k exists within kmax;
/// throws BudgetExceeded (with the partial lower bound) if the
/// enumeration budget runs out first.
std::optional<int> ns_bruteforce(const Dfa& a, int kmax,
                                 std::uint64_t budget = kDefaultNsBudget);

}  // namespace atomnfa
