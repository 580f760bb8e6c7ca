#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atomnfa/automata.hpp"
#include "atomnfa/dep.hpp"
#include "atomnfa/langalg.hpp"
#include "atomnfa/semilattice.hpp"
#include "atomnfa/speclang.hpp"

namespace atomnfa::testing {

// ---------------------------------------------------------------- fixtures

inline Alphabet ab() { return Alphabet({"a", "b"}); }

// Minimal dfa of a*b: 0 = a*b, 1 = {eps}, 2 = sink.
inline Dfa fix_ab() {
    return Dfa::make(ab(), 3, 0, {1}, {0, 1, 2, 2, 2, 2});
}

// Minimal dfa of b a*: 0 = b a*, 1 = a*, 2 = sink.
inline Dfa fix_ba() {
    return Dfa::make(ab(), 3, 0, {1}, {2, 1, 1, 2, 2, 2});
}

inline Dfa sigma_star() {
    return Dfa::make(ab(), 1, 0, {0}, {0, 0});
}

inline Dfa empty_lang() {
    return Dfa::make(ab(), 1, 0, {}, {0, 0});
}

// (aa)* over the unary alphabet.
inline Dfa even_a() {
    return Dfa::make(Alphabet({"a"}), 2, 0, {0}, {1, 0});
}

inline FinLattice chain(int n) {
    BitMatrix leq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) leq.set(i, j);
    return FinLattice::from_leq(std::move(leq));
}

// 0 = bot, 1/2 = incomparable, 3 = top (the four-element boolean algebra).
inline FinLattice diamond() {
    BitMatrix leq(4, 4);
    for (int i = 0; i < 4; ++i) leq.set(i, i);
    leq.set(0, 1);
    leq.set(0, 2);
    leq.set(0, 3);
    leq.set(1, 3);
    leq.set(2, 3);
    return FinLattice::from_leq(std::move(leq));
}

// 0 = bot, 1/2/3 pairwise incomparable atoms, 4 = top.
inline FinLattice m3() {
    BitMatrix leq(5, 5);
    for (int i = 0; i < 5; ++i) leq.set(i, i);
    for (int i = 1; i <= 3; ++i) {
        leq.set(0, i);
        leq.set(i, 4);
    }
    leq.set(0, 4);
    return FinLattice::from_leq(std::move(leq));
}

// {(0,0),(0,1),(1,1)} on 2x2 carriers.
inline Rel rel_r0() {
    Rel r(2, 2);
    r.set(0, 0);
    r.set(0, 1);
    r.set(1, 1);
    return r;
}

inline Dfa rev_pair_of(const Dfa& a) {
    return minimize_dfa(determinize_reachable(reverse(a)));
}

// ------------------------------------------------------------------ words

inline std::vector<Word> all_words(int nsym, int maxlen) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int s = 0; s < nsym; ++s) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

template <typename M1, typename M2>
bool agree_upto(const M1& x, const M2& y, int nsym, int maxlen) {
    for (const Word& w : all_words(nsym, maxlen))
        if (x.accepts(w) != y.accepts(w)) return false;
    return true;
}

// ------------------------------------------------------- lattice catalogue

// All lattices on exactly n elements up to order isomorphism. Elements are
// generated in linear-extension order: each new element picks an order
// ideal of the part built so far as its strict down-set, and every pair
// must already have a meet (a finite meet-semilattice with a top is a
// lattice, so joins are checked only via the final top test).
inline std::vector<FinLattice> lattices_of_size(int n) {
    std::vector<std::vector<Bits>> results;  // leq rows (size n)
    std::vector<Bits> leq(n, Bits(n));

    auto is_ideal = [&](const Bits& d, int k) {
        bool ok = true;
        d.for_each([&](int j) {
            for (int i = 0; i < k; ++i)
                if (leq[i].test(j) && !d.test(i)) ok = false;
        });
        return ok;
    };
    auto meets_ok = [&](const Bits& d, int k) {
        // For i < k: lower bounds of {i, k} need a unique maximum.
        for (int i = 0; i < k; ++i) {
            Bits lower(n);
            for (int j = 0; j < k; ++j)
                if (leq[j].test(i) && d.test(j)) lower.set(j);
            if (lower.none()) return false;
            int maxima = 0;
            lower.for_each([&](int x) {
                bool below_other = false;
                lower.for_each([&](int y) {
                    if (x != y && leq[x].test(y)) below_other = true;
                });
                if (!below_other) ++maxima;
            });
            if (maxima != 1) return false;
        }
        return true;
    };

    std::function<void(int)> grow = [&](int k) {
        if (k == n) {
            // Need a top: some element above all others.
            for (int t = 0; t < n; ++t) {
                bool top = true;
                for (int i = 0; i < n; ++i) top = top && leq[i].test(t);
                if (top) {
                    results.push_back(leq);
                    return;
                }
            }
            return;
        }
        // Enumerate candidate strict down-sets among 0..k-1.
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
            Bits d(n);
            for (int j = 0; j < k; ++j)
                if ((mask >> j) & 1) d.set(j);
            if (k > 0 && d.none()) continue;  // two minimal elements never meet
            if (!is_ideal(d, k)) continue;
            if (k > 0 && !meets_ok(d, k)) continue;
            std::vector<Bits> saved = leq;
            d.for_each([&](int j) { leq[j].set(k); });
            leq[k].set(k);
            grow(k + 1);
            leq = std::move(saved);
        }
    };
    grow(0);

    // Dedup up to isomorphism, bucketed by a cheap profile.
    std::vector<FinLattice> out;
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (const auto& rows : results) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row(i) = rows[i];
        FinLattice cand = FinLattice::from_leq(std::move(m));
        std::vector<std::pair<int, int>> profile;
        for (int i = 0; i < n; ++i)
            profile.push_back({cand.down_set(i).count(), cand.up_set(i).count()});
        std::sort(profile.begin(), profile.end());
        std::string key;
        for (auto [d, u] : profile)
            key += std::to_string(d) + "." + std::to_string(u) + ";";
        key += "J" + std::to_string(cand.join_irreducibles().size());
        bool fresh = true;
        for (std::size_t idx : buckets[key])
            if (find_order_isomorphism(out[idx], cand)) {
                fresh = false;
                break;
            }
        if (fresh) {
            buckets[key].push_back(out.size());
            out.push_back(std::move(cand));
        }
    }
    return out;
}

inline std::vector<FinLattice> lattices_up_to(int nmax) {
    std::vector<FinLattice> out;
    for (int n = 1; n <= nmax; ++n) {
        auto more = lattices_of_size(n);
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

// All join-preserving maps between two small lattices.
inline std::vector<std::vector<int>> all_morphism_maps(const FinLattice& s,
                                                       const FinLattice& t) {
    std::vector<std::vector<int>> out;
    std::vector<int> map(s.size(), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == s.size()) {
            if (is_jsl_morphism(s, t, map)) out.push_back(map);
            return;
        }
        for (int v = 0; v < t.size(); ++v) {
            map[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------- sweeps

// Every language with a minimal complete dfa of at most max_states over
// the given alphabet, each exactly once: candidates are generated with
// initial state 0 and kept iff reachable in BFS-discovery order and
// minimal (so the representation is the canonical one).
inline std::vector<Dfa> minimal_dfa_sweep(int max_states, const Alphabet& alpha) {
    std::vector<Dfa> out;
    const int k = alpha.size();
    for (int n = 1; n <= max_states; ++n) {
        std::vector<int> trans(n * k, 0);
        const std::uint64_t tables = [&] {
            std::uint64_t t = 1;
            for (int i = 0; i < n * k; ++i) t *= n;
            return t;
        }();
        for (std::uint64_t code = 0; code < tables; ++code) {
            std::uint64_t c = code;
            for (int cell = 0; cell < n * k; ++cell) {
                trans[cell] = static_cast<int>(c % n);
                c /= n;
            }
            // BFS-canonical reachability: states discovered in index order.
            std::vector<int> order{0};
            std::vector<char> seen(n, 0);
            seen[0] = 1;
            bool canonical = true;
            for (std::size_t i = 0; i < order.size() && canonical; ++i)
                for (int a = 0; a < k && canonical; ++a) {
                    int t = trans[order[i] * k + a];
                    if (!seen[t]) {
                        if (t != static_cast<int>(order.size())) canonical = false;
                        else {
                            seen[t] = 1;
                            order.push_back(t);
                        }
                    }
                }
            if (!canonical || static_cast<int>(order.size()) != n) continue;
            for (std::uint64_t fmask = 0; fmask < (std::uint64_t(1) << n);
                 ++fmask) {
                std::vector<int> finals;
                for (int s = 0; s < n; ++s)
                    if ((fmask >> s) & 1) finals.push_back(s);
                Dfa d = Dfa::make(alpha, n, 0, finals, trans);
                if (minimize_dfa(d).state_count == n) out.push_back(std::move(d));
            }
        }
    }
    return out;
}

// Seeded random nfa over the alphabet with up to max_states states.
inline Nfa random_nfa(std::mt19937_64& rng, int max_states,
                      const Alphabet& alpha) {
    int n = 1 + static_cast<int>(rng() % max_states);
    const int k = alpha.size();
    std::vector<std::vector<int>> cells(n * k);
    for (auto& cell : cells)
        for (int q = 0; q < n; ++q)
            if (rng() & 1) cell.push_back(q);
    std::vector<int> inits, finals;
    for (int q = 0; q < n; ++q) {
        if (rng() & 1) inits.push_back(q);
        if (rng() & 1) finals.push_back(q);
    }
    return Nfa::make(alpha, n, inits, finals, cells);
}

inline Rel random_rel(std::mt19937_64& rng, int max_rows, int max_cols) {
    int r = 1 + static_cast<int>(rng() % max_rows);
    int c = 1 + static_cast<int>(rng() % max_cols);
    Rel out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rng() & 1) out.set(i, j);
    return out;
}

}  // namespace atomnfa::testing
