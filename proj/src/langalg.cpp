#include "atomnfa/langalg.hpp"

#include <algorithm>
#include <map>

#include "atomnfa/errors.hpp"

namespace atomnfa {

namespace {

// Shortest (BFS with symbol order as tie-break) word reaching each state.
std::vector<Word> shortest_reps(const Dfa& d) {
    std::vector<Word> reps(d.state_count);
    std::vector<char> seen(d.state_count, 0);
    std::vector<int> queue{d.init};
    seen[d.init] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int s = queue[i];
        for (int a = 0; a < d.alphabet.size(); ++a) {
            int t = d.step(s, a);
            if (!seen[t]) {
                seen[t] = 1;
                reps[t] = reps[s];
                reps[t].push_back(a);
                queue.push_back(t);
            }
        }
    }
    return reps;
}

}  // namespace

DerivativeSystem derivative_system(const Dfa& a, const Dfa& b) {
    DerivativeSystem ds;
    ds.lang_dfa = minimize_dfa(a);
    ds.rev_dfa = minimize_dfa(b);
    if (!check_reverse_pair(ds.lang_dfa, ds.rev_dfa))
        throw NotReversePair("inputs do not accept mutually reversed languages");
    ds.reps_left = shortest_reps(ds.lang_dfa);
    ds.reps_right = shortest_reps(ds.rev_dfa);
    return ds;
}

LowerPath lower_path(const DerivativeSystem& ds) {
    const Dfa& a = ds.lang_dfa;
    const Dfa& b = ds.rev_dfa;
    const int na = a.state_count, nb = b.state_count;
    const int k = a.alphabet.size();

    // acc[q] = lang states from which a accepts r(w_B(q)).
    std::vector<Bits> acc(nb, Bits(na));
    for (int q = 0; q < nb; ++q) {
        Word rv = reversed(ds.reps_right[q]);
        for (int p = 0; p < na; ++p)
            if (a.finals.test(a.run(p, rv))) acc[q].set(p);
    }

    LowerPath lp;
    lp.alphabet = a.alphabet;
    lp.dr = Rel(na, nb);
    for (int p = 0; p < na; ++p)
        for (int q = 0; q < nb; ++q)
            if (acc[q].test(p)) lp.dr.set(p, q);
    for (int sym = 0; sym < k; ++sym) {
        Rel r(na, nb);
        for (int p = 0; p < na; ++p) {
            int pa = a.step(p, sym);
            for (int q = 0; q < nb; ++q)
                if (acc[q].test(pa)) r.set(p, q);
        }
        lp.dr_sym.push_back(std::move(r));
    }
    lp.i_rel = Rel(1, nb);
    for (int q = 0; q < nb; ++q)
        if (b.finals.test(q)) lp.i_rel.set(0, q);
    lp.f_rel = Rel(na, 1);
    for (int p = 0; p < na; ++p)
        if (a.finals.test(p)) lp.f_rel.set(p, 0);
    return lp;
}

UpperPathAtomic nerode_upper_path(const DerivativeSystem& ds) {
    const Dfa& b = ds.rev_dfa;
    const int nb = b.state_count;
    UpperPathAtomic up;
    up.classes = nb;
    up.i2 = Rel(1, nb);
    for (int q = 0; q < nb; ++q)
        if (b.finals.test(q)) up.i2.set(0, q);
    for (int sym = 0; sym < b.alphabet.size(); ++sym) {
        // Class of u steps to class of au: edges (step(q,a), q).
        Rel r(nb, nb);
        for (int q = 0; q < nb; ++q) r.set(b.step(q, sym), q);
        up.d2_sym.push_back(std::move(r));
    }
    up.f2 = Rel(nb, 1);
    up.f2.set(b.init, 0);
    return up;
}

int MonoidRecognizer::eval(const Word& w) const {
    int m = 0;
    for (int a : w) m = mul(m, letter_map[a]);
    return m;
}

bool MonoidRecognizer::is_associative_with_identity() const {
    for (int i = 0; i < size; ++i)
        if (mul(0, i) != i || mul(i, 0) != i) return false;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            for (int l = 0; l < size; ++l)
                if (mul(mul(i, j), l) != mul(i, mul(j, l))) return false;
    return true;
}

MonoidRecognizer syntactic_monoid(const Dfa& a) {
    Dfa d = minimize_dfa(a);
    const int n = d.state_count;
    const int k = d.alphabet.size();

    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems{identity};
    std::vector<Word> reps{Word{}};
    index.emplace(identity, 0);
    // BFS over words in shortlex order; each element keeps its first word.
    for (std::size_t i = 0; i < elems.size(); ++i) {
        std::vector<int> base = elems[i];
        Word w = reps[i];
        for (int sym = 0; sym < k; ++sym) {
            std::vector<int> ext(n);
            for (int s = 0; s < n; ++s) ext[s] = d.step(base[s], sym);
            if (!index.count(ext)) {
                index.emplace(ext, static_cast<int>(elems.size()));
                elems.push_back(ext);
                Word w2 = w;
                w2.push_back(sym);
                reps.push_back(std::move(w2));
            }
        }
    }

    MonoidRecognizer m;
    m.size = static_cast<int>(elems.size());
    m.alphabet = d.alphabet;
    m.reps = std::move(reps);
    m.table.resize(m.size * m.size);
    for (int i = 0; i < m.size; ++i)
        for (int j = 0; j < m.size; ++j) {
            std::vector<int> comp(n);
            for (int s = 0; s < n; ++s) comp[s] = elems[j][elems[i][s]];
            m.table[i * m.size + j] = index.at(comp);
        }
    for (int sym = 0; sym < k; ++sym) {
        std::vector<int> map(n);
        for (int s = 0; s < n; ++s) map[s] = d.step(s, sym);
        m.letter_map.push_back(index.at(map));
    }
    m.finals = Bits(m.size);
    for (int i = 0; i < m.size; ++i)
        if (d.finals.test(elems[i][d.init])) m.finals.set(i);
    return m;
}

bool JslDfa::accepts(const Word& w) const {
    int s = init;
    for (int a : w) s = step(s, a);
    return is_final(s);
}

JslDfa sld_lattice(const DerivativeSystem& ds) {
    LowerPath lp = lower_path(ds);
    const Dfa& b = ds.rev_dfa;
    const int nb = b.state_count;

    std::vector<Bits> rows;
    for (int p = 0; p < lp.dr.rows; ++p) rows.push_back(lp.dr.bits.row(p));
    std::vector<Bits> family = union_closure(nb, rows);

    std::vector<std::string> labels;
    for (const Bits& o : family) labels.push_back(subset_label(o, {}));
    auto lat = share(lattice_of_family(family, std::move(labels)));

    JslDfa jsl;
    jsl.lattice = lat;
    jsl.alphabet = ds.lang_dfa.alphabet;
    jsl.element_sets = family;
    for (int sym = 0; sym < ds.lang_dfa.alphabet.size(); ++sym) {
        std::vector<int> map(family.size());
        for (std::size_t e = 0; e < family.size(); ++e) {
            Bits img(nb);
            for (int q = 0; q < nb; ++q)
                if (family[e].test(b.step(q, sym))) img.set(q);
            int idx = family_index(family, img);
            if (idx < 0) throw Error("derivative left the union closure");
            map[e] = idx;
        }
        jsl.trans.push_back(JslMorphism::from_map(lat, lat, std::move(map)));
    }
    // Initial element: the saturation set of L itself (finals of rev_dfa).
    Bits init_set(nb);
    for (int q = 0; q < nb; ++q)
        if (b.finals.test(q)) init_set.set(q);
    jsl.init = family_index(family, init_set);
    if (jsl.init < 0) throw Error("initial derivative not in the closure");
    // Final prime filter: elements containing the class of the empty word
    // (rev_dfa initial state); its complementary ideal is generated by the
    // largest element avoiding it.
    Bits s0(nb);
    for (std::size_t e = 0; e < family.size(); ++e)
        if (!family[e].test(b.init)) s0 |= family[e];
    jsl.final_filter = family_index(family, s0);
    if (jsl.final_filter < 0) throw Error("final filter not in the closure");

    // Reachability and simplicity sanity: every element is a union of
    // dependency rows, and elements are distinct sets by construction.
    for (const Bits& o : family) {
        Bits u(nb);
        for (const Bits& r : rows)
            if (r.is_subset_of(o)) u |= r;
        if (u != o) throw Error("semilattice dfa is not join-reachable");
    }
    return jsl;
}

std::vector<int> drl_iso(const DerivativeSystem& ds, const JslDfa& sld) {
    LowerPath lp = lower_path(ds);
    const int na = lp.dr.rows, nb = lp.dr.cols;
    std::vector<int> out(nb, -1);
    for (int q = 0; q < nb; ++q) {
        Bits m(nb);
        for (int p = 0; p < na; ++p)
            if (!lp.dr.test(p, q)) m |= lp.dr.bits.row(p);
        int idx = family_index(sld.element_sets, m);
        if (idx < 0) throw Error("image not an element of the derivative lattice");
        // The defining equivalence: dr(p,q) iff row(p) not within m.
        for (int p = 0; p < na; ++p)
            if (lp.dr.test(p, q) == lp.dr.bits.row(p).is_subset_of(m))
                throw Error("order-reversing correspondence check failed");
        out[q] = idx;
    }
    return out;
}

Nfa atomaton(const DerivativeSystem& ds) {
    UpperPathAtomic up = nerode_upper_path(ds);
    const int n = up.classes;
    const int k = ds.rev_dfa.alphabet.size();
    Nfa m;
    m.alphabet = ds.rev_dfa.alphabet;
    m.state_count = n;
    m.inits = Bits(n);
    for (int q = 0; q < n; ++q)
        if (up.i2.test(0, q)) m.inits.set(q);
    m.finals = Bits(n);
    for (int q = 0; q < n; ++q)
        if (up.f2.test(q, 0)) m.finals.set(q);
    m.trans.assign(n * k, Bits(n));
    for (int sym = 0; sym < k; ++sym)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (up.d2_sym[sym].test(p, q)) m.trans[p * k + sym].set(q);
    return m;
}

Nfa nfa_of_join_irreducibles(const JslDfa& m) {
    const FinLattice& q = *m.lattice;
    const auto& js = q.join_irreducibles();
    const int n = static_cast<int>(js.size());
    const int k = m.alphabet.size();
    Nfa out;
    out.alphabet = m.alphabet;
    out.state_count = n;
    out.inits = Bits(n);
    out.finals = Bits(n);
    out.trans.assign(n * k, Bits(n));
    for (int i = 0; i < n; ++i) {
        if (q.leq(js[i], m.init)) out.inits.set(i);
        if (m.is_final(js[i])) out.finals.set(i);
        for (int sym = 0; sym < k; ++sym)
            for (int j = 0; j < n; ++j)
                if (q.leq(js[j], m.trans[sym](js[i])))
                    out.trans[i * k + sym].set(j);
    }
    return out;
}

Dfa monoid_to_dfa(const MonoidRecognizer& m) {
    std::vector<int> trans(m.size * m.alphabet.size());
    std::vector<int> finals;
    for (int i = 0; i < m.size; ++i) {
        for (int a = 0; a < m.alphabet.size(); ++a)
            trans[i * m.alphabet.size() + a] = m.mul(i, m.letter_map[a]);
        if (m.finals.test(i)) finals.push_back(i);
    }
    return Dfa::make(m.alphabet, m.size, 0, finals, std::move(trans));
}

Dfa opposite_monoid_to_dfa(const MonoidRecognizer& m) {
    std::vector<int> trans(m.size * m.alphabet.size());
    std::vector<int> finals;
    for (int i = 0; i < m.size; ++i) {
        for (int a = 0; a < m.alphabet.size(); ++a)
            trans[i * m.alphabet.size() + a] = m.mul(m.letter_map[a], i);
        if (m.finals.test(i)) finals.push_back(i);
    }
    return Dfa::make(m.alphabet, m.size, 0, finals, std::move(trans));
}

}  // namespace atomnfa
