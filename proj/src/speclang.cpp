#include "atomnfa/speclang.hpp"

#include <algorithm>
#include <string>

#include "atomnfa/errors.hpp"

namespace atomnfa {

namespace {

// Column fan of q (rows related to q) and row image of p: the rectangle
// carried by the pair (p, q).
struct Rect {
    Bits rows;
    Bits cols;
};

std::vector<Rect> all_rectangles(const Rel& dr) {
    BitMatrix colfan = dr.bits.transposed();
    std::vector<Rect> rects;
    for (int p = 0; p < dr.rows; ++p)
        for (int q = 0; q < dr.cols; ++q)
            rects.push_back({colfan.row(q), dr.bits.row(p)});
    return rects;
}

bool rect_inside(const Rect& r, const BitMatrix& m) {
    bool ok = true;
    r.rows.for_each([&](int x) { ok = ok && r.cols.is_subset_of(m.row(x)); });
    return ok;
}

}  // namespace

bool is_nuclear(const DerivativeSystem& ds) {
    LowerPath lp = lower_path(ds);
    std::vector<Rect> rects = all_rectangles(lp.dr);
    for (const Rel& da : lp.dr_sym) {
        BitMatrix acc(da.rows, da.cols);
        for (const Rect& r : rects) {
            if (!rect_inside(r, da.bits)) continue;
            r.rows.for_each([&](int x) { acc.row(x) |= r.cols; });
        }
        if (acc != da.bits) return false;
    }
    return true;
}

std::optional<NuclearNsResult> nuclear_ns(const DerivativeSystem& ds, int kmax,
                                          std::uint64_t budget) {
    if (!is_nuclear(ds)) throw NotNuclear("language is not nuclear");
    LowerPath lp = lower_path(ds);
    auto dim = exact_dim(lp.dr, kmax, budget);
    if (!dim) return std::nullopt;

    const Dfa& b = ds.rev_dfa;
    const int nb = b.state_count;

    // Family generated by the cover's column sets; it contains every
    // union of dependency rows, so the derivative lattice embeds.
    std::vector<Bits> gens;
    for (const auto& [bx, by] : dim->cover.bicliques) gens.push_back(by);
    std::vector<Bits> family = union_closure(nb, gens);
    std::vector<std::string> labels;
    for (const Bits& o : family) labels.push_back(subset_label(o, {}));
    auto lat = share(lattice_of_family(family, std::move(labels)));

    // Meet-type element per column: the union of rows avoiding it.
    std::vector<Bits> mq(lp.dr.cols, Bits(nb));
    for (int q = 0; q < lp.dr.cols; ++q)
        for (int p = 0; p < lp.dr.rows; ++p)
            if (!lp.dr.test(p, q)) mq[q] |= lp.dr.bits.row(p);

    JslDfa jsl;
    jsl.lattice = lat;
    jsl.alphabet = ds.lang_dfa.alphabet;
    jsl.element_sets = family;
    BitMatrix colfan = lp.dr.bits.transposed();
    for (int sym = 0; sym < jsl.alphabet.size(); ++sym) {
        // Summands of the transition: rectangles inside the symbol's
        // dependency relation, transported as two-valued maps.
        std::vector<std::pair<int, Bits>> summands;  // (column, row image)
        for (int p = 0; p < lp.dr.rows; ++p)
            for (int q = 0; q < lp.dr.cols; ++q) {
                Rect r{colfan.row(q), lp.dr.bits.row(p)};
                if (rect_inside(r, lp.dr_sym[sym].bits))
                    summands.push_back({q, lp.dr.bits.row(p)});
            }
        std::vector<int> map(family.size());
        for (std::size_t e = 0; e < family.size(); ++e) {
            Bits out(nb);
            for (const auto& [q, rowset] : summands)
                if (!family[e].is_subset_of(mq[q])) out |= rowset;
            int idx = family_index(family, out);
            if (idx < 0) throw Error("transition image left the family");
            map[e] = idx;
        }
        jsl.trans.push_back(JslMorphism::from_map(lat, lat, std::move(map)));
    }
    Bits init_set(nb);
    for (int q = 0; q < nb; ++q)
        if (b.finals.test(q)) init_set.set(q);
    jsl.init = family_index(family, init_set);
    if (jsl.init < 0) throw Error("initial set missing from the cover family");
    Bits s0(nb);
    for (const Bits& o : family)
        if (!o.test(b.init)) s0 |= o;
    jsl.final_filter = family_index(family, s0);

    NuclearNsResult res;
    res.value = dim->dim;
    res.nfa = nfa_of_join_irreducibles(jsl);
    if (res.nfa.state_count != dim->dim)
        throw Error("cover family has the wrong number of irreducibles");
    if (!equivalent(res.nfa, ds.lang_dfa))
        throw Error("constructed acceptor is not equivalent");
    return res;
}

ReductionInstance lattice_language_instance(const Rel& r, int k) {
    FinLattice s = open_of(r);
    const auto& js = s.join_irreducibles();
    const auto& ms = s.meet_irreducibles();
    if (js.empty() || ms.empty())
        throw EmptyIrreducibles("open-set lattice is trivial");
    const int n = static_cast<int>(js.size());
    const int p = static_cast<int>(ms.size());

    std::vector<std::string> symbols;
    for (int i = 0; i < n; ++i) symbols.push_back("J#" + std::to_string(i));
    for (int i = 0; i < p; ++i) symbols.push_back("M#" + std::to_string(i));
    Alphabet alpha(symbols);
    const int nsym = alpha.size();

    ReductionInstance inst;
    inst.k = k;
    inst.source_rel = r;

    {
        // States: 0 = whole language, 1..n = after a J symbol, n+1 = dead.
        const int dead = n + 1;
        std::vector<int> trans((n + 2) * nsym);
        auto cell = [&](int st, int sym) -> int& { return trans[st * nsym + sym]; };
        for (int i = 0; i < n; ++i) cell(0, i) = 1 + i;
        for (int i = 0; i < p; ++i) cell(0, n + i) = 0;
        for (int jstate = 0; jstate < n; ++jstate) {
            for (int i = 0; i < n; ++i) cell(1 + jstate, i) = 1 + i;
            for (int i = 0; i < p; ++i)
                cell(1 + jstate, n + i) = s.leq(js[jstate], ms[i]) ? dead : 0;
        }
        for (int sym = 0; sym < nsym; ++sym) cell(dead, sym) = dead;
        std::vector<int> finals;
        for (int st = 0; st <= n; ++st) finals.push_back(st);
        inst.dfa_l = Dfa::make(alpha, n + 2, 0, finals, std::move(trans));
    }
    {
        const int dead = p + 1;
        std::vector<int> trans((p + 2) * nsym);
        auto cell = [&](int st, int sym) -> int& { return trans[st * nsym + sym]; };
        for (int i = 0; i < n; ++i) cell(0, i) = 0;
        for (int i = 0; i < p; ++i) cell(0, n + i) = 1 + i;
        for (int mstate = 0; mstate < p; ++mstate) {
            for (int i = 0; i < p; ++i) cell(1 + mstate, n + i) = 1 + i;
            for (int i = 0; i < n; ++i)
                cell(1 + mstate, i) = s.leq(js[i], ms[mstate]) ? dead : 0;
        }
        for (int sym = 0; sym < nsym; ++sym) cell(dead, sym) = dead;
        std::vector<int> finals;
        for (int st = 0; st <= p; ++st) finals.push_back(st);
        inst.dfa_rl = Dfa::make(alpha, p + 2, 0, finals, std::move(trans));
    }
    inst.monoid = syntactic_monoid(inst.dfa_l);
    return inst;
}

bool is_group_language(const MonoidRecognizer& m) {
    for (int x = 0; x < m.size; ++x) {
        bool inv = false;
        for (int y = 0; y < m.size && !inv; ++y)
            inv = m.mul(x, y) == 0 && m.mul(y, x) == 0;
        if (!inv) return false;
    }
    return true;
}

bool group_cl_check(const DerivativeSystem& ds, std::uint64_t budget) {
    MonoidRecognizer syn = syntactic_monoid(ds.lang_dfa);
    if (!is_group_language(syn))
        throw NotGroupLanguage("syntactic monoid is not a group");
    const Dfa& b = ds.rev_dfa;
    if (syn.size >= 62 ||
        (std::uint64_t(1) << syn.size) > std::max<std::uint64_t>(budget, 2) ||
        (std::uint64_t(1) << b.state_count) > std::max<std::uint64_t>(budget, 2))
        throw BudgetExceeded("derivative algebras exceed the size budget");

    // Class map: syntactic class of w sits inside the Nerode class
    // reached by the reversed representative.
    std::vector<int> cls(syn.size);
    for (int i = 0; i < syn.size; ++i)
        cls[i] = b.run(b.init, reversed(syn.reps[i]));

    const int nsym = syn.alphabet.size();
    const std::uint64_t total = std::uint64_t(1) << syn.size;
    for (std::uint64_t y = 0; y < total; ++y) {
        std::uint64_t cl_y = 0;
        for (int i = 0; i < syn.size; ++i)
            if ((y >> i) & 1) cl_y |= std::uint64_t(1) << cls[i];
        for (int sym = 0; sym < nsym; ++sym) {
            std::uint64_t lhs = 0;  // letter action after closing
            for (int q = 0; q < b.state_count; ++q)
                if ((cl_y >> b.step(q, sym)) & 1) lhs |= std::uint64_t(1) << q;
            std::uint64_t dy = 0;   // closing after letter action
            for (int i = 0; i < syn.size; ++i)
                if ((y >> syn.mul(syn.letter_map[sym], i)) & 1)
                    dy |= std::uint64_t(1) << i;
            std::uint64_t rhs = 0;
            for (int i = 0; i < syn.size; ++i)
                if ((dy >> i) & 1) rhs |= std::uint64_t(1) << cls[i];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool is_unary(const Dfa& a) { return a.alphabet.size() == 1; }

bool is_bideterministic(const Dfa& a) {
    Dfa m = minimize_dfa(a);
    if (m.finals.count() > 1) return false;
    for (int sym = 0; sym < m.alphabet.size(); ++sym) {
        Bits hit(m.state_count);
        for (int q = 0; q < m.state_count; ++q) {
            int t = m.step(q, sym);
            if (hit.test(t)) return false;
            hit.set(t);
        }
    }
    return true;
}

Dfa ln_family(int n) {
    if (n < 2) throw Error("family needs at least two states");
    Alphabet alpha({"pi", "tau"});
    std::vector<int> trans(n * 2);
    for (int i = 0; i < n; ++i) {
        trans[i * 2 + 0] = (i + 1) % n;
        trans[i * 2 + 1] = i == 0 ? 1 : (i == 1 ? 0 : i);
    }
    return Dfa::make(alpha, n, 1, {1}, std::move(trans));
}

}  // namespace atomnfa
