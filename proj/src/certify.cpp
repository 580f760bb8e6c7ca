#include "atomnfa/certify.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "atomnfa/errors.hpp"

namespace atomnfa {

struct NotSubatomic : Error {
    using Error::Error;
};

namespace {

struct PathObjects {
    RelPtr lower;   // the dependency relation
    RelPtr upper;   // identity on classes / monoid elements
    RelPtr one;     // identity on a single point
    DepMorphism i, f;                 // lower path ends
    std::vector<DepMorphism> d_low;   // lower transitions
    DepMorphism i2, f2;               // upper path ends
    std::vector<DepMorphism> d_up;    // upper transitions
};

PathObjects atomic_paths(const DerivativeSystem& ds) {
    PathObjects po;
    LowerPath lp = lower_path(ds);
    UpperPathAtomic up = nerode_upper_path(ds);
    po.lower = share(lp.dr);
    po.upper = share(Rel::identity(up.classes));
    po.one = share(Rel::identity(1));
    po.i = DepMorphism(po.one, po.lower, lp.i_rel.bits);
    po.f = DepMorphism(po.lower, po.one, lp.f_rel.bits);
    for (auto& r : lp.dr_sym)
        po.d_low.push_back(DepMorphism(po.lower, po.lower, r.bits));
    po.i2 = DepMorphism(po.one, po.upper, up.i2.bits);
    po.f2 = DepMorphism(po.upper, po.one, up.f2.bits);
    for (auto& r : up.d2_sym)
        po.d_up.push_back(DepMorphism(po.upper, po.upper, r.bits));
    return po;
}

PathObjects subatomic_paths(const DerivativeSystem& ds,
                            const MonoidRecognizer& syn) {
    PathObjects po;
    LowerPath lp = lower_path(ds);
    po.lower = share(lp.dr);
    po.upper = share(Rel::identity(syn.size));
    po.one = share(Rel::identity(1));
    po.i = DepMorphism(po.one, po.lower, lp.i_rel.bits);
    po.f = DepMorphism(po.lower, po.one, lp.f_rel.bits);
    for (auto& r : lp.dr_sym)
        po.d_low.push_back(DepMorphism(po.lower, po.lower, r.bits));

    BitMatrix i2(1, syn.size);
    for (int n = 0; n < syn.size; ++n)
        if (syn.finals.test(n)) i2.set(0, n);
    po.i2 = DepMorphism(po.one, po.upper, std::move(i2));
    BitMatrix f2(syn.size, 1);
    f2.set(0, 0);  // the class of the empty word is the identity
    po.f2 = DepMorphism(po.upper, po.one, std::move(f2));
    for (int sym = 0; sym < syn.alphabet.size(); ++sym) {
        BitMatrix d(syn.size, syn.size);
        for (int n = 0; n < syn.size; ++n)
            d.set(syn.mul(syn.letter_map[sym], n), n);
        po.d_up.push_back(DepMorphism(po.upper, po.upper, std::move(d)));
    }
    return po;
}

bool verify_against_paths(const PathObjects& po, const Certificate& c, int k,
                          int target_bound) {
    RelPtr sp = share(c.s);
    const int nsym = static_cast<int>(po.d_low.size());
    if (c.p.rows() != po.lower->rows || c.p.cols() != c.s.cols ||
        c.q.rows() != c.s.rows || c.q.cols() != po.upper->rows ||
        static_cast<int>(c.t.size()) != nsym)
        throw ShapeMismatch("certificate tables do not fit the instance");
    for (const auto& t : c.t)
        if (t.rows() != c.s.rows || t.cols() != c.s.cols)
            throw ShapeMismatch("transition table does not fit the object");

    if (c.s.rows > k) return false;
    if (c.s.cols > target_bound) return false;

    DepMorphism p(po.lower, sp, c.p);
    DepMorphism q(sp, po.upper, c.q);
    if (!is_dep_morphism(p) || !is_dep_morphism(q)) return false;
    std::vector<DepMorphism> ts;
    for (const auto& t : c.t) {
        ts.push_back(DepMorphism(sp, sp, t));
        if (!is_dep_morphism(ts.back())) return false;
    }

    if (dep_compose(dep_compose(po.i, p), q).bits != po.i2.bits) return false;
    for (int a = 0; a < nsym; ++a) {
        if (dep_compose(po.d_low[a], p).bits != dep_compose(p, ts[a]).bits)
            return false;
        if (dep_compose(ts[a], q).bits != dep_compose(q, po.d_up[a]).bits)
            return false;
    }
    if (dep_compose(dep_compose(p, q), po.f2).bits != po.f.bits) return false;
    return true;
}

}  // namespace

bool verify_atomic_certificate(const Dfa& a, const Dfa& b,
                               const Certificate& c, int k) {
    return verify_atomic_certificate(derivative_system(a, b), c, k);
}

bool verify_atomic_certificate(const DerivativeSystem& ds,
                               const Certificate& c, int k) {
    return verify_against_paths(atomic_paths(ds), c, k,
                                ds.rev_dfa.state_count);
}

bool verify_subatomic_certificate(const MonoidRecognizer& m,
                                  const Certificate& c, int k) {
    if (!m.is_associative_with_identity())
        throw Error("monoid recognizer table is invalid");
    DerivativeSystem ds =
        derivative_system(monoid_to_dfa(m), opposite_monoid_to_dfa(m));
    MonoidRecognizer syn = syntactic_monoid(ds.lang_dfa);
    return verify_subatomic_certificate(ds, syn, m.size, c, k);
}

bool verify_subatomic_certificate(const DerivativeSystem& ds,
                                  const MonoidRecognizer& syn, int st_bound,
                                  const Certificate& c, int k) {
    return verify_against_paths(subatomic_paths(ds, syn), c, k, st_bound);
}

Nfa certificate_to_nfa(const Certificate& c, const LowerPath& lower) {
    const int n = c.s.rows;
    const int nsym = lower.alphabet.size();
    if (static_cast<int>(c.t.size()) != nsym ||
        c.p.rows() != lower.dr.rows || c.p.cols() != c.s.cols)
        throw InvalidCertificate("tables do not fit the instance");
    if (!is_dep_morphism(c.p, lower.dr, c.s))
        throw InvalidCertificate("p is not a morphism");

    Nfa out;
    out.alphabet = lower.alphabet;
    out.state_count = n;
    out.trans.assign(n * nsym, Bits(n));
    for (int sym = 0; sym < nsym; ++sym) {
        if (!is_dep_morphism(c.t[sym], c.s, c.s))
            throw InvalidCertificate("t is not a morphism");
        auto lower_wit = maximal_witnesses(c.t[sym], c.s, c.s).first;
        for (int x = 0; x < n; ++x)
            out.trans[x * nsym + sym] = lower_wit.row(x);
    }
    // Initial states: maximal lower witness of the composite i ; p.
    auto p_upper = maximal_witnesses(c.p, lower.dr, c.s).second;
    BitMatrix ip = lower.i_rel.bits.compose(p_upper.transposed());
    out.inits = Bits(n);
    for (int y = 0; y < n; ++y)
        if (c.s.bits.row(y).is_subset_of(ip.row(0))) out.inits.set(y);
    // Finals: rows of q meeting the class of the empty word (index 0 in
    // the canonical state/element order).
    out.finals = Bits(n);
    for (int x = 0; x < n; ++x)
        if (c.q.test(x, 0)) out.finals.set(x);
    return out;
}

namespace {

// State languages of n as subsets of the carrier, carrier point i being
// the target of word rep(i): point in set iff the state accepts rep(i).
std::vector<Bits> state_language_sets(const Nfa& n,
                                      const std::vector<Word>& reps) {
    std::vector<Bits> sets(n.state_count, Bits(static_cast<int>(reps.size())));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        Bits acc = n.finals;
        for (auto it = reps[i].rbegin(); it != reps[i].rend(); ++it)
            acc = n.pre(acc, *it);
        acc.for_each([&](int q) { sets[q].set(static_cast<int>(i)); });
    }
    return sets;
}

struct FamilyData {
    std::vector<Bits> family;   // canonically sorted, union-closed
    std::vector<int> jirr, mirr;
    FinLatticePtr lattice;
};

FamilyData close_family(int width, const std::vector<Bits>& gens) {
    FamilyData fd;
    fd.family = union_closure(width, gens);
    std::vector<std::string> labels;
    for (const Bits& o : fd.family) labels.push_back(subset_label(o, {}));
    fd.lattice = share(lattice_of_family(fd.family, std::move(labels)));
    fd.jirr = fd.lattice->join_irreducibles();
    fd.mirr = fd.lattice->meet_irreducibles();
    return fd;
}

// Certificate with object pirr_of(family lattice) and tables induced by
// the inclusion maps and the derivative action on carrier points.
Certificate certificate_from_family(const FamilyData& fd,
                                    const std::vector<Bits>& lower_rows,
                                    const std::vector<std::vector<int>>& act,
                                    int upper_carrier, CertKind kind, int k) {
    Certificate c;
    c.kind = kind;
    c.k = k;
    c.s = pirr_of(*fd.lattice);
    const auto& fam = fd.family;
    const int nj = static_cast<int>(fd.jirr.size());
    const int nm = static_cast<int>(fd.mirr.size());

    c.p = BitMatrix(static_cast<int>(lower_rows.size()), nm);
    for (std::size_t r = 0; r < lower_rows.size(); ++r)
        for (int mi = 0; mi < nm; ++mi)
            if (!lower_rows[r].is_subset_of(fam[fd.mirr[mi]]))
                c.p.set(static_cast<int>(r), mi);

    c.q = BitMatrix(nj, upper_carrier);
    for (int ji = 0; ji < nj; ++ji)
        fam[fd.jirr[ji]].for_each([&](int pt) { c.q.set(ji, pt); });

    for (const auto& a : act) {
        BitMatrix t(nj, nm);
        for (int ji = 0; ji < nj; ++ji) {
            Bits deriv(upper_carrier);
            for (int pt = 0; pt < upper_carrier; ++pt)
                if (fam[fd.jirr[ji]].test(a[pt])) deriv.set(pt);
            for (int mi = 0; mi < nm; ++mi)
                if (!deriv.is_subset_of(fam[fd.mirr[mi]])) t.set(ji, mi);
        }
        c.t.push_back(std::move(t));
    }
    return c;
}

}  // namespace

Certificate extract_certificate(const Nfa& n, const Dfa& a, const Dfa& b) {
    DerivativeSystem ds = derivative_system(a, b);
    if (!equivalent(n, ds.lang_dfa))
        throw LanguageMismatch("nfa does not accept the instance language");
    if (!is_atomic(n)) throw NotAtomic("nfa is not atomic");

    // Carrier: Nerode classes, i.e. rev_dfa states; point i tests the
    // reversed representative of state i.
    std::vector<Word> reps;
    for (const Word& w : ds.reps_right) reps.push_back(reversed(w));
    std::vector<Bits> sets = state_language_sets(n, reps);
    FamilyData fd = close_family(ds.rev_dfa.state_count, sets);

    LowerPath lp = lower_path(ds);
    std::vector<Bits> lower_rows;
    for (int p = 0; p < lp.dr.rows; ++p) lower_rows.push_back(lp.dr.bits.row(p));
    std::vector<std::vector<int>> act;
    for (int sym = 0; sym < ds.rev_dfa.alphabet.size(); ++sym) {
        std::vector<int> am(ds.rev_dfa.state_count);
        for (int q = 0; q < ds.rev_dfa.state_count; ++q)
            am[q] = ds.rev_dfa.step(q, sym);
        act.push_back(std::move(am));
    }
    return certificate_from_family(fd, lower_rows, act,
                                   ds.rev_dfa.state_count, CertKind::atomic,
                                   n.state_count);
}

Certificate extract_subatomic_certificate(const Nfa& n,
                                          const MonoidRecognizer& m) {
    if (!m.is_associative_with_identity())
        throw Error("monoid recognizer table is invalid");
    DerivativeSystem ds =
        derivative_system(monoid_to_dfa(m), opposite_monoid_to_dfa(m));
    if (!equivalent(n, ds.lang_dfa))
        throw LanguageMismatch("nfa does not accept the instance language");
    if (!is_subatomic(n, ds.lang_dfa))
        throw NotSubatomic("nfa is not subatomic");

    MonoidRecognizer syn = syntactic_monoid(ds.lang_dfa);
    std::vector<Bits> sets = state_language_sets(n, syn.reps);
    FamilyData fd = close_family(syn.size, sets);

    LowerPath lp = lower_path(ds);
    // Lower rows as syntactic-class sets of the left derivatives.
    std::vector<Bits> lower_rows;
    for (int p = 0; p < ds.lang_dfa.state_count; ++p) {
        int elem = syn.eval(ds.reps_left[p]);
        Bits row(syn.size);
        for (int i = 0; i < syn.size; ++i)
            if (syn.finals.test(syn.mul(elem, i))) row.set(i);
        lower_rows.push_back(std::move(row));
    }
    std::vector<std::vector<int>> act;
    for (int sym = 0; sym < syn.alphabet.size(); ++sym) {
        std::vector<int> am(syn.size);
        for (int i = 0; i < syn.size; ++i)
            am[i] = syn.mul(syn.letter_map[sym], i);
        act.push_back(std::move(am));
    }
    return certificate_from_family(fd, lower_rows, act, syn.size,
                                   CertKind::subatomic, n.state_count);
}

namespace {

// Exhaustive search for the least generating set of a union-closed,
// derivative-closed family covering the required sets. Generators are
// added along unsatisfied requirements in canonical order.
struct FamilySearch {
    int width;
    std::vector<Bits> base;  // distinct nonempty requirements
    const std::vector<std::vector<int>>* act;
    int nsym;
    std::uint64_t node_budget;
    std::uint64_t nodes = 0;
    int klimit = 0;
    int proven_lb = 0;
    std::vector<Bits> gens;
    std::set<std::string> memo;
    static constexpr std::size_t kMemoCap = 1u << 20;

    Bits derive(const Bits& y, int sym) const {
        Bits out(width);
        for (int p = 0; p < width; ++p)
            if (y.test((*act)[sym][p])) out.set(p);
        return out;
    }

    Bits covered_part(const Bits& x) const {
        Bits u(width);
        for (const Bits& g : gens)
            if (g.is_subset_of(x)) u |= g;
        return u;
    }

    std::vector<Bits> unsatisfied() const {
        std::vector<Bits> all = base;
        for (const Bits& g : gens)
            for (int sym = 0; sym < nsym; ++sym) all.push_back(derive(g, sym));
        std::sort(all.begin(), all.end(), canonical_less);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::vector<Bits> out;
        for (const Bits& x : all)
            if (covered_part(x) != x) out.push_back(x);
        return out;
    }

    void bump() {
        if (++nodes > node_budget)
            throw BudgetExceeded("family search budget exhausted", proven_lb);
    }

    bool dfs() {
        bump();
        std::vector<Bits> unsat = unsatisfied();
        if (unsat.empty()) return true;
        int slots = klimit - static_cast<int>(gens.size());
        if (slots <= 0) return false;

        if (slots == 1) {
            // The one remaining generator is pinned between the union of
            // uncovered parts and the intersection of the open requirements.
            Bits lo(width);
            Bits hi = Bits::ones(width);
            for (const Bits& x : unsat) {
                lo |= x - covered_part(x);
                hi &= x;
            }
            if (!lo.is_subset_of(hi)) return false;
            std::vector<int> free = (hi - lo).indices();
            if (free.size() > 24)
                throw BudgetExceeded("family search interval too wide",
                                     proven_lb);
            for (std::uint64_t mask = 0;
                 mask < (std::uint64_t(1) << free.size()); ++mask) {
                bump();
                Bits g = lo;
                for (std::size_t i = 0; i < free.size(); ++i)
                    if ((mask >> i) & 1) g.set(free[i]);
                gens.push_back(g);
                bool ok = unsatisfied().empty();
                if (!ok) gens.pop_back();
                else return true;
            }
            return false;
        }

        // Branch on the smallest open requirement.
        const Bits* pick = &unsat[0];
        for (const Bits& x : unsat)
            if (x.count() < pick->count()) pick = &x;
        Bits x = *pick;
        int t = (x - covered_part(x)).next(0);
        std::vector<int> rest;
        x.for_each([&](int i) { if (i != t) rest.push_back(i); });
        for (std::uint64_t mask = 0;
             mask < (std::uint64_t(1) << rest.size()); ++mask) {
            Bits g(width);
            g.set(t);
            for (std::size_t i = 0; i < rest.size(); ++i)
                if ((mask >> i) & 1) g.set(rest[i]);
            gens.push_back(g);
            std::string sig;
            {
                std::vector<std::string> keys;
                for (const Bits& gg : gens) keys.push_back(gg.to_string01());
                std::sort(keys.begin(), keys.end());
                for (auto& kk : keys) sig += kk;
            }
            bool fresh = memo.size() >= kMemoCap || memo.insert(sig).second;
            if (fresh && dfs()) return true;
            gens.pop_back();
        }
        return false;
    }
};

struct FamilyProblem {
    int width = 0;
    std::vector<Bits> required;  // may contain duplicates/empties
    std::vector<std::vector<int>> act;
    Bits init_set;
    int final_point = 0;
    Alphabet alphabet;
};

JslDfa family_to_jsl(const FamilyProblem& fp, const std::vector<Bits>& gens) {
    std::vector<Bits> all = gens;
    for (const Bits& x : fp.required) all.push_back(x);
    std::vector<Bits> family = union_closure(fp.width, all);
    std::vector<std::string> labels;
    for (const Bits& o : family) labels.push_back(subset_label(o, {}));
    auto lat = share(lattice_of_family(family, std::move(labels)));

    JslDfa jsl;
    jsl.lattice = lat;
    jsl.alphabet = fp.alphabet;
    jsl.element_sets = family;
    for (int sym = 0; sym < fp.alphabet.size(); ++sym) {
        std::vector<int> map(family.size());
        for (std::size_t e = 0; e < family.size(); ++e) {
            Bits img(fp.width);
            for (int p = 0; p < fp.width; ++p)
                if (family[e].test(fp.act[sym][p])) img.set(p);
            int idx = family_index(family, img);
            if (idx < 0) throw Error("family is not derivative closed");
            map[e] = idx;
        }
        jsl.trans.push_back(JslMorphism::from_map(lat, lat, std::move(map)));
    }
    jsl.init = family_index(family, fp.init_set);
    if (jsl.init < 0) throw Error("initial set missing from the family");
    Bits s0(fp.width);
    for (const Bits& o : family)
        if (!o.test(fp.final_point)) s0 |= o;
    jsl.final_filter = family_index(family, s0);
    if (jsl.final_filter < 0) throw Error("final filter missing from the family");
    return jsl;
}

std::optional<OracleResult> solve_family(const FamilyProblem& fp, int kmax,
                                         std::uint64_t budget) {
    if (fp.width >= 63 ||
        (std::uint64_t(1) << fp.width) > std::max<std::uint64_t>(budget, 2))
        throw BudgetExceeded("derivative algebra exceeds the size budget");

    FamilySearch search;
    search.width = fp.width;
    for (const Bits& x : fp.required)
        if (x.any()) search.base.push_back(x);
    std::sort(search.base.begin(), search.base.end(), canonical_less);
    search.base.erase(std::unique(search.base.begin(), search.base.end()),
                      search.base.end());
    search.act = &fp.act;
    search.nsym = fp.alphabet.size();
    search.node_budget = std::max<std::uint64_t>(budget, std::uint64_t(1) << 22);

    for (int k = 0; k <= kmax; ++k) {
        if (k < 62 &&
            ((std::uint64_t(1) << k) - 1) < search.base.size()) {
            search.proven_lb = k + 1;
            continue;  // k generators span too few distinct unions
        }
        search.klimit = k;
        search.gens.clear();
        search.memo.clear();
        if (search.dfs()) {
            OracleResult res;
            res.value = k;
            res.witness = family_to_jsl(fp, search.gens);
            return res;
        }
        search.proven_lb = k + 1;
    }
    return std::nullopt;
}

}  // namespace

std::optional<OracleResult> na_oracle(const Dfa& a, const Dfa& b, int kmax,
                                      std::uint64_t budget) {
    DerivativeSystem ds = derivative_system(a, b);
    LowerPath lp = lower_path(ds);
    FamilyProblem fp;
    fp.width = ds.rev_dfa.state_count;
    fp.alphabet = ds.lang_dfa.alphabet;
    for (int p = 0; p < lp.dr.rows; ++p) fp.required.push_back(lp.dr.bits.row(p));
    for (int sym = 0; sym < fp.alphabet.size(); ++sym) {
        std::vector<int> am(fp.width);
        for (int q = 0; q < fp.width; ++q) am[q] = ds.rev_dfa.step(q, sym);
        fp.act.push_back(std::move(am));
    }
    fp.init_set = Bits(fp.width);
    for (int q = 0; q < fp.width; ++q)
        if (ds.rev_dfa.finals.test(q)) fp.init_set.set(q);
    fp.final_point = ds.rev_dfa.init;
    return solve_family(fp, kmax, budget);
}

std::optional<OracleResult> nmu_oracle(const MonoidRecognizer& m, int kmax,
                                       std::uint64_t budget) {
    if (!m.is_associative_with_identity())
        throw Error("monoid recognizer table is invalid");
    MonoidRecognizer syn = syntactic_monoid(monoid_to_dfa(m));
    FamilyProblem fp;
    fp.width = syn.size;
    fp.alphabet = syn.alphabet;
    for (int n = 0; n < syn.size; ++n) {
        Bits row(syn.size);
        for (int i = 0; i < syn.size; ++i)
            if (syn.finals.test(syn.mul(n, i))) row.set(i);
        fp.required.push_back(std::move(row));
    }
    for (int sym = 0; sym < syn.alphabet.size(); ++sym) {
        std::vector<int> am(syn.size);
        for (int i = 0; i < syn.size; ++i)
            am[i] = syn.mul(syn.letter_map[sym], i);
        fp.act.push_back(std::move(am));
    }
    fp.init_set = Bits(fp.width);
    for (int i = 0; i < syn.size; ++i)
        if (syn.finals.test(i)) fp.init_set.set(i);
    fp.final_point = 0;
    return solve_family(fp, kmax, budget);
}

}  // namespace atomnfa
