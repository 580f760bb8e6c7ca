#include "atomnfa/semilattice.hpp"

#include <algorithm>

#include "atomnfa/errors.hpp"

namespace atomnfa {

FinLattice FinLattice::from_leq(BitMatrix leq, std::vector<std::string> labels) {
    const int n = leq.rows();
    if (leq.cols() != n) throw Error("leq table must be square");
    if (n == 0) throw Error("lattice must be nonempty");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw Error("label count does not match lattice size");

    for (int i = 0; i < n; ++i)
        if (!leq.test(i, i)) throw Error("leq not reflexive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && leq.test(i, j) && leq.test(j, i))
                throw Error("leq not antisymmetric");
            if (leq.test(i, j) && !leq.row(j).is_subset_of(leq.row(i)))
                throw Error("leq not transitive");
        }

    FinLattice s;
    s.n_ = n;
    s.leq_ = std::move(leq);
    s.labels_ = std::move(labels);

    for (int b = 0; b < n; ++b) {
        bool least = true;
        for (int j = 0; j < n; ++j) least = least && s.leq_.test(b, j);
        if (least) { s.bottom_ = b; break; }
    }
    if (s.bottom_ < 0) throw Error("lattice has no bottom element");

    s.join_.assign(n * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bits ub = s.leq_.row(i) & s.leq_.row(j);
            int least = -1;
            ub.for_each([&](int u) {
                if (least == -1 && ub.is_subset_of(s.leq_.row(u))) least = u;
            });
            if (least < 0) throw Error("pair without a join");
            s.join_[i * n + j] = least;
        }

    int t = 0;
    for (int i = 1; i < n; ++i) t = s.join_[t * n + i];
    s.top_ = t;

    // Meet = join of the common lower bounds; exists in any finite lattice.
    BitMatrix geq = s.leq_.transposed();
    s.meet_.assign(n * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bits lb = geq.row(i) & geq.row(j);
            int m = s.bottom_;
            lb.for_each([&](int x) { m = s.join_[m * n + x]; });
            s.meet_[i * n + j] = m;
        }

    for (int x = 0; x < n; ++x) {
        if (x != s.bottom_) {
            int below = s.bottom_;
            for (int y = 0; y < n; ++y)
                if (y != x && s.leq_.test(y, x)) below = s.join_[below * n + y];
            if (below != x) s.jirr_.push_back(x);
        }
        if (x != s.top_) {
            int above = s.top_;
            for (int y = 0; y < n; ++y)
                if (y != x && s.leq_.test(x, y)) above = s.meet_[above * n + y];
            if (above != x) s.mirr_.push_back(x);
        }
    }
    return s;
}

int FinLattice::join_of(const Bits& xs) const {
    int j = bottom_;
    xs.for_each([&](int x) { j = join(j, x); });
    return j;
}

int FinLattice::meet_of(const Bits& xs) const {
    int m = top_;
    xs.for_each([&](int x) { m = meet(m, x); });
    return m;
}

Bits FinLattice::up_set(int x) const { return leq_.row(x); }

Bits FinLattice::down_set(int x) const {
    Bits d(n_);
    for (int y = 0; y < n_; ++y) if (leq_.test(y, x)) d.set(y);
    return d;
}

FinLattice FinLattice::opposite() const {
    return from_leq(leq_.transposed(), labels_);
}

FinLattice two_lattice() {
    BitMatrix leq(2, 2);
    leq.set(0, 0);
    leq.set(0, 1);
    leq.set(1, 1);
    return FinLattice::from_leq(std::move(leq), {"bot", "top"});
}

bool is_jsl_morphism(const FinLattice& dom, const FinLattice& cod,
                     const std::vector<int>& map) {
    const int n = dom.size();
    if (static_cast<int>(map.size()) != n) return false;
    for (int v : map) if (v < 0 || v >= cod.size()) return false;
    if (map[dom.bottom()] != cod.bottom()) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (map[dom.join(i, j)] != cod.join(map[i], map[j])) return false;
    return true;
}

JslMorphism JslMorphism::from_map(FinLatticePtr dom, FinLatticePtr cod,
                                  std::vector<int> map) {
    if (!is_jsl_morphism(*dom, *cod, map))
        throw InvalidMorphism("map does not preserve bottom/joins");
    return JslMorphism(std::move(dom), std::move(cod), std::move(map));
}

JslMorphism identity_morphism(FinLatticePtr s) {
    std::vector<int> id(s->size());
    for (int i = 0; i < s->size(); ++i) id[i] = i;
    return JslMorphism::from_map(s, s, std::move(id));
}

JslMorphism compose(const JslMorphism& g, const JslMorphism& f) {
    if (f.cod() != g.dom()) throw ObjectMismatch("composition domain mismatch");
    std::vector<int> m(f.dom().size());
    for (int i = 0; i < f.dom().size(); ++i) m[i] = g(f(i));
    return JslMorphism::from_map(f.dom_ptr(), g.cod_ptr(), std::move(m));
}

JslMorphism pointwise_join(const JslMorphism& f, const JslMorphism& g) {
    if (f.dom() != g.dom() || f.cod() != g.cod())
        throw ObjectMismatch("pointwise join of non-parallel morphisms");
    std::vector<int> m(f.dom().size());
    for (int i = 0; i < f.dom().size(); ++i) m[i] = f.cod().join(f(i), g(i));
    return JslMorphism::from_map(f.dom_ptr(), f.cod_ptr(), std::move(m));
}

std::pair<std::vector<int>, std::vector<int>> irreducibles(const FinLattice& s) {
    return {s.join_irreducibles(), s.meet_irreducibles()};
}

JslMorphism adjoint(const JslMorphism& f) {
    const FinLattice& s = f.dom();
    const FinLattice& t = f.cod();
    auto dom_op = share(t.opposite());
    auto cod_op = share(s.opposite());
    std::vector<int> m(t.size());
    for (int y = 0; y < t.size(); ++y) {
        Bits below(s.size());
        for (int x = 0; x < s.size(); ++x)
            if (t.leq(f(x), y)) below.set(x);
        m[y] = s.join_of(below);
    }
    return JslMorphism::from_map(std::move(dom_op), std::move(cod_op),
                                 std::move(m));
}

JslMorphism ostar(int s0, int t0, FinLatticePtr s, FinLatticePtr t) {
    std::vector<int> m(s->size());
    for (int x = 0; x < s->size(); ++x)
        m[x] = s->leq(x, s0) ? t->bottom() : t0;
    return JslMorphism::from_map(std::move(s), std::move(t), std::move(m));
}

bool is_distributive(const FinLattice& s) {
    const int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (s.meet(x, s.join(y, z)) !=
                    s.join(s.meet(x, y), s.meet(x, z)))
                    return false;
    return true;
}

bool is_nuclear_morphism(const JslMorphism& f) {
    const FinLattice& s = f.dom();
    const FinLattice& t = f.cod();
    // Pointwise join of every m (*) j dominated by f; f is nuclear iff
    // the join reconstructs f.
    std::vector<int> acc(s.size(), t.bottom());
    for (int m : s.meet_irreducibles())
        for (int j : t.join_irreducibles()) {
            bool dominated = true;
            for (int x = 0; x < s.size() && dominated; ++x) {
                int v = s.leq(x, m) ? t.bottom() : j;
                dominated = t.leq(v, f(x));
            }
            if (!dominated) continue;
            for (int x = 0; x < s.size(); ++x)
                if (!s.leq(x, m)) acc[x] = t.join(acc[x], j);
        }
    return acc == f.map();
}

namespace {

bool extend_iso(const FinLattice& a, const FinLattice& b, std::vector<int>& img,
                std::vector<char>& used, int next) {
    const int n = a.size();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            ok = a.leq(prev, next) == b.leq(img[prev], cand) &&
                 a.leq(next, prev) == b.leq(cand, img[prev]);
        }
        if (!ok) continue;
        img[next] = cand;
        used[cand] = 1;
        if (extend_iso(a, b, img, used, next + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_order_isomorphism(const FinLattice& a,
                                                       const FinLattice& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<int> img(a.size(), -1);
    std::vector<char> used(a.size(), 0);
    if (extend_iso(a, b, img, used, 0)) return img;
    return std::nullopt;
}

}  // namespace atomnfa
