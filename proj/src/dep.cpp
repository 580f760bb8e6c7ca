#include "atomnfa/dep.hpp"

#include <algorithm>
#include <map>

#include "atomnfa/errors.hpp"

namespace atomnfa {

Rel Rel::identity(int n) {
    Rel r(n, n);
    r.bits = BitMatrix::identity(n);
    return r;
}

Rel Rel::from_bits(BitMatrix m, std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels) {
    Rel r(m.rows(), m.cols());
    r.bits = std::move(m);
    if (!row_labels.empty() && static_cast<int>(row_labels.size()) != r.rows)
        throw ShapeMismatch("row label count mismatch");
    if (!col_labels.empty() && static_cast<int>(col_labels.size()) != r.cols)
        throw ShapeMismatch("col label count mismatch");
    r.row_labels = std::move(row_labels);
    r.col_labels = std::move(col_labels);
    return r;
}

Rel Rel::converse() const {
    Rel c(cols, rows);
    c.bits = bits.transposed();
    c.row_labels = col_labels;
    c.col_labels = row_labels;
    return c;
}

std::pair<BitMatrix, BitMatrix> maximal_witnesses(const BitMatrix& p,
                                                  const Rel& r, const Rel& s) {
    if (p.rows() != r.rows || p.cols() != s.cols)
        throw ShapeMismatch("morphism table shape does not match objects");
    BitMatrix lower(r.rows, s.rows);
    for (int x = 0; x < r.rows; ++x)
        for (int y = 0; y < s.rows; ++y)
            if (s.bits.row(y).is_subset_of(p.row(x))) lower.set(x, y);
    BitMatrix pt = p.transposed();
    BitMatrix rt = r.bits.transposed();
    BitMatrix upper(s.cols, r.cols);
    for (int y = 0; y < s.cols; ++y)
        for (int x = 0; x < r.cols; ++x)
            if (rt.row(x).is_subset_of(pt.row(y))) upper.set(y, x);
    return {std::move(lower), std::move(upper)};
}

bool is_dep_morphism(const BitMatrix& p, const Rel& r, const Rel& s) {
    auto [lower, upper] = maximal_witnesses(p, r, s);
    if (lower.compose(s.bits) != p) return false;
    return r.bits.compose(upper.transposed()) == p;
}

bool is_dep_morphism(const DepMorphism& p) {
    return is_dep_morphism(p.bits, *p.src, *p.dst);
}

DepMorphism dep_identity(RelPtr r) {
    BitMatrix b = r->bits;
    DepMorphism m(r, r, std::move(b));
    m.lower = BitMatrix::identity(r->rows);
    m.upper = BitMatrix::identity(r->cols);
    return m;
}

DepMorphism dep_compose(const DepMorphism& p, const DepMorphism& q) {
    if (*p.dst != *q.src) throw ObjectMismatch("composing non-adjacent morphisms");
    auto [ql, qu] = maximal_witnesses(q.bits, *q.src, *q.dst);
    (void)ql;
    return DepMorphism(p.src, q.dst, p.bits.compose(qu.transposed()));
}

std::vector<Bits> open_sets(const Rel& r) {
    std::vector<Bits> rows;
    rows.reserve(r.rows);
    for (int i = 0; i < r.rows; ++i) rows.push_back(r.bits.row(i));
    return union_closure(r.cols, rows);
}

std::vector<Bits> union_closure(int width, const std::vector<Bits>& gens) {
    std::vector<Bits> family{Bits(width)};
    auto key = [](const Bits& b) { return b.to_string01(); };
    std::map<std::string, char> seen{{family[0].to_string01(), 1}};
    for (std::size_t next = 0; next < family.size(); ++next) {
        Bits base = family[next];
        for (const Bits& g : gens) {
            Bits u = base | g;
            auto k = key(u);
            if (!seen.count(k)) {
                seen.emplace(std::move(k), 1);
                family.push_back(std::move(u));
            }
        }
    }
    std::sort(family.begin(), family.end(), canonical_less);
    return family;
}

FinLattice lattice_of_family(const std::vector<Bits>& family,
                             std::vector<std::string> labels) {
    const int n = static_cast<int>(family.size());
    BitMatrix leq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (family[i].is_subset_of(family[j])) leq.set(i, j);
    return FinLattice::from_leq(std::move(leq), std::move(labels));
}

int family_index(const std::vector<Bits>& family, const Bits& x) {
    auto it = std::lower_bound(family.begin(), family.end(), x, canonical_less);
    if (it != family.end() && *it == x)
        return static_cast<int>(it - family.begin());
    return -1;
}

std::string subset_label(const Bits& x, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    x.for_each([&](int i) {
        if (!first) out += ",";
        first = false;
        out += names.empty() ? std::to_string(i) : names[i];
    });
    return out + "}";
}

FinLattice open_of(const Rel& r) {
    std::vector<Bits> family = open_sets(r);
    std::vector<std::string> labels;
    labels.reserve(family.size());
    for (const Bits& o : family) labels.push_back(subset_label(o, r.col_labels));
    return lattice_of_family(family, std::move(labels));
}

JslMorphism open_morphism(const DepMorphism& p) {
    if (!is_dep_morphism(p)) throw InvalidMorphism("not a Dep-morphism");
    auto [lower, upper] = maximal_witnesses(p.bits, *p.src, *p.dst);
    (void)lower;
    std::vector<Bits> dom_sets = open_sets(*p.src);
    std::vector<Bits> cod_sets = open_sets(*p.dst);
    BitMatrix ut = upper.transposed();
    std::vector<int> map(dom_sets.size());
    for (std::size_t i = 0; i < dom_sets.size(); ++i) {
        int idx = family_index(cod_sets, ut.image(dom_sets[i]));
        if (idx < 0) throw InvalidMorphism("image is not an open set");
        map[i] = idx;
    }
    return JslMorphism::from_map(share(open_of(*p.src)), share(open_of(*p.dst)),
                                 std::move(map));
}

Rel pirr_of(const FinLattice& s) {
    const auto& js = s.join_irreducibles();
    const auto& ms = s.meet_irreducibles();
    Rel r(static_cast<int>(js.size()), static_cast<int>(ms.size()));
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = 0; b < ms.size(); ++b)
            if (!s.leq(js[a], ms[b])) r.set(static_cast<int>(a),
                                            static_cast<int>(b));
    for (int j : js) r.row_labels.push_back(std::to_string(j));
    for (int m : ms) r.col_labels.push_back(std::to_string(m));
    return r;
}

DepMorphism pirr_morphism(const JslMorphism& f) {
    const FinLattice& s = f.dom();
    const FinLattice& t = f.cod();
    RelPtr src = share(pirr_of(s));
    RelPtr dst = share(pirr_of(t));
    const auto& js = s.join_irreducibles();
    const auto& ms = t.meet_irreducibles();
    BitMatrix bits(static_cast<int>(js.size()), static_cast<int>(ms.size()));
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = 0; b < ms.size(); ++b)
            if (!t.leq(f(js[a]), ms[b])) bits.set(static_cast<int>(a),
                                                  static_cast<int>(b));
    DepMorphism p(src, dst, std::move(bits));
    // Maximal witnesses have a closed form here; record them as advisory.
    BitMatrix lower(static_cast<int>(js.size()),
                    static_cast<int>(t.join_irreducibles().size()));
    const auto& jt = t.join_irreducibles();
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = 0; b < jt.size(); ++b)
            if (t.leq(jt[b], f(js[a]))) lower.set(static_cast<int>(a),
                                                  static_cast<int>(b));
    p.lower = std::move(lower);
    return p;
}

Bits interior(const Rel& r, const Bits& y) {
    if (y.size() != r.cols) throw ShapeMismatch("interior argument width");
    Bits out(r.cols);
    for (int x = 0; x < r.rows; ++x)
        if (r.bits.row(x).is_subset_of(y)) out |= r.bits.row(x);
    return out;
}

std::pair<std::vector<Bits>, std::vector<Bits>> open_irreducibles(const Rel& r) {
    std::vector<Bits> jirr;
    for (int x = 0; x < r.rows; ++x) {
        const Bits& rx = r.bits.row(x);
        if (rx.none()) continue;
        Bits u(r.cols);
        for (int y = 0; y < r.rows; ++y) {
            const Bits& ry = r.bits.row(y);
            if (ry != rx && ry.is_subset_of(rx)) u |= ry;
        }
        if (u != rx) jirr.push_back(rx);
    }
    std::sort(jirr.begin(), jirr.end(), canonical_less);
    jirr.erase(std::unique(jirr.begin(), jirr.end()), jirr.end());

    Rel rc = r.converse();
    std::vector<Bits> conv_jirr;
    for (int y = 0; y < rc.rows; ++y) {
        const Bits& cy = rc.bits.row(y);
        if (cy.none()) continue;
        Bits u(rc.cols);
        for (int z = 0; z < rc.rows; ++z) {
            const Bits& cz = rc.bits.row(z);
            if (cz != cy && cz.is_subset_of(cy)) u |= cz;
        }
        if (u != cy) conv_jirr.push_back(cy);
    }
    std::vector<Bits> mirr;
    for (int y = 0; y < r.cols; ++y) {
        const Bits& cy = rc.bits.row(y);
        bool irr = false;
        for (const Bits& b : conv_jirr) irr = irr || b == cy;
        if (!irr) continue;
        Bits co = Bits::ones(r.cols);
        co.reset(y);
        mirr.push_back(interior(r, co));
    }
    std::sort(mirr.begin(), mirr.end(), canonical_less);
    mirr.erase(std::unique(mirr.begin(), mirr.end()), mirr.end());
    return {std::move(jirr), std::move(mirr)};
}

}  // namespace atomnfa
