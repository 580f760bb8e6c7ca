#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atomnfa/bits.hpp"

namespace atomnfa {

/// Explicit finite join-semilattice. Since every subset is required to
/// have a join (including the empty one), these are exactly the finite
/// lattices; meets are derived. Stored by the <= table and validated
/// eagerly: an invalid order never becomes a value.
class FinLattice {
public:
    /// Builds a lattice from its order table (leq(i,j) iff i <= j).
    /// Throws InvalidMorphism-free errors: Error on a non-order or a
    /// missing join/bottom.
    static FinLattice from_leq(BitMatrix leq,
                               std::vector<std::string> labels = {});

    int size() const { return n_; }
    bool leq(int i, int j) const { return leq_.test(i, j); }
    int join(int i, int j) const { return join_[i * n_ + j]; }
    int meet(int i, int j) const { return meet_[i * n_ + j]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    /// Join of an arbitrary element subset (bottom for the empty set).
    int join_of(const Bits& xs) const;
    int meet_of(const Bits& xs) const;

    /// Elements above / below x, inclusive.
    Bits up_set(int x) const;
    Bits down_set(int x) const;

    const std::vector<int>& join_irreducibles() const { return jirr_; }
    const std::vector<int>& meet_irreducibles() const { return mirr_; }

    /// The opposite lattice (order reversed).
    FinLattice opposite() const;

    const BitMatrix& leq_table() const { return leq_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const FinLattice& o) const {
        return n_ == o.n_ && leq_ == o.leq_;
    }
    bool operator!=(const FinLattice& o) const { return !(*this == o); }

private:
    FinLattice() = default;

    int n_ = 0;
    BitMatrix leq_;
    std::vector<int> join_, meet_;
    int bottom_ = -1, top_ = -1;
    std::vector<int> jirr_, mirr_;
    std::vector<std::string> labels_;
};

using FinLatticePtr = std::shared_ptr<const FinLattice>;

inline FinLatticePtr share(FinLattice s) {
    return std::make_shared<const FinLattice>(std::move(s));
}

/// The two-element lattice 0 < 1.
FinLattice two_lattice();

/// Join-preserving map between finite lattices, stored as a value table.
/// Validation (bottom and binary joins) happens at construction.
class JslMorphism {
public:
    static JslMorphism from_map(FinLatticePtr dom, FinLatticePtr cod,
                                std::vector<int> map);

    const FinLattice& dom() const { return *dom_; }
    const FinLattice& cod() const { return *cod_; }
    FinLatticePtr dom_ptr() const { return dom_; }
    FinLatticePtr cod_ptr() const { return cod_; }

    int operator()(int x) const { return map_[x]; }
    const std::vector<int>& map() const { return map_; }

    bool operator==(const JslMorphism& o) const {
        return *dom_ == *o.dom_ && *cod_ == *o.cod_ && map_ == o.map_;
    }
    bool operator!=(const JslMorphism& o) const { return !(*this == o); }

private:
    JslMorphism(FinLatticePtr dom, FinLatticePtr cod, std::vector<int> map)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}

    FinLatticePtr dom_, cod_;
    std::vector<int> map_;
};

/// Checks the morphism laws without constructing.
bool is_jsl_morphism(const FinLattice& dom, const FinLattice& cod,
                     const std::vector<int>& map);

JslMorphism identity_morphism(FinLatticePtr s);

/// g after f; requires f.cod == g.dom.
JslMorphism compose(const JslMorphism& g, const JslMorphism& f);

/// Pointwise join of two parallel morphisms.
JslMorphism pointwise_join(const JslMorphism& f, const JslMorphism& g);

/// Join-irreducibles J (bottom excluded) and meet-irreducibles M (top
/// excluded), both in ascending element order.
std::pair<std::vector<int>, std::vector<int>> irreducibles(const FinLattice& s);

/// The adjoint f_* : T^op -> S^op with t |-> join{ s : f(s) <= t }.
JslMorphism adjoint(const JslMorphism& f);

/// The two-valued morphism x |-> t0 if x is not <= s0, else bottom.
JslMorphism ostar(int s0, int t0, FinLatticePtr s, FinLatticePtr t);

/// Distributivity of the derived meet over join, checked on all triples.
bool is_distributive(const FinLattice& s);

/// True iff f equals the pointwise join of all morphisms m (*) j
/// (m meet-irreducible in dom, j join-irreducible in cod) lying
/// pointwise below f.
bool is_nuclear_morphism(const JslMorphism& f);

/// Order-isomorphism search; returns the image permutation if one exists.
std::optional<std::vector<int>> find_order_isomorphism(const FinLattice& a,
                                                       const FinLattice& b);

}  // namespace atomnfa
