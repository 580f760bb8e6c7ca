#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "atomnfa/bits.hpp"
#include "atomnfa/semilattice.hpp"

namespace atomnfa {

/// A finite relation with named row/column carriers: the objects of the
/// category of dependency relations, and the substrate of the biclique
/// search.
struct Rel {
    int rows = 0;
    int cols = 0;
    std::vector<std::string> row_labels;  // empty = unlabeled
    std::vector<std::string> col_labels;
    BitMatrix bits;

    Rel() = default;
    Rel(int rows, int cols) : rows(rows), cols(cols), bits(rows, cols) {}

    static Rel identity(int n);
    static Rel from_bits(BitMatrix m,
                         std::vector<std::string> row_labels = {},
                         std::vector<std::string> col_labels = {});

    bool test(int r, int c) const { return bits.test(r, c); }
    void set(int r, int c) { bits.set(r, c); }

    Rel converse() const;

    bool operator==(const Rel& o) const {
        return rows == o.rows && cols == o.cols && bits == o.bits;
    }
    bool operator!=(const Rel& o) const { return !(*this == o); }
};

using RelPtr = std::shared_ptr<const Rel>;

inline RelPtr share(Rel r) { return std::make_shared<const Rel>(std::move(r)); }

/// A relation between the carriers of two Rel objects together with
/// optional user-supplied witnesses. Witnesses are advisory: validity is
/// always certified against the recomputed maximal ones.
struct DepMorphism {
    RelPtr src, dst;
    BitMatrix bits;  // src->rows x dst->cols
    std::optional<BitMatrix> lower, upper;

    DepMorphism() = default;
    DepMorphism(RelPtr src, RelPtr dst, BitMatrix bits)
        : src(std::move(src)), dst(std::move(dst)), bits(std::move(bits)) {}
};

/// Maximal lower/upper witnesses of a candidate morphism table:
///   lower(x,y) iff S[y] is a subset of P[x]     (over source carriers)
///   upper(y,x) iff R~[x] is a subset of P~[y]   (over target carriers)
std::pair<BitMatrix, BitMatrix> maximal_witnesses(const BitMatrix& p,
                                                  const Rel& r, const Rel& s);

/// True iff lower;S = P = R;upper~ holds with the maximal witnesses.
bool is_dep_morphism(const BitMatrix& p, const Rel& r, const Rel& s);

bool is_dep_morphism(const DepMorphism& p);

DepMorphism dep_identity(RelPtr r);

/// Composition via the maximal upper witness of q: bits = p ; q_upper~.
DepMorphism dep_compose(const DepMorphism& p, const DepMorphism& q);

/// The semilattice of open sets { R[X] : X subset of rows }, ordered by
/// inclusion, elements sorted canonically (size, then bit pattern) and
/// labeled by their column subsets.
FinLattice open_of(const Rel& r);

/// Open sets as column subsets, in the element order of open_of.
std::vector<Bits> open_sets(const Rel& r);

/// Open(P) : open_of(src) -> open_of(dst), O |-> upper~[O].
JslMorphism open_morphism(const DepMorphism& p);

/// The poset of irreducibles: rows J(S), cols M(S), bit set iff j is not
/// below m. Labels carry the element indices.
Rel pirr_of(const FinLattice& s);

/// Pirr(f) : pirr_of(dom) -> pirr_of(cod) with bit (j,m) iff f(j) not <= m.
DepMorphism pirr_morphism(const JslMorphism& f);

/// Largest open set of r contained in y (a column subset).
Bits interior(const Rel& r, const Bits& y);

/// Join/meet irreducibles of the open-set lattice, as canonical column
/// subsets: J = row images not unions of smaller row images, M = sets
/// interior(cols minus {y}) for columns y whose converse image is
/// join-irreducible on the converse side.
std::pair<std::vector<Bits>, std::vector<Bits>> open_irreducibles(const Rel& r);

/// Union closure of the given generators (the empty union included),
/// sorted canonically.
std::vector<Bits> union_closure(int width, const std::vector<Bits>& gens);

/// Builds the inclusion-ordered lattice of an inclusion-closed family of
/// distinct, canonically sorted subsets.
FinLattice lattice_of_family(const std::vector<Bits>& family,
                             std::vector<std::string> labels = {});

/// Index of a set within a canonically sorted family, or -1.
int family_index(const std::vector<Bits>& family, const Bits& x);

/// Render a column subset as a label like "{a,c}".
std::string subset_label(const Bits& x, const std::vector<std::string>& names);

}  // namespace atomnfa
