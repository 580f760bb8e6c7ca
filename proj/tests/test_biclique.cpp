#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atomnfa/biclique.hpp"
#include "atomnfa/errors.hpp"
#include "support.hpp"

using namespace atomnfa;
using namespace atomnfa::testing;

namespace {

Rel full(int r, int c) {
    Rel out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out.set(i, j);
    return out;
}

Rel permuted(const Rel& r, const std::vector<int>& prow,
             const std::vector<int>& pcol) {
    Rel out(r.rows, r.cols);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            if (r.test(i, j)) out.set(prow[i], pcol[j]);
    return out;
}

// Exhaustive cover search over unrestricted bicliques, as a cross-check.
int dim_by_exhaustion(const Rel& r, int kmax) {
    std::vector<std::pair<Bits, Bits>> all;
    for (std::uint64_t rm = 1; rm < (std::uint64_t(1) << r.rows); ++rm) {
        Bits rows(r.rows);
        for (int i = 0; i < r.rows; ++i)
            if ((rm >> i) & 1) rows.set(i);
        Bits common = Bits::ones(r.cols);
        rows.for_each([&](int i) { common &= r.bits.row(i); });
        if (common.none()) continue;
        all.push_back({rows, common});
    }
    std::vector<std::pair<int, Bits>> edges;  // row, col
    for (int k = 0; k <= kmax; ++k) {
        std::vector<int> pick(k, 0);
        std::function<bool(int, int)> rec = [&](int at, int from) -> bool {
            if (at == k) {
                BitMatrix covered(r.rows, r.cols);
                for (int i = 0; i < k; ++i) {
                    auto& [rows, cols] = all[pick[i]];
                    rows.for_each([&](int x) { covered.row(x) |= cols; });
                }
                return covered == r.bits;
            }
            for (int c = from; c < static_cast<int>(all.size()); ++c) {
                pick[at] = c;
                if (rec(at + 1, c + 1)) return true;
            }
            return false;
        };
        if (rec(0, 0)) return k;
    }
    return kmax + 1;
}

}  // namespace

TEST_CASE("cover verification") {
    Rel r0 = rel_r0();
    BicliqueCover good;
    good.bicliques.push_back({Bits::single(2, 0), Bits::ones(2)});
    good.bicliques.push_back({Bits::single(2, 1), Bits::single(2, 1)});
    CHECK(verify_cover(r0, good));

    BicliqueCover bad;
    bad.bicliques.push_back({Bits::ones(2), Bits::ones(2)});
    CHECK_FALSE(verify_cover(Rel::identity(2), bad));

    CHECK(verify_cover(Rel(2, 3), BicliqueCover{}));
}

TEST_CASE("exact dimension on the fixtures") {
    auto id3 = exact_dim(Rel::identity(3));
    REQUIRE(id3.has_value());
    CHECK(id3->dim == 3);
    CHECK(verify_cover(Rel::identity(3), id3->cover));

    auto r0 = exact_dim(rel_r0());
    REQUIRE(r0.has_value());
    CHECK(r0->dim == 2);
    CHECK(verify_cover(rel_r0(), r0->cover));

    auto f = exact_dim(full(3, 3));
    REQUIRE(f.has_value());
    CHECK(f->dim == 1);

    CHECK(exact_dim(Rel(3, 3))->dim == 0);
    CHECK_FALSE(exact_dim(Rel::identity(3), 2).has_value());
    CHECK_THROWS_AS(exact_dim(Rel::identity(4), -1, 0), BudgetExceeded);
}

TEST_CASE("greedy covers are valid upper bounds") {
    CHECK(greedy_cover(full(4, 2)).bicliques.size() == 1);
    CHECK(greedy_cover(Rel::identity(3)).bicliques.size() == 3);
    BicliqueCover g = greedy_cover(rel_r0());
    CHECK(verify_cover(rel_r0(), g));
    CHECK(g.bicliques.size() <= 3);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Rel r = random_rel(rng, 4, 4);
        BicliqueCover c = greedy_cover(r);
        CHECK(verify_cover(r, c));
        auto best = exact_dim(r);
        REQUIRE(best.has_value());
        CHECK(verify_cover(r, best->cover));
        CHECK(best->dim <= static_cast<int>(c.bicliques.size()));
    }
}

TEST_CASE("branch and bound agrees with unrestricted exhaustion") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Rel r = random_rel(rng, 3, 3);
        auto d = exact_dim(r);
        REQUIRE(d.has_value());
        CHECK(d->dim == dim_by_exhaustion(r, 3));
    }
}

TEST_CASE("dimension is invariant under relabeling") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Rel r = random_rel(rng, 4, 4);
        std::vector<int> prow(r.rows), pcol(r.cols);
        for (int i = 0; i < r.rows; ++i) prow[i] = i;
        for (int j = 0; j < r.cols; ++j) pcol[j] = j;
        std::shuffle(prow.begin(), prow.end(), rng);
        std::shuffle(pcol.begin(), pcol.end(), rng);
        CHECK(exact_dim(r)->dim == exact_dim(permuted(r, prow, pcol))->dim);
    }
}

TEST_CASE("dimension equals the least irreducible count over embeddings") {
    // one direction constructively: the cover's column sets generate a
    // lattice the open sets embed into, with at most dim irreducibles;
    // the other by exhausting all small lattices with fewer irreducibles
    auto catalogue = lattices_up_to(8);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        Rel r = random_rel(rng, 3, 3);
        auto d = exact_dim(r);
        REQUIRE(d.has_value());
        if (d->dim == 0) continue;

        std::vector<Bits> gens;
        for (const auto& [bx, by] : d->cover.bicliques) gens.push_back(by);
        std::vector<Bits> family = union_closure(r.cols, gens);
        FinLattice s = lattice_of_family(family);
        CHECK(static_cast<int>(s.join_irreducibles().size()) <= d->dim);
        // the open sets all appear in the family
        for (const Bits& o : open_sets(r))
            CHECK(family_index(family, o) >= 0);

        FinLattice open = open_of(r);
        for (const FinLattice& cand : catalogue) {
            if (static_cast<int>(cand.join_irreducibles().size()) >= d->dim)
                continue;
            // no injective morphism open -> cand may exist
            for (const auto& map : all_morphism_maps(open, cand)) {
                bool injective = true;
                for (int x = 0; x < open.size(); ++x)
                    for (int y = x + 1; y < open.size(); ++y)
                        if (map[x] == map[y]) injective = false;
                CHECK_FALSE(injective);
            }
        }
    }
}
