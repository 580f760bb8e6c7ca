#include "atomnfa/biclique.hpp"

#include <algorithm>
#include <map>

#include "atomnfa/errors.hpp"

namespace atomnfa {

bool verify_cover(const Rel& r, const BicliqueCover& c) {
    BitMatrix covered(r.rows, r.cols);
    for (const auto& [bx, by] : c.bicliques) {
        if (bx.size() != r.rows || by.size() != r.cols)
            throw ShapeMismatch("biclique carriers do not match the relation");
        bool inside = true;
        bx.for_each([&](int x) {
            if (!by.is_subset_of(r.bits.row(x))) inside = false;
            covered.row(x) |= by;
        });
        if (!inside) return false;
    }
    return covered == r.bits;
}

std::vector<std::pair<Bits, Bits>> maximal_bicliques(const Rel& r) {
    // Concepts: intents are the meet-closure of the rows, extents the
    // common-row sets; keep those with edges.
    std::vector<Bits> intents;
    auto add = [&](const Bits& b) {
        if (std::find(intents.begin(), intents.end(), b) == intents.end())
            intents.push_back(b);
    };
    add(Bits::ones(r.cols));
    for (std::size_t i = 0; i < intents.size(); ++i)
        for (int x = 0; x < r.rows; ++x) add(intents[i] & r.bits.row(x));

    std::vector<std::pair<Bits, Bits>> out;
    for (const Bits& y : intents) {
        if (y.none()) continue;
        Bits ext(r.rows);
        for (int x = 0; x < r.rows; ++x)
            if (y.is_subset_of(r.bits.row(x))) ext.set(x);
        if (ext.none()) continue;
        // Close the intent over the extent to keep only maximal pairs.
        Bits closed = Bits::ones(r.cols);
        ext.for_each([&](int x) { closed &= r.bits.row(x); });
        if (closed == y) out.push_back({ext, y});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return canonical_less(a.first, b.first);
        return canonical_less(a.second, b.second);
    });
    return out;
}

namespace {

struct Edge {
    int x, y;
};

std::vector<Edge> edges_of(const Rel& r) {
    std::vector<Edge> e;
    for (int x = 0; x < r.rows; ++x)
        r.bits.row(x).for_each([&](int y) { e.push_back({x, y}); });
    return e;
}

// Greedy independent-edge (fooling set) bound: no two picked edges can
// share a biclique.
int fooling_bound(const Rel& r, const std::vector<Edge>& edges,
                  const Bits& alive) {
    std::vector<Edge> picked;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (!alive.test(i)) continue;
        const Edge& e = edges[i];
        bool ok = true;
        for (const Edge& f : picked)
            if (r.test(e.x, f.y) && r.test(f.x, e.y)) { ok = false; break; }
        if (ok) picked.push_back(e);
    }
    return static_cast<int>(picked.size());
}

struct DimSearch {
    const Rel& r;
    std::vector<Edge> edges;
    std::vector<std::pair<Bits, Bits>> cliques;
    std::vector<Bits> clique_covers;  // per clique: edge indices covered
    std::uint64_t budget;
    std::uint64_t used = 0;
    int best;
    std::vector<int> best_pick, pick;
    int strongest_lb = 0;

    DimSearch(const Rel& rel, std::uint64_t budget, int seed_best)
        : r(rel), edges(edges_of(rel)), cliques(maximal_bicliques(rel)),
          budget(budget), best(seed_best) {
        const int ne = static_cast<int>(edges.size());
        for (const auto& [bx, by] : cliques) {
            Bits cov(ne);
            for (int i = 0; i < ne; ++i)
                if (bx.test(edges[i].x) && by.test(edges[i].y)) cov.set(i);
            clique_covers.push_back(std::move(cov));
        }
    }

    void run() {
        Bits uncovered = Bits::ones(static_cast<int>(edges.size()));
        strongest_lb = fooling_bound(r, edges, uncovered);
        dfs(uncovered);
    }

    void dfs(const Bits& uncovered) {
        if (++used > budget)
            throw BudgetExceeded("dimension search budget exhausted",
                                 strongest_lb, best);
        if (uncovered.none()) {
            if (static_cast<int>(pick.size()) < best) {
                best = static_cast<int>(pick.size());
                best_pick = pick;
            }
            return;
        }
        int lb = fooling_bound(r, edges, uncovered);
        if (static_cast<int>(pick.size()) + lb >= best) return;
        int first = uncovered.next(0);
        for (int c = 0; c < static_cast<int>(cliques.size()); ++c) {
            if (!clique_covers[c].test(first)) continue;
            pick.push_back(c);
            dfs(uncovered - clique_covers[c]);
            pick.pop_back();
        }
    }
};

}  // namespace

BicliqueCover greedy_cover(const Rel& r) {
    BicliqueCover out;
    auto cliques = maximal_bicliques(r);
    std::vector<Edge> edges = edges_of(r);
    Bits uncovered = Bits::ones(static_cast<int>(edges.size()));
    std::vector<Bits> covers;
    for (const auto& [bx, by] : cliques) {
        Bits cov(static_cast<int>(edges.size()));
        for (int i = 0; i < static_cast<int>(edges.size()); ++i)
            if (bx.test(edges[i].x) && by.test(edges[i].y)) cov.set(i);
        covers.push_back(std::move(cov));
    }
    while (uncovered.any()) {
        int bestc = -1, bestgain = -1;
        for (int c = 0; c < static_cast<int>(cliques.size()); ++c) {
            int gain = (covers[c] & uncovered).count();
            if (gain > bestgain) {
                bestgain = gain;
                bestc = c;
            }
        }
        out.bicliques.push_back(cliques[bestc]);
        uncovered -= covers[bestc];
    }
    return out;
}

std::optional<DimResult> exact_dim(const Rel& r, int kmax,
                                   std::uint64_t budget) {
    if (kmax < 0) kmax = std::min(r.rows, r.cols);
    bool empty = true;
    for (int x = 0; x < r.rows && empty; ++x) empty = r.bits.row(x).none();
    if (empty) return DimResult{0, {}};

    BicliqueCover seed = greedy_cover(r);
    DimSearch search(r, budget, static_cast<int>(seed.bicliques.size()));
    search.best_pick.clear();
    try {
        search.run();
    } catch (BudgetExceeded& e) {
        e.upper = search.best;
        throw;
    }
    int dim = search.best;
    if (dim > kmax) return std::nullopt;
    DimResult res;
    res.dim = dim;
    if (search.best_pick.empty()) {
        res.cover = seed;  // the greedy cover was already optimal
    } else {
        for (int c : search.best_pick)
            res.cover.bicliques.push_back(search.cliques[c]);
    }
    return res;
}

}  // namespace atomnfa
