#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "atomnfa/dep.hpp"

namespace atomnfa {

/// A list of complete bipartite subrelations (row set, column set).
struct BicliqueCover {
    std::vector<std::pair<Bits, Bits>> bicliques;
};

/// True iff every biclique lies inside r and their union is exactly r.
bool verify_cover(const Rel& r, const BicliqueCover& c);

/// All maximal bicliques of r in canonical order (the concepts of r with
/// nonempty extent and intent).
std::vector<std::pair<Bits, Bits>> maximal_bicliques(const Rel& r);

/// A valid cover obtained greedily from maximal bicliques; its size is an
/// upper bound for the dimension.
BicliqueCover greedy_cover(const Rel& r);

struct DimResult {
    int dim = 0;
    BicliqueCover cover;
};

inline constexpr std::uint64_t kDefaultDimBudget = std::uint64_t(1) << 22;

/// Least k <= kmax admitting a biclique cover of size k, by
/// branch-and-bound over maximal bicliques with an independent-edge
/// lower bound; kmax < 0 selects the default min(rows, cols).
/// Returns the witness cover; nullopt if dim > kmax. Throws
/// BudgetExceeded with the best bounds once the node budget is spent.
std::optional<DimResult> exact_dim(const Rel& r, int kmax = -1,
                                   std::uint64_t budget = kDefaultDimBudget);

}  // namespace atomnfa
