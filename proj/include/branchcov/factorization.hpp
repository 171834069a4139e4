#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "branchcov/partition.hpp"

namespace branchcov {

// One way of writing a partition D of u*w as U.W: for each part U.parts()[j]
// there is an aligned partition W[j] of w, and the scaled parts
// U.parts()[j] * W[j] re-sorted reproduce D.
struct ProductDecomposition {
    Partition U;
    std::vector<Partition> W;  // aligned with U.parts()
};

// A simultaneous decomposition of a whole datum with a common (u, w):
// D_i = U_list[i].W_list[i] for every i.
struct Factorization {
    int u = 0;
    int w = 0;
    std::vector<Partition> U_list;
    std::vector<std::vector<Partition>> W_list;

    // Sum of defects of the first factor.
    int first_factor_defect() const;
    int second_factor_defect() const;
};

// Rebuilds the partition U.W (scale each W[j] by the aligned part, merge,
// re-sort).
Partition product_partition(const Partition& U, const std::vector<Partition>& W);

// All distinct ways to express D as a product partition for the split
// d = u*w (u, w > 1), deduplicated up to reordering of equal (part, W) pairs.
// Deterministic order.
std::vector<ProductDecomposition> product_partition_decompositions(const Partition& D,
                                                                   int u, int w);

// Every algebraic factorization of the datum across all non-trivial splits
// d = u*w, deduplicated (two factorizations are the same when their multisets
// of (U_i, sorted W_i) pairs agree).
std::vector<Factorization> algebraic_factorizations(const BranchDatum& datum);

// For a minimal-defect datum: a factorization whose first factor has defect
// u-1 (a non-trivial minimal-defect datum on the base), if one exists.
std::optional<Factorization> has_decomposable_realization(const BranchDatum& datum);

}  // namespace branchcov
