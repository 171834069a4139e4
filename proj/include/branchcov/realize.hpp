#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchcov/factorization.hpp"
#include "branchcov/group.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/permutation.hpp"

namespace branchcov {

// A monodromy witness for a datum: generators alphas[i] with the datum's i-th
// cycle structure, omega with omega^2 equal to the right-action product of
// the alphas in datum order, the whole group transitive.
struct RealizationWitness {
    BranchDatum datum;
    std::vector<Permutation> alphas;
    Permutation omega;
    bool primitive = false;
    std::optional<BlockSystem> blocks;  // present iff imprimitive
};

// Product of the alphas in order (right action).
Permutation alpha_product(const std::vector<Permutation>& alphas);

// Builds alpha in D1 and beta in D2 whose product has cycle structure
// [d-2y, y, y]. Requires a minimal-defect pair with defect(D1) >= defect(D2),
// D1 != [2,...,2,1]; when D1 has no part 1, y must be a part of D1 exceeded
// by another part; when D1 has a part 1, y must be 1 and D1 needs a part > 2.
std::pair<Permutation, Permutation> construct_three_cycle_product(const Partition& D1,
                                                                  const Partition& D2,
                                                                  int y);

// For p with structure [d-2y, y, y] (d odd): a square root of p that joins
// the support of one y-cycle to the rest, so adding it to any generators
// whose orbits are those two sets makes the group transitive. When all three
// cycles have equal length the roles are ambiguous from p alone; the second
// form names a point of the cycle that forms an orbit on its own, and that
// cycle gets interleaved with another one.
Permutation omega_from_three_cycles(const Permutation& p);
Permutation omega_from_three_cycles(const Permutation& p, int isolated_point);

// Builds beta in D2 whose non-trivial cycles link consecutive cycles of
// alpha, one point per met cycle (minimal available point; chain overlaps
// take two consecutive points). Requires gcd = 1 and every part >= 3 in
// alpha's structure, and a minimal-defect pair. alpha*beta is a d-cycle and
// <alpha, beta> is primitive.
Permutation construct_consecutive_beta(const Permutation& alpha, const Partition& D2);

// For a transitive <alpha, beta> from a minimal-defect pair with
// g := gcd of alpha's structure a proper divisor of d, g != 1: the block
// system generated by the orbit of a point under <(alpha*beta)^g>;
// g blocks of size d/g, invariant under both generators.
BlockSystem imprimitivity_witness(const Permutation& alpha, const Permutation& beta);

// Primitive witness for a two-partition minimal-defect datum with both gcds 1
// and datum != {[2,...,2,1],[2,...,2,1]}.
RealizationWitness realize_two_point(const BranchDatum& datum);

// Primitive witness for k >= 3 partitions, d odd, minimal defect, all gcds 1
// (automatic at prime degree). Builds the tail product first, solves the
// two-partition datum {D1, structure(tail)}, then conjugates the tail onto
// the solved factor.
RealizationWitness realize_k_point(const BranchDatum& datum);

// Imprimitive witness realizing the datum along the given factorization
// (which must have first-factor defect u-1): generators found by backtracking
// restricted to permutations preserving the canonical u blocks of size w with
// the factorization's cluster skeleton, omega among block-preserving square
// roots of the product.
RealizationWitness realize_decomposable(const BranchDatum& datum, const Factorization& f,
                                        std::uint64_t budget = 50'000'000);

struct WitnessCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct WitnessReport {
    std::vector<WitnessCheck> checks;
    bool all_pass = false;
};

// Re-derives every claim of a witness from scratch: structures, the square
// relation, transitivity, the primitivity verdict, and (when imprimitive)
// validity and invariance of the stored block system.
WitnessReport verify_witness(const RealizationWitness& w);

bool is_prime(int n);

}  // namespace branchcov
