#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "branchcov/permutation.hpp"

namespace branchcov {

struct GeneratedGroup {
    int degree = 0;
    std::vector<Permutation> generators;

    GeneratedGroup(int degree_, std::vector<Permutation> gens);
};

// Disjoint point sets covering all points, all of the same size, each mapped
// onto a block by every generator.
struct BlockSystem {
    std::vector<std::vector<int>> blocks;  // sorted blocks, sorted points

    int block_size() const {
        return blocks.empty() ? 0 : static_cast<int>(blocks.front().size());
    }
};

// True iff every generator of G maps each listed block onto a listed block
// and the blocks partition the points.
bool preserves_blocks(const GeneratedGroup& g, const BlockSystem& sys);
bool preserves_blocks(const Permutation& p, const BlockSystem& sys);

// The orbit partition of {0,...,d-1}: sorted orbits, ordered by least point.
std::vector<std::vector<int>> orbits(const GeneratedGroup& g);

bool is_transitive(const GeneratedGroup& g);

// Smallest block of a transitive G containing {a, b}; all points when that
// block is trivial. Iterative closure on the seed pair.
std::vector<int> minimal_block(const GeneratedGroup& g, int a, int b);

struct PrimitivityResult {
    bool primitive = false;
    std::optional<BlockSystem> blocks;  // one non-trivial system when imprimitive
};

// Tests minimal_block(0, b) for every b; when imprimitive, returns the full
// system generated by the first non-trivial minimal block found.
PrimitivityResult is_primitive(const GeneratedGroup& g);

// Every element of <generators> up to `cap` many, in breadth-first closure
// order; nullopt when the group is larger than cap.
std::optional<std::vector<Permutation>> enumerate_elements(const GeneratedGroup& g,
                                                           std::uint64_t cap);

enum class TwoPointVerdict { equal, proper, inconclusive };

// Whether the two point stabilizers generate the whole group. Enumerates the
// group by closure; inconclusive when it exceeds cap.
TwoPointVerdict two_point_generation_test(const GeneratedGroup& g, int x, int y,
                                          std::uint64_t cap = 10'000'000);

}  // namespace branchcov
