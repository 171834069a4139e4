#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "branchcov/partition.hpp"

namespace branchcov {

// A bijection of {0,...,d-1}. Points are 0-based internally; all parsing and
// printing is 1-based. Values are immutable after construction.
//
// Products act on the right: (p*q) sends x to q(p(x)), matching the exponent
// notation x^{pq} = (x^p)^q used throughout.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int degree);  // identity

    static Permutation from_images(std::vector<int> images);  // validates bijection
    // Cycles over 0-based points; unmentioned points are fixed.
    static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[x]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const;
    Permutation inverse() const;
    Permutation power(long long e) const;

    // Disjoint cycles covering all points (fixed points included), each cycle
    // starting at its minimal point, cycles ordered by minimal point.
    std::vector<std::vector<int>> cycles() const;
    Partition cycle_structure() const;
    int defect() const;  // degree minus number of cycles
    std::vector<int> support() const;

    // Packed image word, usable as a hash/set key for degree <= 16.
    std::uint64_t packed_key() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation& o) const { return img_ <=> o.img_; }

private:
    std::vector<int> img_;
};

Permutation compose(const Permutation& p, const Permutation& q);

// lambda * p * lambda^{-1} in exponent order: x -> lambda^{-1}(p(lambda(x))).
// Preserves cycle structure.
Permutation conjugate(const Permutation& p, const Permutation& lambda);

// Relabels p through the bijection m: the cycle (a b c) becomes (m(a) m(b) m(c)).
Permutation relabel(const Permutation& p, const Permutation& m);

// A bijection m with relabel(from, m) == to; requires equal cycle structure.
Permutation conjugator(const Permutation& from, const Permutation& to);

// Canonical representative of a cycle structure: cycles on consecutive points
// in the given (non-increasing) part order.
Permutation canonical_of_structure(const Partition& structure);

// "(1 2 3 4 5 6)(7)(8)(9)": 1-based, fixed points printed explicitly.
std::string to_cycle_string(const Permutation& p);
// Fixed points may be omitted in the input. Throws parse_error on bad syntax,
// repeated points, or points outside 1..degree.
Permutation parse_cycles(const std::string& text, int degree);

// Enumerates every w with w*w == p, without duplicates, in a deterministic
// order. Pairs of equal-length cycles interleave (offsets ascending); a lone
// odd cycle contributes its power root. Stops early when the visitor returns
// false. Returns false iff stopped early.
bool for_each_square_root(const Permutation& p,
                          const std::function<bool(const Permutation&)>& visit);

std::vector<Permutation> square_roots(const Permutation& p);

// True iff p has any square root: every even cycle length occurs evenly often.
bool has_square_root(const Permutation& p);

}  // namespace branchcov
