#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace branchcov {

// Multiset of positive integers in non-increasing order. The sum is the
// degree d of the permutations whose cycle lengths it describes.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int sum() const { return sum_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    // d minus the number of parts: the defect of any permutation with this
    // cycle structure.
    int defect() const { return sum_ - size(); }

    int gcd() const;
    int ones() const;                       // multiplicity of the part 1
    bool is_trivial() const;                // [1,...,1]
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int smallest() const { return parts_.empty() ? 0 : parts_.back(); }
    int count(int value) const;

    bool operator==(const Partition&) const = default;
    // Lexicographic on the non-increasing part lists: [3,1,1] > [2,2,1].
    auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

    std::string to_string() const;          // "[6,1,1,1]"

private:
    std::vector<int> parts_;
    int sum_ = 0;
};

// Every part multiplied by k (partition of k*sum).
Partition scale(const Partition& p, int k);

// All partitions of d, lexicographically descending: [d] first, [1,...,1] last.
std::vector<Partition> partitions_of(int d);

// Partitions of d with exactly `parts` parts (i.e. defect d-parts), same order.
std::vector<Partition> partitions_of_with_parts(int d, int parts);

// A collection of non-trivial partitions of a common degree, normalized so
// defects are non-increasing (ties: lexicographically larger part list first).
class BranchDatum {
public:
    BranchDatum(int d, std::vector<Partition> partitions);

    int degree() const { return d_; }
    int k() const { return static_cast<int>(partitions_.size()); }
    const std::vector<Partition>& partitions() const { return partitions_; }
    const Partition& operator[](int i) const { return partitions_[i]; }
    int total_defect() const;

    // input_positions()[i] = index the i-th normalized partition had in the
    // constructor argument, so reports can echo the caller's order.
    const std::vector<int>& input_positions() const { return input_positions_; }

    bool operator==(const BranchDatum& o) const {
        return d_ == o.d_ && partitions_ == o.partitions_;
    }

    std::string to_string() const;

private:
    int d_ = 0;
    std::vector<Partition> partitions_;
    std::vector<int> input_positions_;
};

// d-1 <= total defect, and total defect even.
bool is_admissible_rp2(const BranchDatum& datum);

// Total defect exactly d-1 with d odd.
bool is_minimal_defect(const BranchDatum& datum);

// Streams every BranchDatum of degree d with exactly k non-trivial partitions
// and total defect d-1, normalized, in lexicographic order of the normalized
// tuple. The visitor returns false to stop early.
void enumerate_minimal_data(int d, int k,
                            const std::function<bool(const BranchDatum&)>& visit);

std::vector<BranchDatum> minimal_data(int d, int k);

}  // namespace branchcov
