#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "branchcov/factorization.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/realize.hpp"

namespace branchcov {

struct Classification {
    bool indecomposable_realizable = false;
    std::string indecomposable_reason;  // one_point_prime | thm_iff2pt | thm_final |
                                        // prime_degree_trivial | excluded_pair |
                                        // gcd_obstruction
    bool decomposable_realizable = false;
    std::string decomposable_reason;    // minimal_first_factor |
                                        // d_prime_no_factorization |
                                        // no_minimal_first_factor
    std::optional<Factorization> factorization;
    bool coexistence = false;
};

// Theorem-driven classification of a minimal-defect datum.
Classification classify(const BranchDatum& datum);

struct OracleOptions {
    std::uint64_t budget = 100'000'000;  // composed generator tuples
    int threads = 1;
    // Invoked for every found realization when threads == 1 (test hook).
    std::function<void(const std::vector<Permutation>& alphas, const Permutation& omega,
                       bool primitive)>
        on_realization;
};

struct OracleResult {
    bool primitive_found = false;
    bool imprimitive_found = false;
    std::optional<RealizationWitness> primitive_witness;
    std::optional<RealizationWitness> imprimitive_witness;
    bool complete = false;             // full tuple space scanned within budget
    std::uint64_t tuples_examined = 0;
    std::uint64_t tuples_total = 0;
    std::uint64_t realizations = 0;    // (tuple, omega) pairs generating transitively
    // Realizations whose alphas alone are intransitive, and how many of those
    // break the product-cycle-count identity (#cycles = 2*orbits - 1).
    std::uint64_t intransitive_alpha_realizations = 0;
    std::uint64_t cycle_count_violations = 0;
};

// Ground truth by exhaustive search: alpha_1 fixed canonical, the remaining
// generators ranging over their full conjugacy classes, every square root of
// the product tried as omega. Complete up to conjugacy. Deterministic across
// thread counts.
OracleResult oracle_classify(const BranchDatum& datum, const OracleOptions& opts = {});

struct TheoremReportEntry {
    BranchDatum datum;
    Classification expected;
    OracleResult oracle;
    bool agree = false;
    std::vector<std::string> notes;
};

struct TheoremReport {
    std::vector<TheoremReportEntry> entries;
    int disagreements = 0;
    bool complete = true;  // no oracle run hit its budget
};

// classify vs oracle_classify over every minimal-defect datum of degree d
// with k partitions. Streams entries through `sink` when provided.
TheoremReport verify_theorems(int d, int k, const OracleOptions& opts = {},
                              const std::function<void(const TheoremReportEntry&)>& sink = {});

// All permutations with the given cycle structure, lexicographic by image
// table. Cached per structure.
const std::vector<Permutation>& conjugacy_class(const Partition& structure);

}  // namespace branchcov
