#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "branchcov/errors.hpp"
#include "branchcov/partition.hpp"

using namespace branchcov;

namespace {

// Independent enumeration of minimal 2-point data: all unordered pairs of
// non-trivial partitions of d whose defects sum to d-1.
std::set<std::multiset<std::vector<int>>> pairs_by_scan(int d) {
    std::vector<Partition> all;
    for (const Partition& p : partitions_of(d))
        if (!p.is_trivial()) all.push_back(p);
    std::set<std::multiset<std::vector<int>>> out;
    for (const Partition& a : all)
        for (const Partition& b : all)
            if (a.defect() + b.defect() == d - 1)
                out.insert({a.parts(), b.parts()});
    return out;
}

}  // namespace

TEST_CASE("partition defect is sum minus part count") {
    CHECK(Partition({9}).defect() == 8);
    CHECK(Partition({1, 1, 1, 1}).defect() == 0);
    CHECK(Partition({2, 2, 2, 1, 1, 1}).defect() == 3);
}

TEST_CASE("partition gcd includes the ones") {
    CHECK(Partition({6, 1, 1, 1}).gcd() == 1);
    CHECK(Partition({3, 3, 3}).gcd() == 3);
    CHECK(Partition({2, 2, 2, 2, 1}).gcd() == 1);
}

TEST_CASE("partition normalizes to non-increasing order") {
    Partition p({1, 6, 1, 1});
    CHECK(p.parts() == std::vector<int>{6, 1, 1, 1});
    CHECK(p.to_string() == "[6,1,1,1]");
    CHECK_THROWS_AS(Partition({3, 0}), hypothesis_error);
}

TEST_CASE("partitions_of counts match the partition function") {
    // p(n) for n = 1..12
    const int expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 1; n <= 12; ++n)
        CHECK(static_cast<int>(partitions_of(n).size()) == expected[n - 1]);
    auto nine = partitions_of(9);
    CHECK(std::set<Partition>(nine.begin(), nine.end()).size() == nine.size());
}

TEST_CASE("datum normalization orders by defect, largest tie first") {
    BranchDatum d(9, {Partition({2, 2, 2, 1, 1, 1}), Partition({6, 1, 1, 1})});
    CHECK(d[0] == Partition({6, 1, 1, 1}));
    CHECK(d[1] == Partition({2, 2, 2, 1, 1, 1}));
    CHECK(d.input_positions() == std::vector<int>{1, 0});
    CHECK(d.total_defect() == 8);

    // Equal defects: lexicographically larger part list comes first, which
    // pushes [2,...,2,1] behind everything else of the same defect.
    BranchDatum tie(9, {Partition({2, 2, 2, 2, 1}), Partition({3, 2, 2, 1, 1})});
    CHECK(tie[0] == Partition({3, 2, 2, 1, 1}));
}

TEST_CASE("datum constructor validates") {
    CHECK_THROWS_AS(BranchDatum(9, {}), hypothesis_error);
    CHECK_THROWS_AS(BranchDatum(9, {Partition({8})}), hypothesis_error);
    CHECK_THROWS_AS(BranchDatum(9, {Partition({1, 1, 1, 1, 1, 1, 1, 1, 1})}),
                    hypothesis_error);
}

TEST_CASE("admissibility needs defect at least d-1 and even") {
    CHECK(is_admissible_rp2(
        BranchDatum(9, {Partition({6, 1, 1, 1}), Partition({2, 2, 2, 1, 1, 1})})));
    CHECK_FALSE(is_admissible_rp2(BranchDatum(9, {Partition({2, 2, 2, 1, 1, 1})})));
    CHECK_FALSE(is_admissible_rp2(
        BranchDatum(9, {Partition({9}), Partition({2, 1, 1, 1, 1, 1, 1, 1})})));
}

TEST_CASE("minimal defect means total d-1 with d odd") {
    CHECK(is_minimal_defect(
        BranchDatum(9, {Partition({2, 2, 2, 2, 1}), Partition({2, 2, 2, 2, 1})})));
    CHECK_FALSE(is_minimal_defect(BranchDatum(9, {Partition({9}), Partition({9})})));
    CHECK_FALSE(is_minimal_defect(
        BranchDatum(8, {Partition({8}), Partition({2, 1, 1, 1, 1, 1, 1})})));
}

TEST_CASE("one-point minimal data force the full cycle") {
    auto data = minimal_data(5, 1);
    REQUIRE(data.size() == 1);
    CHECK(data[0][0] == Partition({5}));
}

TEST_CASE("two-point minimal data at d=5 match the independent scan") {
    auto data = minimal_data(5, 2);
    std::set<std::multiset<std::vector<int>>> got;
    for (const BranchDatum& dat : data)
        got.insert({dat[0].parts(), dat[1].parts()});
    CHECK(got.size() == data.size());
    CHECK(got == pairs_by_scan(5));

    auto has = [&](std::vector<int> a, std::vector<int> b) {
        return got.count({a, b}) == 1;
    };
    CHECK(has({2, 2, 1}, {2, 2, 1}));
    CHECK(has({3, 1, 1}, {2, 2, 1}));
    CHECK(has({4, 1}, {2, 1, 1, 1}));
}

TEST_CASE("two-point minimal data at d=9 match the independent scan") {
    auto data = minimal_data(9, 2);
    std::set<std::multiset<std::vector<int>>> got;
    for (const BranchDatum& dat : data)
        got.insert({dat[0].parts(), dat[1].parts()});
    CHECK(got.size() == data.size());
    CHECK(got == pairs_by_scan(9));
}

TEST_CASE("three-point minimal data at d=9: defects sum to 8, all distinct") {
    auto data = minimal_data(9, 3);
    CHECK(!data.empty());
    std::set<std::vector<std::vector<int>>> seen;
    for (const BranchDatum& dat : data) {
        CHECK(dat.total_defect() == 8);
        CHECK(dat.k() == 3);
        CHECK(dat[0].defect() >= dat[1].defect());
        CHECK(dat[1].defect() >= dat[2].defect());
        std::vector<std::vector<int>> key;
        for (const Partition& p : dat.partitions()) key.push_back(p.parts());
        CHECK(seen.insert(key).second);
    }
    // Spot membership: a defect split 6+1+1.
    std::vector<std::vector<int>> probe{{4, 3, 2}, {2, 1, 1, 1, 1, 1, 1, 1},
                                        {2, 1, 1, 1, 1, 1, 1, 1}};
    CHECK(seen.count(probe) == 1);
}

TEST_CASE("enumeration can stop early") {
    int seen = 0;
    enumerate_minimal_data(9, 2, [&](const BranchDatum&) { return ++seen < 3; });
    CHECK(seen == 3);
    CHECK_THROWS_AS(minimal_data(8, 2), hypothesis_error);
}

TEST_CASE("two-point count identities hold for every d=9 datum") {
    for (const BranchDatum& dat : minimal_data(9, 2)) {
        const Partition& D1 = dat[0];
        const Partition& D2 = dat[1];
        int d = dat.degree();
        int r = D1.size() - D1.ones(), l1 = D1.ones();
        int s = D2.size() - D2.ones(), l2 = D2.ones();
        CHECK(r + l1 + s + l2 == d + 1);
        CHECK(r + l1 <= s + l2);
        CHECK(l2 >= 1);
        CHECK(r + l1 == D2.defect() + 1);
        CHECK(s + l2 == D1.defect() + 1);

        // Bound on the ones of the first partition, tight exactly at the
        // balanced split.
        int big_sum = 0;
        for (int p : D1.parts())
            if (p > 1) big_sum += p;
        CHECK(l1 <= big_sum - 2 * r + 1);
        bool balanced = D1.defect() == (d - 1) / 2 && D2.defect() == (d - 1) / 2;
        CHECK((l1 == big_sum - 2 * r + 1) == balanced);

        // With no ones in the first partition, every part is capped by the
        // ones of the second.
        if (l1 == 0)
            for (int p : D1.parts()) CHECK(p <= l2);
    }
}

TEST_CASE("at most one partition with gcd above 1, and it leads") {
    for (int k : {3, 4}) {
        for (const BranchDatum& dat : minimal_data(9, k)) {
            int with_gcd = 0;
            for (const Partition& p : dat.partitions())
                if (p.gcd() != 1) ++with_gcd;
            CHECK(with_gcd <= 1);
            for (int i = 0; i < dat.k(); ++i)
                if (dat[i].gcd() != 1) CHECK(i == 0);
        }
    }
}
