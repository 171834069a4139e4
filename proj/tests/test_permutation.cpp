#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "branchcov/errors.hpp"
#include "branchcov/permutation.hpp"

using namespace branchcov;

namespace {

Permutation pc(const std::string& s, int d) { return parse_cycles(s, d); }

// Independent oracle: all square roots of p by scanning the full symmetric
// group of p's degree.
std::set<std::vector<int>> roots_by_scan(const Permutation& p) {
    int d = p.degree();
    std::vector<int> img(d);
    for (int i = 0; i < d; ++i) img[i] = i;
    std::set<std::vector<int>> out;
    do {
        Permutation w = Permutation::from_images(img);
        if (compose(w, w) == p) out.insert(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

std::set<std::vector<int>> roots_by_library(const Permutation& p) {
    std::set<std::vector<int>> out;
    for (const Permutation& w : square_roots(p)) out.insert(w.images());
    return out;
}

Permutation random_perm(int d, std::mt19937_64& rng) {
    std::vector<int> img(d);
    for (int i = 0; i < d; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_images(std::move(img));
}

}  // namespace

TEST_CASE("composition acts on the right") {
    Permutation id3(3);
    Permutation c123 = pc("(1 2 3)", 3);
    Permutation t12 = pc("(1 2)", 3);
    CHECK(compose(id3, c123) == c123);
    CHECK(compose(c123, id3) == c123);
    // x^(pq) = (x^p)^q: 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2.
    CHECK(to_cycle_string(compose(c123, t12)) == "(1)(2 3)");
    CHECK(compose(c123, c123.inverse()) == id3);
}

TEST_CASE("composition rejects degree mismatch") {
    CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), hypothesis_error);
}

TEST_CASE("conjugation relabels cycles and keeps structure") {
    CHECK(conjugate(pc("(1 2)", 3), Permutation(3)) == pc("(1 2)", 3));
    CHECK(to_cycle_string(conjugate(pc("(1 2)", 3), pc("(1 3)", 3))) == "(1)(2 3)");

    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        Permutation p = random_perm(9, rng);
        Permutation lam = random_perm(9, rng);
        CHECK(conjugate(p, lam).cycle_structure() == p.cycle_structure());
    }
}

TEST_CASE("relabel and conjugator agree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Permutation p = random_perm(8, rng);
        Permutation m = random_perm(8, rng);
        Permutation q = relabel(p, m);
        CHECK(q.cycle_structure() == p.cycle_structure());
        Permutation g = conjugator(p, q);
        CHECK(relabel(p, g) == q);
    }
    CHECK_THROWS_AS(conjugator(pc("(1 2)", 4), pc("(1 2 3)", 4)), hypothesis_error);
}

TEST_CASE("cycle structure lists trivial cycles") {
    Permutation a = pc("(1 2 3 4 5 6)(7)(8)(9)", 9);
    CHECK(a.cycle_structure() == Partition({6, 1, 1, 1}));
    CHECK(Permutation(9).cycle_structure() == Partition({1, 1, 1, 1, 1, 1, 1, 1, 1}));
    Permutation b = pc("(1 7)(3 8)(5 9)", 9);
    CHECK(b.cycle_structure() == Partition({2, 2, 2, 1, 1, 1}));
}

TEST_CASE("defect counts degree minus cycles") {
    CHECK(Permutation(5).defect() == 0);
    CHECK(pc("(1 2 3 4 5 6 7)", 7).defect() == 6);
    CHECK(pc("(1 2 3 4 5 6)(7)(8)(9)", 9).defect() == 5);
}

TEST_CASE("defect is subadditive under composition") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        Permutation p = random_perm(9, rng);
        Permutation q = random_perm(9, rng);
        CHECK(compose(p, q).defect() <= p.defect() + q.defect());
    }
}

TEST_CASE("cycle notation round-trips bit-exactly") {
    std::vector<std::pair<std::string, int>> cases = {
        {"(1 2 3 4 5 6)(7)(8)(9)", 9},
        {"(1)(2)(3)", 3},
        {"(1 7)(2)(3 8)(4)(5 9)(6)", 9},
        {"(1 3 2 4)", 4},
    };
    for (const auto& [s, d] : cases) CHECK(to_cycle_string(pc(s, d)) == s);

    // Fixed points may be left out of the input.
    CHECK(pc("(1 7)(3 8)(5 9)", 9) == pc("(1 7)(3 8)(5 9)(2)(4)(6)", 9));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Permutation p = random_perm(11, rng);
        CHECK(parse_cycles(to_cycle_string(p), 11) == p);
    }
}

TEST_CASE("cycle parser rejects malformed input") {
    CHECK_THROWS_AS(pc("(1 2", 3), parse_error);
    CHECK_THROWS_AS(pc("(1 2)(2 3)", 3), parse_error);
    CHECK_THROWS_AS(pc("(0 1)", 3), parse_error);
    CHECK_THROWS_AS(pc("(1 4)", 3), parse_error);
    CHECK_THROWS_AS(pc("1 2 3", 3), parse_error);
    CHECK_THROWS_AS(pc("()", 3), parse_error);
}

TEST_CASE("square roots of a double transposition") {
    auto roots = square_roots(pc("(1 2)(3 4)", 4));
    std::set<std::string> got;
    for (const Permutation& w : roots) got.insert(to_cycle_string(w));
    CHECK(got == std::set<std::string>{"(1 3 2 4)", "(1 4 2 3)"});
    CHECK(roots_by_library(pc("(1 2)(3 4)", 4)) == roots_by_scan(pc("(1 2)(3 4)", 4)));
}

TEST_CASE("odd cycles root through their own power") {
    Permutation c = pc("(1 2 3 4 5)", 5);
    auto roots = square_roots(c);
    Permutation c3 = c.power(3);
    CHECK(std::find(roots.begin(), roots.end(), c3) != roots.end());
    for (const Permutation& w : roots) CHECK(compose(w, w) == c);
}

TEST_CASE("pair of 3-cycles: interleavings plus separate roots") {
    Permutation p = pc("(1 2 3)(4 5 6)", 6);
    auto got = roots_by_library(p);
    CHECK(got.count(pc("(1 4 2 5 3 6)", 6).images()) == 1);
    CHECK(got.count(pc("(1 3 2)(4 6 5)", 6).images()) == 1);
    CHECK(got == roots_by_scan(p));
}

TEST_CASE("square root existence matches even-cycle pairing parity") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 500; ++trial) {
        Permutation p = random_perm(9, rng);
        std::map<int, int> even;
        for (const auto& c : p.cycles())
            if (c.size() % 2 == 0) ++even[static_cast<int>(c.size())];
        bool expect = true;
        for (auto [len, n] : even)
            if (n % 2) expect = false;
        CHECK(has_square_root(p) == expect);
        CHECK(square_roots(p).empty() == !expect);
    }
}

TEST_CASE("all yielded roots square back and are distinct") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 300; ++trial) {
        Permutation p = random_perm(10, rng);
        std::set<std::vector<int>> seen;
        for_each_square_root(p, [&](const Permutation& w) {
            CHECK(compose(w, w) == p);
            CHECK(seen.insert(w.images()).second);
            return true;
        });
    }
}

TEST_CASE("square root enumeration is complete up to degree 5 (full scan)") {
    for (int d = 1; d <= 5; ++d) {
        std::vector<int> img(d);
        for (int i = 0; i < d; ++i) img[i] = i;
        do {
            Permutation p = Permutation::from_images(img);
            CHECK(roots_by_library(p) == roots_by_scan(p));
        } while (std::next_permutation(img.begin(), img.end()));
    }
}

TEST_CASE("square root stream stops early on request") {
    int seen = 0;
    bool finished = for_each_square_root(Permutation(7), [&](const Permutation&) {
        return ++seen < 3;
    });
    CHECK_FALSE(finished);
    CHECK(seen == 3);
}

TEST_CASE("power and inverse behave") {
    Permutation c = pc("(1 2 3 4 5 6 7 8 9)", 9);
    CHECK(c.power(9).is_identity());
    CHECK(compose(c.power(5), c.power(5)) == c);  // (d+1)/2 halves a d-cycle
    CHECK(c.power(-1) == c.inverse());
}
