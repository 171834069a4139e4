#include "branchcov/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "branchcov/errors.hpp"

namespace branchcov {

GeneratedGroup::GeneratedGroup(int degree_, std::vector<Permutation> gens)
    : degree(degree_), generators(std::move(gens)) {
    if (generators.empty()) throw hypothesis_error("group needs at least one generator");
    for (const Permutation& g : generators)
        if (g.degree() != degree)
            throw hypothesis_error("generator degree mismatch");
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

std::vector<std::vector<int>> classes_of(Dsu& dsu, int n) {
    std::vector<std::vector<int>> by_root(n);
    for (int x = 0; x < n; ++x) by_root[dsu.find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& c : by_root)
        if (!c.empty()) out.push_back(std::move(c));
    return out;
}

}  // namespace

std::vector<std::vector<int>> orbits(const GeneratedGroup& g) {
    Dsu dsu(g.degree);
    for (const Permutation& p : g.generators)
        for (int x = 0; x < g.degree; ++x) dsu.unite(x, p(x));
    return classes_of(dsu, g.degree);
}

bool is_transitive(const GeneratedGroup& g) { return orbits(g).size() == 1; }

std::vector<int> minimal_block(const GeneratedGroup& g, int a, int b) {
    if (a == b) throw hypothesis_error("minimal block seed points must differ");
    if (!is_transitive(g)) throw hypothesis_error("group must be transitive");

    Dsu dsu(g.degree);
    std::deque<std::pair<int, int>> queue;
    dsu.unite(a, b);
    queue.emplace_back(a, b);
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (const Permutation& p : g.generators) {
            int px = p(x), py = p(y);
            if (dsu.unite(px, py)) queue.emplace_back(px, py);
        }
    }
    std::vector<int> block;
    int root = dsu.find(a);
    for (int x = 0; x < g.degree; ++x)
        if (dsu.find(x) == root) block.push_back(x);
    return block;
}

bool preserves_blocks(const Permutation& p, const BlockSystem& sys) {
    std::set<std::vector<int>> want(sys.blocks.begin(), sys.blocks.end());
    for (const auto& b : sys.blocks) {
        std::vector<int> image;
        for (int x : b) image.push_back(p(x));
        std::sort(image.begin(), image.end());
        if (!want.count(image)) return false;
    }
    return true;
}

bool preserves_blocks(const GeneratedGroup& g, const BlockSystem& sys) {
    std::vector<char> covered(g.degree, 0);
    int total = 0;
    for (const auto& b : sys.blocks) {
        if (b.empty() || b.size() != sys.blocks.front().size()) return false;
        for (int x : b) {
            if (x < 0 || x >= g.degree || covered[x]) return false;
            covered[x] = 1;
            ++total;
        }
    }
    if (total != g.degree) return false;
    for (const Permutation& p : g.generators)
        if (!preserves_blocks(p, sys)) return false;
    return true;
}

namespace {

BlockSystem system_from_block(const GeneratedGroup& g, std::vector<int> seed) {
    std::sort(seed.begin(), seed.end());
    std::set<std::vector<int>> blocks{seed};
    std::deque<std::vector<int>> queue{seed};
    while (!queue.empty()) {
        std::vector<int> b = std::move(queue.front());
        queue.pop_front();
        for (const Permutation& p : g.generators) {
            std::vector<int> image;
            for (int x : b) image.push_back(p(x));
            std::sort(image.begin(), image.end());
            if (blocks.insert(image).second) queue.push_back(std::move(image));
        }
    }
    BlockSystem sys;
    sys.blocks.assign(blocks.begin(), blocks.end());
    return sys;
}

}  // namespace

PrimitivityResult is_primitive(const GeneratedGroup& g) {
    if (!is_transitive(g)) throw hypothesis_error("group must be transitive");
    if (g.degree <= 2) return {true, std::nullopt};
    for (int b = 1; b < g.degree; ++b) {
        std::vector<int> block = minimal_block(g, 0, b);
        if (static_cast<int>(block.size()) < g.degree)
            return {false, system_from_block(g, std::move(block))};
    }
    return {true, std::nullopt};
}

namespace {

// Closure enumeration keyed by packed image words (degree <= 16) or by the
// image vectors themselves.
std::optional<std::vector<Permutation>> enumerate_impl(
    const std::vector<Permutation>& gens, int degree, std::uint64_t cap) {
    std::vector<Permutation> elements{Permutation(degree)};
    size_t next = 0;
    if (degree <= 16) {
        std::unordered_set<std::uint64_t> seen{elements[0].packed_key()};
        while (next < elements.size()) {
            Permutation cur = elements[next++];
            for (const Permutation& gen : gens) {
                Permutation prod = compose(cur, gen);
                if (seen.insert(prod.packed_key()).second) {
                    if (elements.size() + 1 > cap) return std::nullopt;
                    elements.push_back(std::move(prod));
                }
            }
        }
    } else {
        std::set<std::vector<int>> seen{elements[0].images()};
        while (next < elements.size()) {
            Permutation cur = elements[next++];
            for (const Permutation& gen : gens) {
                Permutation prod = compose(cur, gen);
                if (seen.insert(prod.images()).second) {
                    if (elements.size() + 1 > cap) return std::nullopt;
                    elements.push_back(std::move(prod));
                }
            }
        }
    }
    return elements;
}

}  // namespace

std::optional<std::vector<Permutation>> enumerate_elements(const GeneratedGroup& g,
                                                           std::uint64_t cap) {
    return enumerate_impl(g.generators, g.degree, cap);
}

TwoPointVerdict two_point_generation_test(const GeneratedGroup& g, int x, int y,
                                          std::uint64_t cap) {
    if (!is_transitive(g)) throw hypothesis_error("group must be transitive");
    auto all = enumerate_elements(g, cap);
    if (!all) return TwoPointVerdict::inconclusive;

    std::vector<Permutation> stab_gens;
    for (const Permutation& e : *all)
        if (e(x) == x || e(y) == y) stab_gens.push_back(e);
    if (stab_gens.empty()) stab_gens.emplace_back(g.degree);

    auto sub = enumerate_impl(stab_gens, g.degree, all->size());
    if (!sub) return TwoPointVerdict::equal;  // closure filled the whole group
    return sub->size() == all->size() ? TwoPointVerdict::equal
                                      : TwoPointVerdict::proper;
}

}  // namespace branchcov
