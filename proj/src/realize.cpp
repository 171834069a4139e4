#include "branchcov/realize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "branchcov/errors.hpp"

namespace branchcov {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

Permutation alpha_product(const std::vector<Permutation>& alphas) {
    if (alphas.empty()) throw hypothesis_error("empty generator list");
    Permutation p(alphas.front().degree());
    for (const Permutation& a : alphas) p = compose(p, a);
    return p;
}

namespace {

bool is_two_two_one(const Partition& p) {
    return p.largest() == 2 && p.ones() == 1;
}

void require_minimal_pair(const Partition& D1, const Partition& D2) {
    if (D1.sum() != D2.sum())
        throw hypothesis_error("partitions have different degrees");
    int d = D1.sum();
    if (d % 2 == 0 || D1.defect() + D2.defect() != d - 1)
        throw hypothesis_error("pair is not a minimal-defect datum");
    if (D1.is_trivial() || D2.is_trivial())
        throw hypothesis_error("datum partitions must be non-trivial");
}

}  // namespace

std::pair<Permutation, Permutation> construct_three_cycle_product(const Partition& D1,
                                                                  const Partition& D2,
                                                                  int y) {
    require_minimal_pair(D1, D2);
    if (D1.defect() < D2.defect())
        throw hypothesis_error("first partition must carry the larger defect");
    if (is_two_two_one(D1))
        throw hypothesis_error("first partition must differ from [2,...,2,1]");
    int d = D1.sum();
    int l1 = D1.ones();
    if (l1 == 0) {
        if (D1.count(y) == 0)
            throw hypothesis_error("y must be a part of the first partition");
        if (D1.largest() <= y)
            throw hypothesis_error("first partition needs a part exceeding y");
    } else {
        if (y != 1)
            throw hypothesis_error("y must be 1 when the first partition has a part 1");
        if (D1.largest() <= 2)
            throw hypothesis_error("first partition needs a part above 2");
    }

    // Canonical alpha; first cycle is the big one, the y-cycle is the last
    // cycle of length y, the rest stay in layout order.
    Permutation alpha = canonical_of_structure(D1);
    auto cyc = alpha.cycles();
    int a = static_cast<int>(cyc.size());
    int y_idx = -1;
    for (int i = 0; i < a; ++i)
        if (static_cast<int>(cyc[i].size()) == y) y_idx = i;
    const std::vector<int>& gx = cyc[0];
    int x = static_cast<int>(gx.size());
    std::vector<const std::vector<int>*> kappa;
    for (int i = 1; i < a; ++i)
        if (i != y_idx) kappa.push_back(&cyc[i]);

    std::vector<int> e;
    for (int p : D2.parts())
        if (p > 1) e.push_back(p);
    int s = static_cast<int>(e.size());
    {
        int connections = 0;
        for (int v : e) connections += v - 1;
        if (connections != a - 1)
            throw hypothesis_error("defect bookkeeping broken: pair not minimal");
    }

    std::vector<std::vector<int>> beta_cycles;
    if (s == 1) {
        std::vector<int> b{gx[y], gx[0]};
        for (const auto* c : kappa) b.push_back((*c)[0]);
        beta_cycles.push_back(std::move(b));
    } else {
        int star, star2;
        std::set<int> reserved;
        if (l1 == 0) {
            star = gx[x - y + 1];
            star2 = (*kappa[0])[1];
            for (int i = x - y + 1; i < x; ++i) reserved.insert(gx[i]);
            reserved.insert(star2);
        } else {
            star = gx[1];
            star2 = gx[2];
            reserved.insert(star);
            reserved.insert(star2);
        }

        std::set<int> used;
        std::vector<const std::vector<int>*> glued{&gx};
        size_t next_fresh = 0;

        std::vector<int> b1{gx[0]};
        used.insert(gx[0]);
        for (int t = 0; t < e[0] - 1; ++t) {
            const auto* c = kappa[next_fresh++];
            b1.push_back((*c)[0]);
            used.insert((*c)[0]);
            glued.push_back(c);
        }
        beta_cycles.push_back(std::move(b1));

        for (int j = 1; j + 1 < s; ++j) {
            int hook = -1;
            for (const auto* c : glued) {
                for (int p : *c)
                    if (!used.count(p) && !reserved.count(p)) {
                        hook = p;
                        break;
                    }
                if (hook >= 0) break;
            }
            if (hook < 0)
                throw hypothesis_error("internal: no free hook point in glued cycles");
            std::vector<int> bj{hook};
            used.insert(hook);
            for (int t = 0; t < e[j] - 1; ++t) {
                if (next_fresh >= kappa.size())
                    throw hypothesis_error("internal: ran out of fresh cycles");
                const auto* c = kappa[next_fresh++];
                bj.push_back((*c)[0]);
                used.insert((*c)[0]);
                glued.push_back(c);
            }
            beta_cycles.push_back(std::move(bj));
        }

        if (static_cast<int>(kappa.size() - next_fresh) != e[s - 1] - 2)
            throw hypothesis_error("internal: leftover cycles do not match last part");
        std::vector<int> bs{star};
        while (next_fresh < kappa.size()) bs.push_back((*kappa[next_fresh++])[0]);
        bs.push_back(star2);
        beta_cycles.push_back(std::move(bs));
    }

    Permutation beta = Permutation::from_cycles(d, beta_cycles);
    if (beta.cycle_structure() != D2)
        throw hypothesis_error("internal: constructed factor misses the target structure");
    return {std::move(alpha), std::move(beta)};
}

namespace {

// Sorted cycles of a three-cycle permutation, validated against [d-2y,y,y].
std::vector<std::vector<int>> three_cycle_parts(const Permutation& p) {
    if (p.degree() % 2 == 0) throw hypothesis_error("degree must be odd");
    auto cyc = p.cycles();
    if (cyc.size() != 3)
        throw hypothesis_error("permutation must split into exactly three cycles");
    std::stable_sort(cyc.begin(), cyc.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a.front() < b.front();
                     });
    if (cyc[0].size() != cyc[1].size() && cyc[1].size() != cyc[2].size())
        throw hypothesis_error("cycle structure is not of the form [d-2y,y,y]");
    return cyc;
}

Permutation omega_from_roles(const Permutation& p, const std::vector<int>& P1,
                             const std::vector<int>& A, const std::vector<int>& B) {
    int d = p.degree();
    int y = static_cast<int>(A.size());
    int m = static_cast<int>(P1.size());
    if (static_cast<int>(B.size()) != y || m != d - 2 * y)
        throw hypothesis_error("cycle structure is not of the form [d-2y,y,y]");
    std::vector<int> img(d);
    std::iota(img.begin(), img.end(), 0);
    int half = (m + 1) / 2;
    for (int i = 0; i < m; ++i) img[P1[i]] = P1[(i + half) % m];
    for (int i = 0; i < y; ++i) {
        img[A[i]] = B[i];
        img[B[i]] = A[(i + 1) % y];
    }
    Permutation w = Permutation::from_images(std::move(img));
    if (compose(w, w) != p)
        throw hypothesis_error("internal: square root construction failed");
    return w;
}

}  // namespace

Permutation omega_from_three_cycles(const Permutation& p) {
    auto cyc = three_cycle_parts(p);
    if (cyc[0].size() == cyc[1].size())
        return omega_from_roles(p, cyc[2], cyc[0], cyc[1]);
    return omega_from_roles(p, cyc[0], cyc[1], cyc[2]);
}

Permutation omega_from_three_cycles(const Permutation& p, int isolated_point) {
    auto cyc = three_cycle_parts(p);
    int iso = -1;
    for (int i = 0; i < 3; ++i)
        for (int v : cyc[i])
            if (v == isolated_point) iso = i;
    if (iso < 0) throw hypothesis_error("isolated point outside the permutation");
    // Interleave the isolated cycle with another of the same length; the
    // remaining cycle gets the power root.
    int partner = -1;
    for (int i = 0; i < 3; ++i)
        if (i != iso && cyc[i].size() == cyc[iso].size()) partner = i;
    if (partner < 0)
        throw hypothesis_error("isolated point must sit in one of the equal cycles");
    int rest = 3 - iso - partner;
    return omega_from_roles(p, cyc[rest], cyc[partner], cyc[iso]);
}

Permutation construct_consecutive_beta(const Permutation& alpha, const Partition& D2) {
    Partition D1 = alpha.cycle_structure();
    require_minimal_pair(D1, D2);
    if (D1.gcd() != 1)
        throw hypothesis_error("alpha's structure must have gcd 1");
    if (D1.smallest() < 3)
        throw hypothesis_error("every part of alpha's structure must be at least 3");

    auto cyc = alpha.cycles();
    std::stable_sort(cyc.begin(), cyc.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() > b.size();
                         return a.front() < b.front();
                     });
    int r = static_cast<int>(cyc.size());

    std::vector<int> e;
    for (int p : D2.parts())
        if (p > 1) e.push_back(p);
    int s = static_cast<int>(e.size());
    {
        int connections = 0;
        for (int v : e) connections += v - 1;
        if (connections != r - 1)
            throw hypothesis_error("defect bookkeeping broken: pair not minimal");
    }

    // taken[i] = how many points of cycle i are already met; a cycle met
    // twice hands out its first two (consecutive) points.
    std::vector<int> taken(r, 0);
    auto take = [&](int ci) {
        if (taken[ci] >= 2 || taken[ci] >= static_cast<int>(cyc[ci].size()))
            throw hypothesis_error("internal: cycle met too often");
        return cyc[ci][taken[ci]++];
    };

    std::vector<std::vector<int>> beta_cycles;
    int pos = 0;
    for (int j = 0; j < s; ++j) {
        std::vector<int> bj;
        int first = (j == 0) ? 0 : pos;
        int count = (j == 0) ? e[0] : e[j];
        for (int t = 0; t < count; ++t) bj.push_back(take(first + t));
        pos = first + count - 1;
        beta_cycles.push_back(std::move(bj));
    }
    if (pos != r - 1)
        throw hypothesis_error("internal: not all cycles were linked");

    Permutation beta = Permutation::from_cycles(alpha.degree(), beta_cycles);
    if (beta.cycle_structure() != D2)
        throw hypothesis_error("internal: constructed factor misses the target structure");
    Permutation prod = compose(alpha, beta);
    if (prod.cycle_structure().size() != 1)
        throw hypothesis_error("internal: product is not a full cycle");
    return beta;
}

BlockSystem imprimitivity_witness(const Permutation& alpha, const Permutation& beta) {
    Partition D1 = alpha.cycle_structure();
    Partition D2 = beta.cycle_structure();
    require_minimal_pair(D1, D2);
    int d = alpha.degree();
    int g = D1.gcd();
    if (g == 1) throw hypothesis_error("gcd of alpha's structure must exceed 1");
    if (g >= d || d % g != 0)
        throw hypothesis_error("gcd of alpha's structure must be a proper divisor of d");
    GeneratedGroup group(d, {alpha, beta});
    if (!is_transitive(group))
        throw hypothesis_error("<alpha, beta> must be transitive");

    Permutation prod = compose(alpha, beta);
    Permutation step = prod.power(g);
    std::vector<int> seed{0};
    for (int x = step(0); x != 0; x = step(x)) seed.push_back(x);
    std::sort(seed.begin(), seed.end());

    std::set<std::vector<int>> blocks{seed};
    std::vector<int> cur = seed;
    for (int j = 1; j < g; ++j) {
        std::vector<int> next;
        for (int v : cur) next.push_back(prod(v));
        std::sort(next.begin(), next.end());
        blocks.insert(next);
        cur = std::move(next);
    }
    BlockSystem sys;
    sys.blocks.assign(blocks.begin(), blocks.end());
    if (!preserves_blocks(group, sys))
        throw hypothesis_error("internal: block system not invariant");
    return sys;
}

namespace {

RealizationWitness finish_witness(BranchDatum datum, std::vector<Permutation> alphas,
                                  Permutation omega) {
    Permutation prod = alpha_product(alphas);
    if (compose(omega, omega) != prod)
        throw hypothesis_error("internal: omega squared differs from the product");
    std::vector<Permutation> gens = alphas;
    gens.push_back(omega);
    GeneratedGroup group(omega.degree(), gens);
    if (!is_transitive(group))
        throw hypothesis_error("internal: witness group is not transitive");
    PrimitivityResult pr = is_primitive(group);
    RealizationWitness w{std::move(datum), std::move(alphas), std::move(omega),
                         pr.primitive, std::move(pr.blocks)};
    return w;
}

}  // namespace

RealizationWitness realize_two_point(const BranchDatum& datum) {
    if (datum.k() != 2) throw hypothesis_error("datum must have exactly two partitions");
    if (!is_minimal_defect(datum))
        throw hypothesis_error("datum must have minimal defect (total defect d-1, d odd)");
    const Partition& D1 = datum[0];
    const Partition& D2 = datum[1];
    if (D1.gcd() != 1 || D2.gcd() != 1)
        throw hypothesis_error("both partitions must have gcd 1");
    if (is_two_two_one(D1) && is_two_two_one(D2))
        throw hypothesis_error("datum {[2,...,2,1],[2,...,2,1]} is excluded");
    int d = datum.degree();

    // Route A: a part y with gcd(y, d) = 1 exceeded by a part above
    // max(y, 2); smallest such y.
    int y = -1;
    {
        std::vector<int> values(D1.parts().begin(), D1.parts().end());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (int v : values) {
            if (std::gcd(v, d) != 1) continue;
            if (D1.largest() > std::max(v, 2)) {
                y = v;
                break;
            }
        }
    }

    if (y >= 0) {
        auto [alpha, beta] = construct_three_cycle_product(D1, D2, y);
        // The smaller of the two <alpha,beta> orbits is the isolated cycle's
        // support; omega has to bridge out of it.
        auto orb = orbits(GeneratedGroup(d, {alpha, beta}));
        if (orb.size() != 2)
            throw hypothesis_error("internal: three-cycle pair should have two orbits");
        const auto& small = orb[0].size() < orb[1].size() ? orb[0] : orb[1];
        Permutation omega = omega_from_three_cycles(compose(alpha, beta), small.front());
        RealizationWitness w =
            finish_witness(datum, {std::move(alpha), std::move(beta)}, std::move(omega));
        if (!w.primitive)
            throw hypothesis_error("internal: three-cycle route produced an imprimitive group");
        return w;
    }

    if (D1.smallest() < 3)
        throw hypothesis_error("internal: dispatch found no construction route");
    Permutation alpha = canonical_of_structure(D1);
    Permutation beta = construct_consecutive_beta(alpha, D2);
    Permutation prod = compose(alpha, beta);
    Permutation omega = prod.power((d + 1) / 2);
    RealizationWitness w =
        finish_witness(datum, {std::move(alpha), std::move(beta)}, std::move(omega));
    if (!w.primitive)
        throw hypothesis_error("internal: consecutive route produced an imprimitive group");
    return w;
}

namespace {

// Greedy tail-product builder for k >= 3: each cycle of the next generator
// meets that many distinct cycles of the running product, biggest components
// first, never touching the reserved point. Keeps the product defect equal to
// the sum of the generator defects and leaves the reserved point fixed.
struct TailBuild {
    std::vector<Permutation> alphas;  // generators 2..k in datum order
    Permutation product;
};

TailBuild build_tail(const BranchDatum& datum) {
    int d = datum.degree();
    int reserved = d - 1;
    Permutation P(d);
    std::vector<Permutation> alphas;

    for (int i = 1; i < datum.k(); ++i) {
        std::vector<std::vector<int>> own_cycles;
        std::vector<char> own(d, 0);
        for (int part : datum[i].parts()) {
            if (part == 1) continue;
            auto pc = P.cycles();
            // Non-trivial product cycles first, larger first; then fixed points.
            std::stable_sort(pc.begin(), pc.end(),
                             [](const std::vector<int>& a, const std::vector<int>& b) {
                                 if ((a.size() > 1) != (b.size() > 1))
                                     return a.size() > 1;
                                 if (a.size() != b.size()) return a.size() > b.size();
                                 return a.front() < b.front();
                             });
            std::vector<int> chosen;
            for (const auto& c : pc) {
                if (static_cast<int>(chosen.size()) == part) break;
                int pick = -1;
                for (int p : c)
                    if (!own[p] && p != reserved) {
                        pick = p;
                        break;
                    }
                if (pick >= 0) chosen.push_back(pick);
            }
            if (static_cast<int>(chosen.size()) != part)
                throw hypothesis_error("internal: tail build ran out of components");
            for (int p : chosen) own[p] = 1;
            P = compose(P, Permutation::from_cycles(d, {chosen}));
            own_cycles.push_back(std::move(chosen));
        }
        Permutation ai = Permutation::from_cycles(d, own_cycles);
        if (ai.cycle_structure() != datum[i])
            throw hypothesis_error("internal: tail generator misses its structure");
        alphas.push_back(std::move(ai));
    }
    return {std::move(alphas), std::move(P)};
}

}  // namespace

RealizationWitness realize_k_point(const BranchDatum& datum) {
    if (datum.k() < 3) throw hypothesis_error("datum must have at least three partitions");
    if (!is_minimal_defect(datum))
        throw hypothesis_error("datum must have minimal defect (total defect d-1, d odd)");
    int d = datum.degree();
    for (const Partition& p : datum.partitions())
        if (p.gcd() != 1)
            throw hypothesis_error("every partition must have gcd 1");

    TailBuild tail = build_tail(datum);
    Partition L = tail.product.cycle_structure();
    {
        int want = 0;
        for (int i = 1; i < datum.k(); ++i) want += datum[i].defect();
        if (L.defect() != want)
            throw hypothesis_error("internal: tail product lost defect");
        if (L.gcd() != 1)
            throw hypothesis_error("internal: tail structure has gcd above 1");
        if (is_two_two_one(datum[0]) && L.largest() <= 2)
            throw hypothesis_error("internal: tail structure stuck at [2,...,2,1]");
    }

    BranchDatum pair(d, {datum[0], L});
    RealizationWitness two = realize_two_point(pair);

    // Arrange omega^2 = delta * lambda with delta in the D1 class and lambda
    // in the L class; when the solver ordered them the other way, push the
    // first factor through the second (the product is unchanged).
    Permutation delta = two.alphas[0], lambda = two.alphas[1];
    if (!(pair[0] == datum[0])) {
        Permutation a1 = two.alphas[0], a2 = two.alphas[1];
        delta = a2;
        lambda = compose(compose(a2.inverse(), a1), a2);
    }
    if (delta.cycle_structure() != datum[0] || lambda.cycle_structure() != L)
        throw hypothesis_error("internal: factor reordering failed");

    Permutation eta = conjugator(tail.product, lambda);
    std::vector<Permutation> alphas{delta};
    for (const Permutation& ai : tail.alphas) alphas.push_back(relabel(ai, eta));

    RealizationWitness w = finish_witness(datum, std::move(alphas), two.omega);
    if (!w.primitive)
        throw hypothesis_error("internal: k-point construction produced an imprimitive group");
    return w;
}

namespace {

// Block-preserving candidate generators for one factorization cluster set.
// Points are laid out block-major: block t holds points t*w .. t*w+w-1.
struct SkeletonEnumerator {
    int u, w, d;
    std::vector<std::pair<int, Partition>> clusters;  // (block-cycle length, return structure)

    // All S_w elements, lexicographic.
    std::vector<Permutation> sym_w;
    // Return-map candidates per cluster (class of the scaled-down structure).
    std::vector<std::vector<Permutation>> returns;

    SkeletonEnumerator(int u_, int w_, const Partition& U, const std::vector<Partition>& W)
        : u(u_), w(w_), d(u_ * w_) {
        for (int j = 0; j < U.size(); ++j) clusters.emplace_back(U.parts()[j], W[j]);
        std::vector<int> img(w);
        std::iota(img.begin(), img.end(), 0);
        do {
            sym_w.push_back(Permutation::from_images(std::vector<int>(img)));
        } while (std::next_permutation(img.begin(), img.end()));
        for (auto& [q, Wp] : clusters) {
            std::vector<Permutation> cls;
            for (const Permutation& s : sym_w)
                if (s.cycle_structure() == Wp) cls.push_back(s);
            returns.push_back(std::move(cls));
        }
    }

    // Assembles the permutation from a full assignment: per cluster, the
    // ordered block cycle, the inter-block maps, and the return map.
    Permutation assemble(const std::vector<std::vector<int>>& block_cycles,
                         const std::vector<std::vector<const Permutation*>>& maps,
                         const std::vector<const Permutation*>& rets) const {
        std::vector<int> img(d);
        std::iota(img.begin(), img.end(), 0);
        for (size_t c = 0; c < block_cycles.size(); ++c) {
            const auto& bc = block_cycles[c];
            int q = static_cast<int>(bc.size());
            // forward composite F = maps[0] * maps[1] * ... (right action)
            Permutation F(w);
            for (int l = 0; l + 1 < q; ++l) F = compose(F, *maps[c][l]);
            Permutation psi = compose(F.inverse(), *rets[c]);
            for (int l = 0; l < q; ++l) {
                const Permutation& step = (l + 1 < q) ? *maps[c][l] : psi;
                for (int p = 0; p < w; ++p)
                    img[bc[l] * w + p] = bc[(l + 1) % q] * w + step(p);
            }
        }
        return Permutation::from_images(std::move(img));
    }

    // Visits candidates in canonical order; visitor returns false to stop.
    // `canonical_only` restricts to the single normalized candidate (identity
    // maps, first return representative, blocks assigned in order).
    bool enumerate(bool canonical_only,
                   const std::function<bool(const Permutation&)>& visit,
                   std::uint64_t& budget) const {
        std::vector<std::vector<int>> block_cycles(clusters.size());
        std::vector<std::vector<const Permutation*>> maps(clusters.size());
        std::vector<const Permutation*> rets(clusters.size());
        std::vector<char> free_block(u, 1);

        auto rec = [&](auto&& self, size_t c) -> bool {
            if (c == clusters.size()) {
                if (budget == 0) throw budget_exhausted("skeleton search budget exhausted");
                --budget;
                return visit(assemble(block_cycles, maps, rets));
            }
            int q = clusters[c].first;
            // Anchor block: smallest free one; equal clusters keep ascending
            // anchors automatically because anchors are consumed in order.
            int anchor = -1;
            for (int b = 0; b < u; ++b)
                if (free_block[b]) {
                    anchor = b;
                    break;
                }
            std::vector<int> rest;
            for (int b = anchor + 1; b < u; ++b)
                if (free_block[b]) rest.push_back(b);

            std::vector<int> pick(q - 1);
            // Ordered selections of q-1 blocks from rest.
            auto sel = [&](auto&& sself, int slot, std::vector<char>& used) -> bool {
                if (slot == q - 1) {
                    block_cycles[c] = {anchor};
                    for (int v : pick) block_cycles[c].push_back(v);
                    for (int v : block_cycles[c]) free_block[v] = 0;
                    maps[c].assign(std::max(0, q - 1), &sym_w[0]);
                    bool go = true;
                    if (canonical_only) {
                        rets[c] = &returns[c][0];
                        go = self(self, c + 1);
                    } else {
                        auto maps_rec = [&](auto&& mself, int l) -> bool {
                            if (l == q - 1) {
                                for (const Permutation& r : returns[c]) {
                                    rets[c] = &r;
                                    if (!self(self, c + 1)) return false;
                                }
                                return true;
                            }
                            for (const Permutation& m : sym_w) {
                                maps[c][l] = &m;
                                if (!mself(mself, l + 1)) return false;
                            }
                            return true;
                        };
                        go = maps_rec(maps_rec, 0);
                    }
                    for (int v : block_cycles[c]) free_block[v] = 1;
                    return go;
                }
                for (size_t i = 0; i < rest.size(); ++i) {
                    if (used[i]) continue;
                    used[i] = 1;
                    pick[slot] = rest[i];
                    if (!sself(sself, slot + 1, used)) return false;
                    used[i] = 0;
                }
                return true;
            };
            std::vector<char> used(rest.size(), 0);
            if (canonical_only) {
                // Identity assignment: next q-1 free blocks in order.
                if (static_cast<int>(rest.size()) < q - 1)
                    throw hypothesis_error("internal: cluster sizes exceed block count");
                block_cycles[c] = {anchor};
                for (int t = 0; t < q - 1; ++t) block_cycles[c].push_back(rest[t]);
                for (int v : block_cycles[c]) free_block[v] = 0;
                maps[c].assign(std::max(0, q - 1), &sym_w[0]);
                rets[c] = &returns[c][0];
                bool go = self(self, c + 1);
                for (int v : block_cycles[c]) free_block[v] = 1;
                return go;
            }
            return sel(sel, 0, used);
        };
        return rec(rec, 0);
    }
};

}  // namespace

RealizationWitness realize_decomposable(const BranchDatum& datum, const Factorization& f,
                                        std::uint64_t budget) {
    if (!is_minimal_defect(datum))
        throw hypothesis_error("datum must have minimal defect (total defect d-1, d odd)");
    if (static_cast<int>(f.U_list.size()) != datum.k())
        throw hypothesis_error("factorization does not cover the datum");
    if (f.u < 2 || f.w < 2 || f.u * f.w != datum.degree())
        throw hypothesis_error("factorization split must be non-trivial");
    for (int i = 0; i < datum.k(); ++i)
        if (!(product_partition(f.U_list[i], f.W_list[i]) == datum[i]))
            throw hypothesis_error("factorization does not reproduce partition " +
                                   datum[i].to_string());
    if (f.first_factor_defect() != f.u - 1)
        throw hypothesis_error("first factor must be a minimal-defect datum (defect u-1)");
    bool first_nontrivial = false;
    for (const Partition& U : f.U_list)
        if (!U.is_trivial()) first_nontrivial = true;
    if (!first_nontrivial)
        throw hypothesis_error("first factor must be non-trivial");

    int d = datum.degree();
    int u = f.u, w = f.w;
    BlockSystem sys;
    for (int t = 0; t < u; ++t) {
        std::vector<int> b(w);
        std::iota(b.begin(), b.end(), t * w);
        sys.blocks.push_back(std::move(b));
    }

    std::vector<SkeletonEnumerator> enums;
    for (int i = 0; i < datum.k(); ++i)
        enums.emplace_back(u, w, f.U_list[i], f.W_list[i]);

    std::vector<Permutation> chosen(datum.k(), Permutation(d));
    std::optional<RealizationWitness> found;

    auto rec = [&](auto&& self, int i) -> bool {
        if (i == datum.k()) {
            Permutation prod = alpha_product(chosen);
            bool keep = for_each_square_root(prod, [&](const Permutation& omega) {
                if (!preserves_blocks(omega, sys)) return true;
                std::vector<Permutation> gens = chosen;
                gens.push_back(omega);
                GeneratedGroup group(d, gens);
                if (!is_transitive(group)) return true;
                found = RealizationWitness{datum, chosen, omega, false, sys};
                return false;
            });
            return keep;
        }
        return enums[i].enumerate(i == 0, [&](const Permutation& cand) {
            if (cand.cycle_structure() != datum[i]) return true;
            chosen[i] = cand;
            return self(self, i + 1);
        }, budget);
    };
    rec(rec, 0);

    if (!found)
        throw hypothesis_error(
            "search exhausted: factorization admits no block-preserving tuple");
    return *found;
}

WitnessReport verify_witness(const RealizationWitness& w) {
    WitnessReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    bool sizes_ok = static_cast<int>(w.alphas.size()) == w.datum.k();
    add("generator count matches datum", sizes_ok);
    if (!sizes_ok) {
        rep.all_pass = false;
        return rep;
    }

    for (int i = 0; i < w.datum.k(); ++i) {
        bool ok = w.alphas[i].degree() == w.datum.degree() &&
                  w.alphas[i].cycle_structure() == w.datum[i];
        add("alpha_" + std::to_string(i + 1) + " has structure " + w.datum[i].to_string(),
            ok);
    }

    bool square_ok = false;
    try {
        square_ok = compose(w.omega, w.omega) == alpha_product(w.alphas);
    } catch (const hypothesis_error&) {
    }
    add("omega squared equals the product of the alphas", square_ok);

    std::vector<Permutation> gens = w.alphas;
    gens.push_back(w.omega);
    GeneratedGroup group(w.datum.degree(), gens);
    bool transitive = is_transitive(group);
    add("group is transitive", transitive);

    if (transitive) {
        PrimitivityResult pr = is_primitive(group);
        add(std::string("recomputed verdict is ") +
                (pr.primitive ? "primitive" : "imprimitive"),
            pr.primitive == w.primitive);
        if (!w.primitive) {
            bool has_blocks = w.blocks.has_value();
            add("imprimitive witness carries a block system", has_blocks);
            if (has_blocks)
                add("stored block system is invariant under all generators",
                    preserves_blocks(group, *w.blocks));
        }
    }

    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const WitnessCheck& c) { return c.pass; });
    return rep;
}

}  // namespace branchcov
