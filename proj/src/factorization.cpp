#include "branchcov/factorization.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "branchcov/errors.hpp"

namespace branchcov {

int Factorization::first_factor_defect() const {
    int t = 0;
    for (const Partition& U : U_list) t += U.defect();
    return t;
}

int Factorization::second_factor_defect() const {
    int t = 0;
    for (const auto& Ws : W_list)
        for (const Partition& W : Ws) t += W.defect();
    return t;
}

Partition product_partition(const Partition& U, const std::vector<Partition>& W) {
    if (U.size() != static_cast<int>(W.size()))
        throw hypothesis_error("second factor not aligned with first factor parts");
    std::vector<int> parts;
    for (int j = 0; j < U.size(); ++j)
        for (int x : W[j].parts()) parts.push_back(U.parts()[j] * x);
    return Partition(std::move(parts));
}

namespace {

using Counts = std::map<int, int>;  // part value -> multiplicity

Counts to_counts(const Partition& p) {
    Counts c;
    for (int x : p.parts()) ++c[x];
    return c;
}

bool subtract(Counts& from, const Partition& scaled) {
    Counts need;
    for (int x : scaled.parts()) ++need[x];
    for (auto [v, n] : need) {
        auto it = from.find(v);
        if (it == from.end() || it->second < n) return false;
    }
    for (auto [v, n] : need) from[v] -= n;
    return true;
}

void add_back(Counts& to, const Partition& scaled) {
    for (int x : scaled.parts()) ++to[x];
}

struct Cluster {
    int q;             // part of U
    Partition W;       // partition of w
    Partition scaled;  // q * W
};

// Candidates in a fixed descending order so multisets of clusters enumerate
// canonically (indices non-decreasing along a choice path).
std::vector<Cluster> cluster_candidates(int u, int w) {
    std::vector<Cluster> cands;
    for (int q = u; q >= 1; --q)
        for (const Partition& W : partitions_of(w))
            cands.push_back({q, W, scale(W, q)});
    std::sort(cands.begin(), cands.end(), [](const Cluster& a, const Cluster& b) {
        if (a.q != b.q) return a.q > b.q;
        return a.W > b.W;
    });
    return cands;
}

}  // namespace

std::vector<ProductDecomposition> product_partition_decompositions(const Partition& D,
                                                                   int u, int w) {
    if (u < 2 || w < 2 || u * w != D.sum())
        throw hypothesis_error("u*w must equal d with u, w > 1");

    auto cands = cluster_candidates(u, w);
    std::vector<ProductDecomposition> out;
    Counts remaining = to_counts(D);
    std::vector<int> chosen;

    auto rec = [&](auto&& self, size_t from, int u_left) -> void {
        if (u_left == 0) {
            bool empty = true;
            for (auto& [v, n] : remaining)
                if (n) empty = false;
            if (!empty) return;
            std::vector<int> uparts;
            std::vector<Partition> ws;
            for (int idx : chosen) {
                uparts.push_back(cands[idx].q);
                ws.push_back(cands[idx].W);
            }
            out.push_back({Partition(std::move(uparts)), std::move(ws)});
            return;
        }
        for (size_t i = from; i < cands.size(); ++i) {
            if (cands[i].q > u_left) continue;
            if (!subtract(remaining, cands[i].scaled)) continue;
            chosen.push_back(static_cast<int>(i));
            self(self, i, u_left - cands[i].q);
            chosen.pop_back();
            add_back(remaining, cands[i].scaled);
        }
    };
    rec(rec, 0, u);
    return out;
}

namespace {

using FactorKey = std::vector<std::pair<std::vector<int>, std::vector<std::vector<int>>>>;

FactorKey key_of(const Factorization& f) {
    FactorKey key;
    for (size_t i = 0; i < f.U_list.size(); ++i) {
        std::vector<std::vector<int>> ws;
        for (const Partition& W : f.W_list[i]) ws.push_back(W.parts());
        std::sort(ws.begin(), ws.end());
        key.emplace_back(f.U_list[i].parts(), std::move(ws));
    }
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace

std::vector<Factorization> algebraic_factorizations(const BranchDatum& datum) {
    std::vector<Factorization> out;
    int d = datum.degree();
    for (int u = 2; u < d; ++u) {
        if (d % u != 0) continue;
        int w = d / u;
        if (w < 2) continue;

        std::vector<std::vector<ProductDecomposition>> per_datum;
        bool feasible = true;
        for (const Partition& D : datum.partitions()) {
            per_datum.push_back(product_partition_decompositions(D, u, w));
            if (per_datum.back().empty()) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;

        std::set<FactorKey> seen;
        std::vector<int> pick(datum.k(), 0);
        auto rec = [&](auto&& self, int i) -> void {
            if (i == datum.k()) {
                Factorization f;
                f.u = u;
                f.w = w;
                for (int j = 0; j < datum.k(); ++j) {
                    f.U_list.push_back(per_datum[j][pick[j]].U);
                    f.W_list.push_back(per_datum[j][pick[j]].W);
                }
                if (seen.insert(key_of(f)).second) out.push_back(std::move(f));
                return;
            }
            for (size_t c = 0; c < per_datum[i].size(); ++c) {
                pick[i] = static_cast<int>(c);
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

std::optional<Factorization> has_decomposable_realization(const BranchDatum& datum) {
    if (!is_minimal_defect(datum))
        throw hypothesis_error("datum must have minimal defect (total defect d-1, d odd)");
    for (Factorization& f : algebraic_factorizations(datum))
        if (f.first_factor_defect() == f.u - 1) return std::move(f);
    return std::nullopt;
}

}  // namespace branchcov
