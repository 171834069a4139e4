#include "branchcov/partition.hpp"

#include <algorithm>
#include <numeric>

#include "branchcov/errors.hpp"

namespace branchcov {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p < 1) throw hypothesis_error("partition parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    sum_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::gcd() const {
    int g = 0;
    for (int p : parts_) g = std::gcd(g, p);
    return g;
}

int Partition::ones() const { return count(1); }

int Partition::count(int value) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
}

bool Partition::is_trivial() const {
    return parts_.empty() || parts_.front() == 1;
}

std::string Partition::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    s += ']';
    return s;
}

Partition scale(const Partition& p, int k) {
    std::vector<int> v;
    v.reserve(p.parts().size());
    for (int x : p.parts()) v.push_back(x * k);
    return Partition(std::move(v));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& acc,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(acc);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        acc.push_back(p);
        partitions_rec(remaining - p, p, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int d) {
    std::vector<Partition> out;
    std::vector<int> acc;
    partitions_rec(d, d, acc, out);
    return out;
}

std::vector<Partition> partitions_of_with_parts(int d, int parts) {
    std::vector<Partition> out;
    for (const Partition& p : partitions_of(d))
        if (p.size() == parts) out.push_back(p);
    return out;
}

BranchDatum::BranchDatum(int d, std::vector<Partition> partitions) : d_(d) {
    if (d < 1) throw hypothesis_error("degree must be positive");
    if (partitions.empty()) throw hypothesis_error("datum needs at least one partition");
    for (const Partition& p : partitions) {
        if (p.sum() != d)
            throw hypothesis_error("partition " + p.to_string() +
                                   " does not sum to d=" + std::to_string(d));
        if (p.is_trivial())
            throw hypothesis_error("datum partitions must be non-trivial");
    }
    std::vector<int> order(partitions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (partitions[a].defect() != partitions[b].defect())
            return partitions[a].defect() > partitions[b].defect();
        return partitions[a] > partitions[b];
    });
    for (int idx : order) partitions_.push_back(partitions[idx]);
    input_positions_ = order;
}

int BranchDatum::total_defect() const {
    int t = 0;
    for (const Partition& p : partitions_) t += p.defect();
    return t;
}

std::string BranchDatum::to_string() const {
    std::string s = "{";
    for (int i = 0; i < k(); ++i) {
        if (i) s += ',';
        s += partitions_[i].to_string();
    }
    s += '}';
    return s;
}

bool is_admissible_rp2(const BranchDatum& datum) {
    int nu = datum.total_defect();
    return nu >= datum.degree() - 1 && nu % 2 == 0;
}

bool is_minimal_defect(const BranchDatum& datum) {
    return datum.degree() % 2 == 1 && datum.total_defect() == datum.degree() - 1;
}

namespace {

// Position order used for normalized tuples: defect descending, then
// lexicographically larger part list first.
bool datum_position_less(const Partition& a, const Partition& b) {
    if (a.defect() != b.defect()) return a.defect() > b.defect();
    return a > b;
}

}  // namespace

void enumerate_minimal_data(int d, int k,
                            const std::function<bool(const BranchDatum&)>& visit) {
    if (d < 1 || d % 2 == 0) throw hypothesis_error("d must be odd for minimal defect");
    if (k < 1) throw hypothesis_error("k must be at least 1");

    // Non-trivial partitions of d in tuple-position order.
    std::vector<Partition> all;
    for (Partition& p : partitions_of(d))
        if (!p.is_trivial()) all.push_back(std::move(p));
    std::sort(all.begin(), all.end(), datum_position_less);

    std::vector<Partition> acc;
    bool stop = false;
    // Chooses entries with non-decreasing position index so each multiset
    // appears once, already in normalized order.
    auto rec = [&](auto&& self, int from, int remaining_defect) -> void {
        if (stop) return;
        if (static_cast<int>(acc.size()) == k) {
            if (remaining_defect == 0)
                if (!visit(BranchDatum(d, acc))) stop = true;
            return;
        }
        int slots = k - static_cast<int>(acc.size());
        for (int i = from; i < static_cast<int>(all.size()); ++i) {
            int nu = all[i].defect();
            // Remaining picks have defect <= nu each (order is defect-descending).
            if (nu > remaining_defect - (slots - 1)) continue;
            if (static_cast<long long>(nu) * slots < remaining_defect) break;
            acc.push_back(all[i]);
            self(self, i, remaining_defect - nu);
            acc.pop_back();
            if (stop) return;
        }
    };
    rec(rec, 0, d - 1);
}

std::vector<BranchDatum> minimal_data(int d, int k) {
    std::vector<BranchDatum> out;
    enumerate_minimal_data(d, k, [&](const BranchDatum& dat) {
        out.push_back(dat);
        return true;
    });
    return out;
}

}  // namespace branchcov
