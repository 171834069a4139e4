#include "branchcov/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "branchcov/errors.hpp"

namespace branchcov {

Permutation::Permutation(int degree) : img_(degree) {
    for (int i = 0; i < degree; ++i) img_[i] = i;
}

Permutation Permutation::from_images(std::vector<int> images) {
    int d = static_cast<int>(images.size());
    std::vector<char> seen(d, 0);
    for (int v : images) {
        if (v < 0 || v >= d || seen[v])
            throw hypothesis_error("image table is not a bijection");
        seen[v] = 1;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
}

Permutation Permutation::from_cycles(int degree,
                                     const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i;
    std::vector<char> seen(degree, 0);
    for (const auto& cyc : cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i];
            int b = cyc[(i + 1) % cyc.size()];
            if (a < 0 || a >= degree)
                throw hypothesis_error("cycle point out of range");
            if (seen[a]) throw hypothesis_error("point repeated across cycles");
            seen[a] = 1;
            img[a] = b;
        }
    }
    return from_images(std::move(img));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
    Permutation p;
    p.img_ = std::move(inv);
    return p;
}

Permutation Permutation::power(long long e) const {
    Permutation base = *this;
    if (e < 0) {
        base = inverse();
        e = -e;
    }
    Permutation acc(degree());
    while (e > 0) {
        if (e & 1) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int start = 0; start < degree(); ++start) {
        if (seen[start]) continue;
        std::vector<int> cyc;
        int x = start;
        do {
            seen[x] = 1;
            cyc.push_back(x);
            x = img_[x];
        } while (x != start);
        out.push_back(std::move(cyc));
    }
    return out;
}

Partition Permutation::cycle_structure() const {
    std::vector<int> lens;
    for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
    return Partition(std::move(lens));
}

int Permutation::defect() const {
    return degree() - static_cast<int>(cycles().size());
}

std::vector<int> Permutation::support() const {
    std::vector<int> s;
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i) s.push_back(i);
    return s;
}

std::uint64_t Permutation::packed_key() const {
    std::uint64_t key = 0;
    for (int i = 0; i < degree(); ++i)
        key |= static_cast<std::uint64_t>(img_[i]) << (4 * i);
    return key;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree())
        throw hypothesis_error("degree mismatch in product");
    std::vector<int> img(p.degree());
    for (int i = 0; i < p.degree(); ++i) img[i] = q(p(i));
    return Permutation::from_images(std::move(img));
}

Permutation conjugate(const Permutation& p, const Permutation& lambda) {
    if (p.degree() != lambda.degree())
        throw hypothesis_error("degree mismatch in conjugation");
    return compose(compose(lambda, p), lambda.inverse());
}

Permutation relabel(const Permutation& p, const Permutation& m) {
    if (p.degree() != m.degree())
        throw hypothesis_error("degree mismatch in relabeling");
    std::vector<int> img(p.degree());
    for (int x = 0; x < p.degree(); ++x) img[m(x)] = m(p(x));
    return Permutation::from_images(std::move(img));
}

namespace {

std::vector<std::vector<int>> cycles_by_length(const Permutation& p) {
    auto cyc = p.cycles();
    std::stable_sort(cyc.begin(), cyc.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a.front() < b.front();
                     });
    return cyc;
}

}  // namespace

Permutation conjugator(const Permutation& from, const Permutation& to) {
    if (from.cycle_structure() != to.cycle_structure())
        throw hypothesis_error("cycle structures differ; no conjugator exists");
    auto cf = cycles_by_length(from);
    auto ct = cycles_by_length(to);
    std::vector<int> m(from.degree());
    for (size_t c = 0; c < cf.size(); ++c)
        for (size_t i = 0; i < cf[c].size(); ++i) m[cf[c][i]] = ct[c][i];
    return Permutation::from_images(std::move(m));
}

Permutation canonical_of_structure(const Partition& structure) {
    std::vector<std::vector<int>> cycles;
    int next = 0;
    for (int len : structure.parts()) {
        std::vector<int> c(len);
        for (int i = 0; i < len; ++i) c[i] = next + i;
        next += len;
        cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(structure.sum(), cycles);
}

std::string to_cycle_string(const Permutation& p) {
    std::string s;
    for (const auto& cyc : p.cycles()) {
        s += '(';
        for (size_t i = 0; i < cyc.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(cyc[i] + 1);
        }
        s += ')';
    }
    return s;
}

Permutation parse_cycles(const std::string& text, int degree) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw parse_error("expected '(' in cycle notation");
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip_ws();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw parse_error("expected point or ')' in cycle notation");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                ++i;
            }
            if (v < 1 || v > degree)
                throw parse_error("point " + std::to_string(v) + " outside 1.." +
                                  std::to_string(degree));
            cyc.push_back(v - 1);
        }
        if (cyc.empty()) throw parse_error("empty cycle");
        cycles.push_back(std::move(cyc));
        skip_ws();
    }
    try {
        return Permutation::from_cycles(degree, cycles);
    } catch (const hypothesis_error& e) {
        throw parse_error(e.what());
    }
}

namespace {

// Square roots are assembled cycle class by cycle class: cycles of p grouped
// by length, each class either power-rooted (lone odd cycles) or interleaved
// in pairs.
struct RootEnumerator {
    const std::function<bool(const Permutation&)>& visit;
    std::vector<std::vector<std::vector<int>>> classes;
    std::vector<int> img;
    bool keep_going = true;

    explicit RootEnumerator(const Permutation& p,
                            const std::function<bool(const Permutation&)>& v)
        : visit(v), img(p.degree()) {
        std::map<int, std::vector<std::vector<int>>> by_len;
        for (auto& c : cycles_by_length(p))
            by_len[static_cast<int>(c.size())].push_back(std::move(c));
        for (auto& [len, cs] : by_len) classes.push_back(std::move(cs));
    }

    void place_power_root(const std::vector<int>& c) {
        int m = static_cast<int>(c.size());
        int half = (m + 1) / 2;
        for (int i = 0; i < m; ++i) img[c[i]] = c[(i + half) % m];
    }

    void place_interleaving(const std::vector<int>& a, const std::vector<int>& b,
                            int offset) {
        int m = static_cast<int>(a.size());
        for (int i = 0; i < m; ++i) {
            img[a[i]] = b[(offset + i) % m];
            img[b[(offset + i) % m]] = a[(i + 1) % m];
        }
    }

    void emit() {
        if (!visit(Permutation::from_images(img))) keep_going = false;
    }

    void match_class(size_t ci, std::vector<char>& used, int remaining,
                     size_t next_class) {
        if (!keep_going) return;
        const auto& cs = classes[ci];
        if (remaining == 0) {
            descend(next_class);
            return;
        }
        size_t first = 0;
        while (used[first]) ++first;
        used[first] = 1;
        int m = static_cast<int>(cs[first].size());
        if (m % 2 == 1) {
            place_power_root(cs[first]);
            match_class(ci, used, remaining - 1, next_class);
        }
        for (size_t j = first + 1; j < cs.size() && keep_going; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            for (int off = 0; off < m && keep_going; ++off) {
                place_interleaving(cs[first], cs[j], off);
                match_class(ci, used, remaining - 2, next_class);
            }
            used[j] = 0;
        }
        used[first] = 0;
    }

    void descend(size_t ci) {
        if (!keep_going) return;
        if (ci == classes.size()) {
            emit();
            return;
        }
        const auto& cs = classes[ci];
        int len = static_cast<int>(cs[0].size());
        if (len % 2 == 0 && cs.size() % 2 == 1) return;  // unpairable even class
        std::vector<char> used(cs.size(), 0);
        match_class(ci, used, static_cast<int>(cs.size()), ci + 1);
    }
};

}  // namespace

bool for_each_square_root(const Permutation& p,
                          const std::function<bool(const Permutation&)>& visit) {
    RootEnumerator e(p, visit);
    e.descend(0);
    return e.keep_going;
}

std::vector<Permutation> square_roots(const Permutation& p) {
    std::vector<Permutation> out;
    for_each_square_root(p, [&](const Permutation& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

bool has_square_root(const Permutation& p) {
    std::map<int, int> even_counts;
    for (const auto& c : p.cycles())
        if (c.size() % 2 == 0) ++even_counts[static_cast<int>(c.size())];
    for (auto [len, n] : even_counts)
        if (n % 2 == 1) return false;
    return true;
}

}  // namespace branchcov
