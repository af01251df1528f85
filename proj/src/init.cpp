#include "ombc/init.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace ombc {

namespace {

struct Merge {
    std::size_t a;      // representative point of one cluster
    std::size_t b;      // representative point of the other
    double height;      // Ward merge cost (squared-distance units)
};

// Condensed upper-triangular index for i < j over n points.
inline std::size_t condensed(std::size_t i, std::size_t j, std::size_t n) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Nearest-neighbour-chain agglomeration with the Lance-Williams Ward update.
// Ward is reducible, so every reciprocal nearest-neighbour pair found by the
// chain is a correct merge. O(n^2) time, O(n^2) memory.
std::vector<Merge> ward_merges(const DataMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    std::vector<double> dist(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < p; ++k) {
                const double diff = data(i, k) - data(j, k);
                d2 += diff * diff;
            }
            dist[condensed(i, j, n)] = d2;
        }

    std::vector<bool> active(n, true);
    std::vector<double> size(n, 1.0);
    std::vector<std::size_t> chain;
    chain.reserve(n);
    std::vector<Merge> merges;
    merges.reserve(n - 1);

    auto d_at = [&](std::size_t i, std::size_t j) {
        return i < j ? dist[condensed(i, j, n)] : dist[condensed(j, i, n)];
    };
    // Nearest active cluster to `tip`. Scans in ascending index with strict
    // comparison so ties resolve to the lowest index; seeding the candidate
    // with the chain predecessor makes tie pairs reciprocal, which
    // guarantees termination.
    auto nearest = [&](std::size_t tip, std::size_t seed) {
        std::size_t best = seed;
        double best_d = seed < n ? d_at(tip, seed) : 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == tip || k == seed) continue;
            const double d = d_at(tip, k);
            if (best == n || d < best_d) {
                best = k;
                best_d = d;
            }
        }
        return best;
    };

    std::size_t first_active = 0;
    while (merges.size() + 1 < n) {
        if (chain.empty()) {
            while (!active[first_active]) ++first_active;
            chain.push_back(first_active);
        }
        // Grow until the tip and its nearest neighbour are reciprocal.
        for (;;) {
            const std::size_t tip = chain.back();
            const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
            const std::size_t nn = nearest(tip, prev);
            if (nn == prev) break;
            chain.push_back(nn);
        }
        std::size_t a = chain[chain.size() - 2];
        std::size_t b = chain.back();
        chain.pop_back();
        chain.pop_back();
        if (a > b) std::swap(a, b);

        merges.push_back({a, b, d_at(a, b)});
        const double sa = size[a];
        const double sb = size[b];
        const double dab = d_at(a, b);
        // Keep the merged cluster under index a; retire b.
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == a || k == b) continue;
            const double sk = size[k];
            const double updated =
                ((sa + sk) * d_at(a, k) + (sb + sk) * d_at(b, k) - sk * dab) / (sa + sb + sk);
            (a < k ? dist[condensed(a, k, n)] : dist[condensed(k, a, n)]) = updated;
        }
        size[a] = sa + sb;
        active[b] = false;
        // Ward is reducible, so the truncated chain stays a valid descent;
        // the next pass re-derives the tip's nearest neighbour.
    }
    return merges;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Matrix hier_init(const DataMatrix& data, std::size_t groups) {
    const std::size_t n = data.rows();
    if (groups < 1) throw DomainError("hier_init: need at least one group");
    if (n < groups) throw TooFewPoints("hier_init: fewer points than groups");

    Matrix resp(n, groups);
    if (groups == 1) {
        for (std::size_t i = 0; i < n; ++i) resp(i, 0) = 1.0;
        return resp;
    }

    std::vector<Merge> merges = ward_merges(data);
    // The chain finds reciprocal pairs out of order; sort by merge height
    // (stable on ties) to obtain the dendrogram order, then undo the last
    // groups-1 merges.
    std::stable_sort(merges.begin(), merges.end(),
                     [](const Merge& x, const Merge& y) { return x.height < y.height; });
    UnionFind uf(n);
    for (std::size_t m = 0; m + groups < n; ++m) uf.unite(merges[m].a, merges[m].b);

    std::vector<std::size_t> label_of_root(n, groups);
    std::size_t next_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = uf.find(i);
        if (label_of_root[root] == groups) label_of_root[root] = next_label++;
        resp(i, label_of_root[root]) = 1.0;
    }
    return resp;
}

Matrix next_init(const MixtureFit& prev_fit, std::size_t removed_row, InitScheme scheme,
                 const DataMatrix& data_after_removal) {
    if (scheme == InitScheme::Reinit)
        return hier_init(data_after_removal, prev_fit.params.components);
    if (removed_row >= prev_fit.resp.rows())
        throw DomainError("next_init: removed_row out of range");
    Matrix resp = prev_fit.resp;
    resp.erase_row(removed_row);
    return resp;
}

}  // namespace ombc
