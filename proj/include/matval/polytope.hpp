#pragma once

// Base polytopes by H-description (equality + one inequality per proper
// cyclic flat + box), exact lattice point counts of dilations, Ehrhart and
// volume oracles, and the relaxation subdivision as a checkable identity.

#include <matval/stressed.hpp>

#include <optional>

namespace matval {

struct HPolytope {
    int n = 0;
    int k = 0;                                  // equality sum x_i = k
    std::vector<std::pair<Mask, int>> ineqs;    // sum_{i in mask} x_i <= bound
};

inline HPolytope base_polytope(const Matroid& m) {
    HPolytope p;
    p.n = m.n();
    p.k = m.rank();
    // one inequality per cyclic flat; the empty set is vacuous and the ground
    // set is implied by the equality, but the loop set (rank 0) and the
    // complement of the coloops are load-bearing for degenerate matroids
    auto z = cyclic_flats(m);
    for (size_t i = 0; i < z.flats.size(); ++i)
        if (z.flats[i] != 0 && z.flats[i] != m.ground()) p.ineqs.emplace_back(z.flats[i], z.ranks[i]);
    return p;
}

inline bool polytope_contains(const HPolytope& p, const std::vector<int>& y, long t) {
    long total = 0;
    for (int v : y) {
        if (v < 0 || v > t) return false;
        total += v;
    }
    if (total != t * p.k) return false;
    for (const auto& [mask, bound] : p.ineqs) {
        long s = 0;
        for (int e : mask_elements(mask)) s += y[static_cast<size_t>(e)];
        if (s > t * bound) return false;
    }
    return true;
}

namespace detail {

inline bool is_prefix_mask(Mask m, int n, int& len) {
    int p = popcount(m);
    if (m == full_mask(p)) { len = p; return true; }
    (void)n;
    return false;
}
inline bool is_suffix_mask(Mask m, int n, int& start) {
    int p = popcount(m);
    if (m == (full_mask(n) & ~full_mask(n - p))) { start = n - p; return true; }
    return false;
}

// prefix-sum DP when every inequality is a prefix or suffix interval
inline std::optional<Int> lattice_points_interval_dp(const HPolytope& p, long t) {
    const long target = t * p.k;
    // checkpoints: at position m the prefix sum must lie in [lo[m], hi[m]]
    std::vector<long> lo(static_cast<size_t>(p.n) + 1, 0), hi(static_cast<size_t>(p.n) + 1, target);
    for (const auto& [mask, bound] : p.ineqs) {
        int len = 0, start = 0;
        if (is_prefix_mask(mask, p.n, len)) {
            hi[static_cast<size_t>(len)] = std::min(hi[static_cast<size_t>(len)], t * bound);
        } else if (is_suffix_mask(mask, p.n, start)) {
            lo[static_cast<size_t>(start)] = std::max(lo[static_cast<size_t>(start)], target - t * bound);
        } else {
            return std::nullopt;
        }
    }
    lo[static_cast<size_t>(p.n)] = hi[static_cast<size_t>(p.n)] = target;
    std::vector<Int> f(static_cast<size_t>(target) + 1, Int(0));
    f[0] = 1;
    for (int pos = 0; pos < p.n; ++pos) {
        std::vector<Int> g(static_cast<size_t>(target) + 1, Int(0));
        for (long s = lo[static_cast<size_t>(pos)]; s <= hi[static_cast<size_t>(pos)]; ++s) {
            if (f[static_cast<size_t>(s)] == 0) continue;
            for (long v = 0; v <= t && s + v <= target; ++v)
                g[static_cast<size_t>(s + v)] += f[static_cast<size_t>(s)];
        }
        for (long s = 0; s <= target; ++s)
            if (s < lo[static_cast<size_t>(pos + 1)] || s > hi[static_cast<size_t>(pos + 1)])
                g[static_cast<size_t>(s)] = 0;
        f = std::move(g);
    }
    return f[static_cast<size_t>(target)];
}

inline Int lattice_points_enumerate(const HPolytope& p, long t) {
    const long target = t * p.k;
    std::vector<long> partial(p.ineqs.size(), 0);
    Int count = 0;
    std::function<void(int, long)> rec = [&](int pos, long acc) {
        if (pos == p.n) {
            if (acc == target) ++count;
            return;
        }
        long rest = static_cast<long>(p.n - pos - 1);
        for (long v = 0; v <= t; ++v) {
            long acc2 = acc + v;
            if (acc2 > target) break;
            if (acc2 + t * rest < target) continue;
            bool ok = true;
            for (size_t i = 0; i < p.ineqs.size(); ++i) {
                if (!has_bit(p.ineqs[i].first, pos)) continue;
                partial[i] += v;
                if (partial[i] > t * p.ineqs[i].second) ok = false;
            }
            if (ok) rec(pos + 1, acc2);
            for (size_t i = 0; i < p.ineqs.size(); ++i)
                if (has_bit(p.ineqs[i].first, pos)) partial[i] -= v;
        }
    };
    rec(0, 0);
    return count;
}

}  // namespace detail

inline Int lattice_points(const HPolytope& p, long t) {
    if (t < 0) throw std::invalid_argument("lattice_points: negative dilation");
    if (t == 0) return 1;
    if (auto fast = detail::lattice_points_interval_dp(p, t)) return *fast;
    return detail::lattice_points_enumerate(p, t);
}

inline int polytope_dim(const Matroid& m) {
    return m.n() - static_cast<int>(components(m).size());
}

inline UniPoly ehrhart_oracle(const Matroid& m) {
    HPolytope p = base_polytope(m);
    int d = polytope_dim(m);
    std::vector<std::pair<Rat, Rat>> pts;
    for (long t = 0; t <= d; ++t) pts.emplace_back(Rat(t), Rat(lattice_points(p, t)));
    return interpolate(pts);
}

// normalized volume: leading Ehrhart coefficient for connected matroids,
// zero otherwise (lower-dimensional polytopes)
inline Rat volume_oracle(const Matroid& m) {
    if (m.n() == 0) return Rat(1);
    if (!is_connected(m)) return Rat(0);
    UniPoly e = ehrhart_oracle(m);
    return e.coeff(polytope_dim(m));
}

// ---- relaxation subdivision certificate --------------------------------------

struct SubdivisionReport {
    bool ok = false;
    bool degenerate = false;  // empty cusp, nothing to certify
    long points_checked = 0;
    std::optional<std::pair<long, std::vector<int>>> witness;  // (dilation, point)
};

// Verifies 1_{P(rel)} = 1_{P(M)} + 1_{P(N1)} - 1_{P(N2)} pointwise at lattice
// points of dilations t = 1..t_max, with N1, N2 built on the same ground set.
inline SubdivisionReport check_relaxation_subdivision(const Matroid& m, Mask f, long t_max = 3) {
    if (!is_stressed(m, f)) throw NotStressed();
    SubdivisionReport report;
    const int r = m.rank_of(f), k = m.rank(), n = m.n();
    if (cusp_size(r, popcount(f), k, n) == 0) {
        report.ok = true;
        report.degenerate = true;
        return report;
    }
    Matroid rel = relax(m, f);
    std::vector<Mask> n1b, n2b;
    for_each_subset_of_size(n, k, [&](Mask s) {
        int c = popcount(s & f);
        if (c >= r) n1b.push_back(s);
        if (c == r) n2b.push_back(s);
    });
    Matroid n1(n, k, std::move(n1b)), n2(n, k, std::move(n2b));
    HPolytope prel = base_polytope(rel), pm = base_polytope(m), p1 = base_polytope(n1),
              p2 = base_polytope(n2);
    report.ok = true;
    std::vector<int> y(static_cast<size_t>(n), 0);
    for (long t = 1; t <= t_max && report.ok; ++t) {
        const long target = t * k;
        std::function<void(int, long)> rec = [&](int pos, long acc) {
            if (!report.ok) return;
            if (pos == n) {
                if (acc != target) return;
                ++report.points_checked;
                int lhs = polytope_contains(prel, y, t) ? 1 : 0;
                int rhs = (polytope_contains(pm, y, t) ? 1 : 0) + (polytope_contains(p1, y, t) ? 1 : 0) -
                          (polytope_contains(p2, y, t) ? 1 : 0);
                if (lhs != rhs) {
                    report.ok = false;
                    report.witness = {t, y};
                }
                return;
            }
            long rest = static_cast<long>(n - pos - 1);
            for (long v = 0; v <= t; ++v) {
                if (acc + v > target) break;
                if (acc + v + t * rest < target) continue;
                y[static_cast<size_t>(pos)] = static_cast<int>(v);
                rec(pos + 1, acc + v);
            }
            y[static_cast<size_t>(pos)] = 0;
        };
        rec(0, 0);
    }
    return report;
}

// ---- lattice path splits ------------------------------------------------------

struct LpmSplit {
    LatticePathPair m1, m2, m3;  // M[L_p,U], M[L,U_p], M[L_p,U_p]
};

inline std::vector<std::pair<int, int>> lpm_interior_points(const LatticePathPair& p) {
    auto hl = LatticePathPair::heights(p.lower), hu = LatticePathPair::heights(p.upper);
    std::vector<std::pair<int, int>> pts;
    for (int s = 1; s < p.n(); ++s)
        for (int yy = hl[static_cast<size_t>(s)] + 1; yy < hu[static_cast<size_t>(s)]; ++yy)
            pts.emplace_back(s - yy, yy);  // (x, y) with x + y = s
    return pts;
}

inline LpmSplit lpm_split(const LatticePathPair& p, int x, int y) {
    const int n = p.n(), s = x + y;
    auto hl = LatticePathPair::heights(p.lower), hu = LatticePathPair::heights(p.upper);
    if (s <= 0 || s >= n || y <= hl[static_cast<size_t>(s)] || y >= hu[static_cast<size_t>(s)])
        throw std::invalid_argument("lpm_split: point not strictly between the paths");
    auto path_from_heights = [](const std::vector<int>& h) {
        std::string steps;
        for (size_t i = 1; i < h.size(); ++i) steps.push_back(h[i] > h[i - 1] ? 'N' : 'E');
        return steps;
    };
    std::vector<int> lp(hl.size()), up(hu.size());
    for (int m = 0; m <= n; ++m) {
        long mlong = m;
        lp[static_cast<size_t>(m)] =
            std::max<long>(hl[static_cast<size_t>(m)], m <= s ? y - (s - mlong) : y);
        up[static_cast<size_t>(m)] =
            std::min<long>(hu[static_cast<size_t>(m)], m <= s ? y : y + (mlong - s));
    }
    LatticePathPair low_p(path_from_heights(lp), p.upper);
    LatticePathPair up_p(p.lower, path_from_heights(up));
    LatticePathPair both(path_from_heights(lp), path_from_heights(up));
    return LpmSplit{low_p, up_p, both};
}

}  // namespace matval
