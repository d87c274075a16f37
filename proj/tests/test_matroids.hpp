#pragma once

// Shared fixtures for the test suites: small matroids with hand-checkable
// structure, plus a pool of random small matroids for property tests.

#include <matval/stressed.hpp>

#include <random>
#include <vector>

namespace matval::testing {

// Rank-3 matroid on 7 points with 4 long lines {1,2,3,4},{1,5,6},{3,6,7},{4,5,7}
// (1-based labels); X={3,6,7} is a circuit-hyperplane, Y={1,2,3,4} a stressed
// hyperplane.
inline Matroid make_o7() {
    std::vector<Mask> lines = {
        mask_of({0, 1, 2, 3}), mask_of({0, 4, 5}), mask_of({2, 5, 6}), mask_of({3, 4, 6})};
    std::vector<Mask> bs;
    for_each_subset_of_size(7, 3, [&](Mask s) {
        for (Mask line : lines)
            if ((s & ~line) == 0) return;
        bs.push_back(s);
    });
    return Matroid(7, 3, std::move(bs));
}

// The octahedron split of U_{2,4}: two pyramids and their common square.
inline Matroid make_oct_m1() {
    return Matroid(4, 2, {mask_of({0, 1}), mask_of({0, 2}), mask_of({0, 3}), mask_of({1, 2}), mask_of({1, 3})});
}
inline Matroid make_oct_m2() {
    return Matroid(4, 2, {mask_of({0, 2}), mask_of({0, 3}), mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})});
}
inline Matroid make_oct_m3() {
    return Matroid(4, 2, {mask_of({0, 2}), mask_of({0, 3}), mask_of({1, 2}), mask_of({1, 3})});
}

// Rank-3 matroids on 9 elements with equal spectrum polynomials but different
// Tutte polynomials. m1: triple point {1,8,9} on two 5-point lines
// {1,2,3,8,9} and {1,4,7,8,9}, plus lines {3,4,5},{2,4,6},{2,5,7},{3,6,7}.
// m2: 5-point line {1,...,5}, free point 6, triple point {7,8,9}.
inline Matroid make_fig10_m1() {
    // simple quotient on points {A,2,3,4,5,6,7}; A expands to {1,8,9}
    std::vector<std::vector<int>> lines = {{0, 1, 2}, {0, 3, 6}, {2, 3, 4}, {1, 3, 5}, {1, 4, 6}, {2, 5, 6}};
    auto collinear = [&](int a, int b, int c) {
        for (auto& l : lines)
            if (std::count(l.begin(), l.end(), a) && std::count(l.begin(), l.end(), b) &&
                std::count(l.begin(), l.end(), c))
                return true;
        return false;
    };
    // ground set 0-based: element 0 -> 1, 1..6 -> points 2..7, 7 -> 8, 8 -> 9
    auto point_of = [](int e) { return (e == 0 || e == 7 || e == 8) ? 0 : e; };
    std::vector<Mask> bs;
    for_each_subset_of_size(9, 3, [&](Mask s) {
        auto e = mask_elements(s);
        int p0 = point_of(e[0]), p1 = point_of(e[1]), p2 = point_of(e[2]);
        if (p0 == p1 || p0 == p2 || p1 == p2) return;
        if (collinear(p0, p1, p2)) return;
        bs.push_back(s);
    });
    return Matroid(9, 3, std::move(bs));
}

inline Matroid make_fig10_m2() {
    const Mask line = mask_of({0, 1, 2, 3, 4});
    const Mask triple = mask_of({6, 7, 8});
    std::vector<Mask> bs;
    for_each_subset_of_size(9, 3, [&](Mask s) {
        if (popcount(s & triple) >= 2) return;
        if ((s & ~line) == 0) return;
        bs.push_back(s);
    });
    return Matroid(9, 3, std::move(bs));
}

// lattice path matroid of the relaxation example: rank 4 on 8 elements,
// F = {6,7,8} (1-based) is a stressed subset of rank 2
inline Matroid make_fig4_lpm() { return lattice_path_matroid("EEENNENN", "NNEENENE"); }

inline Matroid random_small_matroid(std::mt19937& rng, int max_n = 8) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> nn(2, max_n);
    int n = nn(rng);
    std::uniform_int_distribution<int> kk(0, n);
    switch (pick(rng)) {
        case 0:
            return uniform(kk(rng), n);
        case 1: {  // random lattice path matroid
            int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
            std::string steps(static_cast<size_t>(n), 'E');
            for (int i = 0; i < k; ++i) steps[static_cast<size_t>(i)] = 'N';
            std::string up = steps, lo = steps;
            std::shuffle(up.begin(), up.end(), rng);
            std::shuffle(lo.begin(), lo.end(), rng);
            auto hu = LatticePathPair::heights(up), hl = LatticePathPair::heights(lo);
            for (size_t i = 0; i < hu.size(); ++i)
                if (hl[i] > hu[i]) std::swap(lo, up), i = hu.size();
            try {
                return lattice_path_matroid(lo, up);
            } catch (const std::invalid_argument&) {
                return uniform(k, n);  // paths crossed; fall back
            }
        }
        case 2: {  // direct sum of two uniforms
            int n1 = std::uniform_int_distribution<int>(1, n - 1)(rng);
            int k1 = std::uniform_int_distribution<int>(0, n1)(rng);
            int k2 = std::uniform_int_distribution<int>(0, n - n1)(rng);
            return direct_sum(uniform(k1, n1), uniform(k2, n - n1));
        }
        default: {  // sparse paving: uniform minus a greedy stable set of k-sets
            int k = std::uniform_int_distribution<int>(1, std::max(1, n - 1))(rng);
            std::vector<Mask> all;
            for_each_subset_of_size(n, k, [&](Mask s) { all.push_back(s); });
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<Mask> removed;
            for (Mask s : all) {
                bool ok = true;
                for (Mask t : removed)
                    if (popcount(s ^ t) < 4) { ok = false; break; }
                if (ok) {
                    removed.push_back(s);
                    if (removed.size() >= all.size() / 4) break;
                }
            }
            std::vector<Mask> bs;
            for (Mask s : all)
                if (std::find(removed.begin(), removed.end(), s) == removed.end()) bs.push_back(s);
            if (bs.empty()) return uniform(k, n);
            return Matroid(n, k, std::move(bs));
        }
    }
}

// Build a random elementary split matroid directly from an antichain of
// prescribed cyclic flats: pick pairwise incomparable (F_i, r_i) subject to
// (Z2) against bottom/top and (Z3) across pairs, then keep the k-subsets
// meeting every F_i in at most r_i elements.
inline Matroid random_elementary_split(std::mt19937& rng, int max_n = 8) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int n = std::uniform_int_distribution<int>(4, max_n)(rng);
        int k = std::uniform_int_distribution<int>(2, n - 2)(rng);
        int want = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<std::pair<Mask, int>> flats;
        std::uniform_int_distribution<Mask> pick(1, full_mask(n) - 1);
        for (int tries = 0; tries < 40 && static_cast<int>(flats.size()) < want; ++tries) {
            Mask f = pick(rng) & full_mask(n);
            int h = popcount(f);
            if (h < 2 || h > n - 1) continue;
            int rlo = std::max(1, k - (n - h) + 1), rhi = std::min(h - 1, k - 1);
            if (rlo > rhi) continue;
            int r = std::uniform_int_distribution<int>(rlo, rhi)(rng);
            bool ok = true;
            for (const auto& [g, rg] : flats) {
                if ((f & ~g) == 0 || (g & ~f) == 0) { ok = false; break; }          // comparable
                if (r + rg < k + popcount(f & g)) { ok = false; break; }            // (Z3)
            }
            if (ok) flats.emplace_back(f, r);
        }
        if (flats.empty()) continue;
        std::vector<Mask> bs;
        for_each_subset_of_size(n, k, [&](Mask s) {
            for (const auto& [f, r] : flats)
                if (popcount(s & f) > r) return;
            bs.push_back(s);
        });
        if (bs.empty()) continue;
        Matroid m(n, k, std::move(bs));
        auto cls = classify_split(m);
        if (is_elementary_split(cls) && !std::holds_alternative<ClassifyUniform>(cls)) return m;
    }
    return graham_sloane(2, 5);
}

inline StressedProfile profile_of_or_throw(const Matroid& m) {
    auto cls = classify_split(m);
    if (auto* es = std::get_if<ClassifyElementarySplit>(&cls)) return es->profile;
    if (std::holds_alternative<ClassifyUniform>(cls)) return StressedProfile{};
    throw std::runtime_error("matroid is not elementary split");
}

}  // namespace matval::testing
