#pragma once

// Cusps, stressed subsets, the relaxation operation, cuspidal matroids and
// the elementary-split classification that produces the lambda_{r,h} profile
// consumed by the master formula.

#include <matval/matroid_core.hpp>

#include <map>
#include <optional>
#include <variant>

namespace matval {

struct NotStressed : std::runtime_error {
    NotStressed() : std::runtime_error("relax: subset is not stressed") {}
};

// all rank-sized subsets meeting A in more than rk(A) elements; disjoint from
// the bases by definition of rank
inline std::vector<Mask> cusp(const Matroid& m, Mask a) {
    if (a & ~m.ground()) throw std::invalid_argument("cusp: subset outside ground set");
    const int r = m.rank_of(a);
    std::vector<Mask> out;
    for_each_subset_of_size(m.n(), m.rank(), [&](Mask s) {
        if (popcount(s & a) >= r + 1) out.push_back(s);
    });
    return out;
}

inline Int cusp_size(int r, int h, int k, int n) {
    Int total = 0;
    for (int i = r + 1; i <= k; ++i) total += binom(h, i) * binom(n - h, k - i);
    return total;
}

inline bool is_stressed(const Matroid& m, Mask a) {
    return is_uniform(restrict_to(m, a)) && is_uniform(contract(m, a));
}

// For loopless and coloopless matroids these are exactly the proper cyclic
// flats covering the bottom and covered by the top of Z(M); filtering all
// cyclic flats directly also covers the loopy/coloopy degenerate shapes,
// where the bottom (loop set) or top of Z can itself be relaxable.
inline std::vector<Mask> stressed_with_nonempty_cusp(const Matroid& m) {
    std::vector<Mask> out;
    auto z = cyclic_flats(m);
    for (Mask f : z.flats)
        if (cusp_size(m.rank_of(f), popcount(f), m.rank(), m.n()) > 0 && is_stressed(m, f))
            out.push_back(f);
    return out;
}

inline Matroid relax(const Matroid& m, Mask a) {
    if (!is_stressed(m, a)) throw NotStressed();
    std::vector<Mask> bs = m.bases();
    auto extra = cusp(m, a);
    bs.insert(bs.end(), extra.begin(), extra.end());
    return from_bases(m.n(), std::move(bs));  // re-validates the exchange axiom
}

// ---- cuspidal matroids -------------------------------------------------------

struct CuspidalParams {
    int r, k, h, n;
    bool valid() const { return 0 <= r && r <= h && 0 <= k - r && k - r <= n - h; }
};

// Lambda_{r,k,h,n}: bases are the k-subsets meeting the last h elements in at
// least r points. Degenerate parameters fall back to the direct sum itself.
inline Matroid cuspidal(const CuspidalParams& p) {
    if (!p.valid()) throw std::invalid_argument("cuspidal: invalid parameters");
    const Mask f = full_mask(p.n) & ~full_mask(p.n - p.h);
    std::vector<Mask> bs;
    for_each_subset_of_size(p.n, p.k, [&](Mask s) {
        if (popcount(s & f) >= p.r) bs.push_back(s);
    });
    return Matroid(p.n, p.k, std::move(bs));
}

inline Matroid cuspidal(int r, int k, int h, int n) { return cuspidal(CuspidalParams{r, k, h, n}); }

// minimal matroid T_{k,n} = Lambda_{k-1,k,k,n}
inline Matroid minimal_matroid(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("minimal_matroid: need 1 <= k <= n");
    return cuspidal(k - 1, k, k, n);
}

// ---- profiles and classification --------------------------------------------

struct StressedProfile {
    std::map<std::pair<int, int>, long> lambda;  // (rank, size) -> count

    void add(int r, int h, long count = 1) {
        if (count == 0) return;
        lambda[{r, h}] += count;
    }
    bool empty() const { return lambda.empty(); }
    long total() const {
        long t = 0;
        for (const auto& [rh, c] : lambda) t += c;
        return t;
    }
    friend bool operator==(const StressedProfile& a, const StressedProfile& b) {
        return a.lambda == b.lambda;
    }
};

struct ClassifyUniform {};
struct ClassifyElementarySplit {
    StressedProfile profile;
};
struct ClassifyNotElementarySplit {
    Mask witness_flat1 = 0, witness_flat2 = 0;  // a comparable pair of proper cyclic flats
};
using SplitClass = std::variant<ClassifyUniform, ClassifyElementarySplit, ClassifyNotElementarySplit>;

inline bool is_elementary_split(const SplitClass& c) {
    return !std::holds_alternative<ClassifyNotElementarySplit>(c);
}

inline const StressedProfile* profile_of(const SplitClass& c) {
    if (auto* es = std::get_if<ClassifyElementarySplit>(&c)) return &es->profile;
    return nullptr;
}

// Relax every stressed subset with non-empty cusp found on the original
// matroid; elementary split iff the terminal matroid is uniform. The
// incomparability criterion on proper cyclic flats is used as a cross-check
// and supplies the witness.
inline SplitClass classify_split(const Matroid& m) {
    if (is_uniform(m)) return ClassifyUniform{};

    Mask lp = loops(m), cl = coloops(m);
    if (lp || cl) {
        // loopy/coloopy elementary split matroids are U_{a,b} + U_{0,c} / U_{c,c}
        Mask rest = m.ground() & ~(lp | cl);
        bool degenerate_ok = (lp == 0 || cl == 0) ? is_uniform(restrict_to(m, rest)) : rest == 0;
        if (!degenerate_ok) {
            // witness: a comparable pair exists through the loop set or inside the rest
            auto zs = proper_cyclic_flats(m);
            for (size_t i = 0; i < zs.size(); ++i)
                for (size_t j = 0; j < zs.size(); ++j)
                    if (i != j && (zs[i].first & ~zs[j].first) == 0)
                        return ClassifyNotElementarySplit{zs[i].first, zs[j].first};
            return ClassifyNotElementarySplit{};
        }
    } else {
        auto zs = proper_cyclic_flats(m);
        for (size_t i = 0; i < zs.size(); ++i)
            for (size_t j = 0; j < zs.size(); ++j)
                if (i != j && (zs[i].first & ~zs[j].first) == 0)
                    return ClassifyNotElementarySplit{zs[i].first, zs[j].first};
    }

    auto stressed = stressed_with_nonempty_cusp(m);
    StressedProfile profile;
    Matroid cur = m;
    for (Mask f : stressed) {
        if (!is_stressed(cur, f)) throw std::logic_error("classify_split: flat stopped being stressed");
        profile.add(m.rank_of(f), popcount(f));
        cur = relax(cur, f);
    }
    if (!is_uniform(cur)) {
        auto zs = proper_cyclic_flats(m);
        for (size_t i = 0; i < zs.size(); ++i)
            for (size_t j = 0; j < zs.size(); ++j)
                if (i != j && (zs[i].first & ~zs[j].first) == 0)
                    return ClassifyNotElementarySplit{zs[i].first, zs[j].first};
        return ClassifyNotElementarySplit{};
    }
    return ClassifyElementarySplit{std::move(profile)};
}

// ---- Graham--Sloane sparse paving construction -------------------------------

// circuit-hyperplanes = all k-subsets with element sum == residue (mod n);
// pairwise symmetric differences are >= 4, so the rest is a matroid.
// residue < 0 picks the largest class.
inline Matroid graham_sloane(int k, int n, int residue = -1) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("graham_sloane: need 1 <= k <= n-1");
    if (residue >= n) throw std::invalid_argument("graham_sloane: residue out of range");
    std::vector<std::vector<Mask>> classes(static_cast<size_t>(n));
    for_each_subset_of_size(n, k, [&](Mask s) {
        int sum = 0;
        for (int e : mask_elements(s)) sum += e;
        classes[static_cast<size_t>(sum % n)].push_back(s);
    });
    int best = residue;
    if (best < 0) {
        best = 0;
        for (int r = 1; r < n; ++r)
            if (classes[static_cast<size_t>(r)].size() > classes[static_cast<size_t>(best)].size()) best = r;
    }
    std::vector<Mask> bs;
    for (int r = 0; r < n; ++r) {
        if (r == best) continue;
        bs.insert(bs.end(), classes[static_cast<size_t>(r)].begin(), classes[static_cast<size_t>(r)].end());
    }
    if (bs.empty()) throw std::invalid_argument("graham_sloane: residue class contains every k-subset");
    return Matroid(n, k, std::move(bs));
}

inline std::vector<Mask> circuit_hyperplanes(const Matroid& m) {
    std::vector<Mask> out;
    for_each_subset_of_size(m.n(), m.rank(), [&](Mask s) {
        if (m.is_basis(s)) return;
        if (m.rank_of(s) == m.rank() - 1 && closure(m, s) == s && is_cyclic_set(m, s)) out.push_back(s);
    });
    return out;
}

inline bool is_paving(const Matroid& m) {
    // dependent sets have size >= rank, i.e. every (k-1)-subset is independent
    bool ok = true;
    for_each_subset_of_size(m.n(), m.rank() - 1, [&](Mask s) {
        if (m.rank_of(s) != popcount(s)) ok = false;
    });
    return ok;
}

inline bool is_sparse_paving(const Matroid& m) { return is_paving(m) && is_paving(dual(m)); }

// ---- bound checks ------------------------------------------------------------

// paving matroids: sum_h lambda_h C(h,k) <= (h_max-k+1)/(n-k+1) C(n,k)
inline bool paving_bound_check(const Matroid& m) {
    if (!is_paving(m)) throw std::invalid_argument("paving_bound_check: matroid is not paving");
    const int k = m.rank(), n = m.n();
    const auto& lat = m.flats();
    Int lhs = 0;
    long h_max = k;
    for (int i = 0; i < lat.size(); ++i) {
        if (lat.rank_of(i) != k - 1) continue;
        int h = popcount(lat.flat(i));
        if (h >= k) {
            lhs += binom(h, k);
            h_max = std::max<long>(h_max, h);
        }
    }
    return lhs * (n - k + 1) <= Int(h_max - k + 1) * binom(n, k);
}

// sparse paving matroids: lambda <= min{1/(k+1), 1/(n-k+1)} C(n,k)
inline bool sparse_bound_check(const Matroid& m) {
    if (!is_sparse_paving(m)) throw std::invalid_argument("sparse_bound_check: matroid is not sparse paving");
    const int k = m.rank(), n = m.n();
    Int lam = binom(n, k) - Int(static_cast<unsigned long>(m.bases().size()));
    long denom = std::max(k + 1, n - k + 1);
    return lam * denom <= binom(n, k);
}

// profiles must leave room for at least one basis
inline bool lambda_bound_check(const StressedProfile& profile, int k, int n) {
    Int total = 0;
    for (const auto& [rh, count] : profile.lambda) total += Int(count) * cusp_size(rh.first, rh.second, k, n);
    return total <= binom(n, k);
}

}  // namespace matval
