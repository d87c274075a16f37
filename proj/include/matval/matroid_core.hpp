#pragma once

// Matroids with explicit basis families on ground sets {0,...,n-1}, n <= 64.
// All structure queries (rank, duality, minors, flats, cyclic flats, Mobius)
// live here. Matroids are immutable after construction; lazily built caches
// (rank table, flats lattice) are guarded by once_flags so concurrent readers
// see either an absent or a fully built cache.

#include <matval/exactalg.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace matval {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1; }
inline Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(std::initializer_list<int> elems) {
    Mask m = 0;
    for (int e : elems) m |= bit(e);
    return m;
}

// next k-subset in colex order (Gosper's hack)
inline Mask next_subset_same_popcount(Mask v) {
    Mask c = v & -v, r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

template <typename F>
inline void for_each_subset_of_size(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    if (k == 0) { f(Mask{0}); return; }
    Mask v = full_mask(k), last = full_mask(n);
    while (true) {
        f(v);
        if (k == n) break;
        Mask nv = next_subset_same_popcount(v);
        if (nv > last) break;
        v = nv;
    }
}

struct ExchangeViolation : std::runtime_error {
    Mask basis1, basis2;
    int element;
    ExchangeViolation(Mask b1, Mask b2, int e)
        : std::runtime_error("basis exchange property violated"), basis1(b1), basis2(b2), element(e) {}
};

class FlatsLattice;

namespace detail {
struct MatroidCache;
}

class Matroid {
public:
    Matroid() = default;
    Matroid(int n, int k, std::vector<Mask> bases);

    int n() const { return n_; }
    int rank() const { return k_; }
    int corank() const { return n_ - k_; }
    const std::vector<Mask>& bases() const { return bases_; }
    Mask ground() const { return full_mask(n_); }

    bool is_basis(Mask b) const { return std::binary_search(bases_.begin(), bases_.end(), b); }

    int rank_of(Mask a) const;
    const std::vector<std::uint8_t>& rank_table() const;  // all 2^n ranks, n <= 24

    const FlatsLattice& flats() const;

    friend bool operator==(const Matroid& a, const Matroid& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.bases_ == b.bases_;
    }
    friend bool operator!=(const Matroid& a, const Matroid& b) { return !(a == b); }

    std::string cache_key() const;  // canonical encoding, usable as memo key

private:
    int n_ = 0, k_ = 0;
    std::vector<Mask> bases_;
    std::shared_ptr<detail::MatroidCache> cache_;
};

namespace detail {
struct MatroidCache {
    std::once_flag rank_once;
    std::vector<std::uint8_t> rank_table;
    std::once_flag flats_once;
    std::shared_ptr<const FlatsLattice> flats;
};
}  // namespace detail

inline Matroid::Matroid(int n, int k, std::vector<Mask> bases)
    : n_(n), k_(k), bases_(std::move(bases)), cache_(std::make_shared<detail::MatroidCache>()) {
    if (n < 0 || n > 64) throw std::invalid_argument("Matroid: ground set size out of range");
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    if (bases_.empty()) throw std::invalid_argument("Matroid: empty basis family");
    for (Mask b : bases_) {
        if (b & ~ground()) throw std::invalid_argument("Matroid: basis outside ground set");
        if (popcount(b) != k_) throw std::invalid_argument("Matroid: basis of wrong size");
    }
}

inline int Matroid::rank_of(Mask a) const {
    if (n_ <= 24) {
        const auto& tbl = rank_table();
        return tbl[a];
    }
    int best = 0;
    for (Mask b : bases_) best = std::max(best, popcount(b & a));
    return best;
}

inline const std::vector<std::uint8_t>& Matroid::rank_table() const {
    std::call_once(cache_->rank_once, [this] {
        if (n_ > 24) throw std::logic_error("rank_table: ground set too large");
        const size_t sz = size_t{1} << n_;
        // mark independent sets (subsets of bases), then rank by removing elements
        std::vector<std::uint8_t> indep(sz, 0);
        for (Mask b : bases_) {
            Mask sub = b;
            while (true) {
                indep[sub] = 1;
                if (sub == 0) break;
                sub = (sub - 1) & b;
            }
        }
        std::vector<std::uint8_t> rk(sz, 0);
        for (Mask s = 1; s < sz; ++s) {
            if (indep[s]) {
                rk[s] = static_cast<std::uint8_t>(popcount(s));
            } else {
                std::uint8_t best = 0;
                Mask rest = s;
                while (rest) {
                    int e = std::countr_zero(rest);
                    rest &= rest - 1;
                    best = std::max(best, rk[s & ~bit(e)]);
                }
                rk[s] = best;
            }
        }
        cache_->rank_table = std::move(rk);
    });
    return cache_->rank_table;
}

inline std::string Matroid::cache_key() const {
    std::string s;
    s.reserve(16 + bases_.size() * 8);
    auto push64 = [&s](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    push64(static_cast<std::uint64_t>(n_));
    push64(static_cast<std::uint64_t>(k_));
    for (Mask b : bases_) push64(b);
    return s;
}

// ---- constructors ----------------------------------------------------------

// Validates the exchange axiom; throws ExchangeViolation with a witness pair.
inline Matroid from_bases(int n, std::vector<Mask> masks) {
    const int k = masks.empty() ? 0 : popcount(masks.front());
    Matroid m(n, k, std::move(masks));
    const auto& bs = m.bases();
    for (Mask b1 : bs)
        for (Mask b2 : bs) {
            if (b1 == b2) continue;
            Mask out = b1 & ~b2;
            Mask rest = out;
            while (rest) {
                int a = std::countr_zero(rest);
                rest &= rest - 1;
                bool found = false;
                Mask in = b2 & ~b1;
                while (in) {
                    int b = std::countr_zero(in);
                    in &= in - 1;
                    if (m.is_basis((b1 & ~bit(a)) | bit(b))) { found = true; break; }
                }
                if (!found) throw ExchangeViolation(b1, b2, a);
            }
        }
    return m;
}

inline Matroid uniform(int k, int n) {
    if (k < 0 || k > n) throw std::invalid_argument("uniform: need 0 <= k <= n");
    std::vector<Mask> bs;
    for_each_subset_of_size(n, k, [&](Mask s) { bs.push_back(s); });
    return Matroid(n, k, std::move(bs));
}

inline bool is_uniform(const Matroid& m) {
    return Int(static_cast<long>(m.bases().size())) == binom(m.n(), m.rank());
}

inline Matroid direct_sum(const Matroid& m1, const Matroid& m2) {
    std::vector<Mask> bs;
    bs.reserve(m1.bases().size() * m2.bases().size());
    for (Mask b1 : m1.bases())
        for (Mask b2 : m2.bases()) bs.push_back(b1 | (b2 << m1.n()));
    return Matroid(m1.n() + m2.n(), m1.rank() + m2.rank(), std::move(bs));
}

inline int rank(const Matroid& m, Mask a) {
    if (a & ~m.ground()) throw std::invalid_argument("rank: subset outside ground set");
    return m.rank_of(a);
}

inline Matroid dual(const Matroid& m) {
    std::vector<Mask> bs;
    bs.reserve(m.bases().size());
    for (Mask b : m.bases()) bs.push_back(m.ground() & ~b);
    return Matroid(m.n(), m.n() - m.rank(), std::move(bs));
}

// ground set A compressed to {0,...,|A|-1} preserving order
inline Mask compress_mask(Mask s, Mask a) {
    Mask out = 0;
    int idx = 0;
    Mask rest = a;
    while (rest) {
        int e = std::countr_zero(rest);
        rest &= rest - 1;
        if (has_bit(s, e)) out |= bit(idx);
        ++idx;
    }
    return out;
}

inline Matroid restrict_to(const Matroid& m, Mask a) {
    if (a & ~m.ground()) throw std::invalid_argument("restrict_to: subset outside ground set");
    int r = m.rank_of(a);
    std::vector<Mask> bs;
    for (Mask b : m.bases())
        if (popcount(b & a) == r) bs.push_back(compress_mask(b & a, a));
    return Matroid(popcount(a), r, std::move(bs));
}

inline Matroid contract(const Matroid& m, Mask a) {
    if (a & ~m.ground()) throw std::invalid_argument("contract: subset outside ground set");
    int r = m.rank_of(a);
    Mask rest = m.ground() & ~a;
    std::vector<Mask> bs;
    for (Mask b : m.bases())
        if (popcount(b & a) == r) bs.push_back(compress_mask(b & rest, rest));
    return Matroid(popcount(rest), m.rank() - r, std::move(bs));
}

inline Matroid truncate(const Matroid& m, int j) {
    if (j < 0 || j > m.rank()) throw std::invalid_argument("truncate: need 0 <= j <= rank");
    if (j == 0) return m;
    int kk = m.rank() - j;
    std::vector<Mask> bs;
    for (Mask b : m.bases()) {
        std::vector<int> elems = mask_elements(b);
        for_each_subset_of_size(static_cast<int>(elems.size()), kk, [&](Mask pick) {
            Mask s = 0;
            for (int i : mask_elements(pick)) s |= bit(elems[static_cast<size_t>(i)]);
            bs.push_back(s);
        });
    }
    return Matroid(m.n(), kk, std::move(bs));
}

inline Mask loops(const Matroid& m) {
    Mask used = 0;
    for (Mask b : m.bases()) used |= b;
    return m.ground() & ~used;
}

inline Mask coloops(const Matroid& m) {
    Mask common = m.ground();
    for (Mask b : m.bases()) common &= b;
    return common;
}

inline Matroid simplify(const Matroid& m) {
    Mask lp = loops(m);
    std::vector<int> rep;  // smallest representative per parallel class
    for (int e = 0; e < m.n(); ++e) {
        if (has_bit(lp, e)) continue;
        bool fresh = true;
        for (int f : rep)
            if (m.rank_of(bit(e) | bit(f)) == 1) { fresh = false; break; }
        if (fresh) rep.push_back(e);
    }
    Mask keep = 0;
    for (int e : rep) keep |= bit(e);
    // every basis misses loops and meets each parallel class at most once,
    // so projecting onto representatives keeps sizes intact
    std::vector<Mask> bs;
    for (Mask b : m.bases()) {
        Mask img = 0;
        Mask rest = b;
        while (rest) {
            int e = std::countr_zero(rest);
            rest &= rest - 1;
            for (int f : rep)
                if (f == e || m.rank_of(bit(e) | bit(f)) == 1) { img |= bit(f); break; }
        }
        bs.push_back(compress_mask(img, keep));
    }
    return Matroid(static_cast<int>(rep.size()), m.rank(), std::move(bs));
}

// components via the common-circuit relation: e~f iff some basis exchange
// swaps them, i.e. they lie in a common (fundamental) circuit
inline std::vector<Mask> components(const Matroid& m) {
    std::vector<int> parent(static_cast<size_t>(m.n()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (Mask b : m.bases()) {
        Mask out = b;
        while (out) {
            int e = std::countr_zero(out);
            out &= out - 1;
            Mask in = m.ground() & ~b;
            while (in) {
                int f = std::countr_zero(in);
                in &= in - 1;
                if (m.is_basis((b & ~bit(e)) | bit(f))) unite(e, f);
            }
        }
    }
    std::map<int, Mask> comps;
    for (int e = 0; e < m.n(); ++e) comps[find(e)] |= bit(e);
    std::vector<Mask> out;
    for (auto& [r, msk] : comps) out.push_back(msk);
    return out;
}

inline bool is_connected(const Matroid& m) { return components(m).size() <= 1; }

// ---- flats -----------------------------------------------------------------

inline Mask closure(const Matroid& m, Mask a) {
    int r = m.rank_of(a);
    Mask cl = a;
    for (int e = 0; e < m.n(); ++e)
        if (!has_bit(a, e) && m.rank_of(a | bit(e)) == r) cl |= bit(e);
    return cl;
}

class FlatsLattice {
public:
    explicit FlatsLattice(const Matroid& m) : n_(m.n()) {
        // BFS upward from the bottom flat
        std::map<Mask, int> seen;
        std::vector<Mask> queue = {closure(m, 0)};
        seen[queue[0]] = m.rank_of(queue[0]);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Mask f = queue[qi];
            for (int e = 0; e < n_; ++e) {
                if (has_bit(f, e)) continue;
                Mask g = closure(m, f | bit(e));
                if (!seen.count(g)) {
                    seen[g] = m.rank_of(g);
                    queue.push_back(g);
                }
            }
        }
        for (auto& [f, r] : seen) flats_.push_back(f), ranks_.push_back(r);
        order_by_rank();
        for (size_t i = 0; i < flats_.size(); ++i) index_[flats_[i]] = static_cast<int>(i);
        build_covers();
    }

    int size() const { return static_cast<int>(flats_.size()); }
    const std::vector<Mask>& flats() const { return flats_; }
    int rank_of(int idx) const { return ranks_[static_cast<size_t>(idx)]; }
    Mask flat(int idx) const { return flats_[static_cast<size_t>(idx)]; }
    int top() const { return size() - 1; }
    int bottom() const { return 0; }

    bool is_flat(Mask f) const { return index_.count(f) > 0; }
    int index_of(Mask f) const {
        auto it = index_.find(f);
        if (it == index_.end()) throw std::invalid_argument("FlatsLattice: not a flat");
        return it->second;
    }

    bool leq(int x, int y) const { return (flats_[static_cast<size_t>(x)] & ~flats_[static_cast<size_t>(y)]) == 0; }
    const std::vector<int>& upper_covers(int idx) const { return covers_[static_cast<size_t>(idx)]; }

    // Mobius function of the lattice; 0 on incomparable pairs
    Int mobius(int x, int y) const {
        if (x == y) return 1;
        if (!leq(x, y)) return 0;
        std::lock_guard<std::mutex> lock(mu_mutex_);
        return mobius_locked(x, y);
    }

private:
    void order_by_rank() {
        std::vector<size_t> idx(flats_.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            if (ranks_[a] != ranks_[b]) return ranks_[a] < ranks_[b];
            return flats_[a] < flats_[b];
        });
        std::vector<Mask> f2(flats_.size());
        std::vector<int> r2(flats_.size());
        for (size_t i = 0; i < idx.size(); ++i) f2[i] = flats_[idx[i]], r2[i] = ranks_[idx[i]];
        flats_ = std::move(f2);
        ranks_ = std::move(r2);
    }

    void build_covers() {
        covers_.assign(flats_.size(), {});
        for (size_t i = 0; i < flats_.size(); ++i)
            for (size_t j = 0; j < flats_.size(); ++j) {
                if (i == j || ranks_[j] != ranks_[i] + 1) continue;
                if ((flats_[i] & ~flats_[j]) == 0) covers_[i].push_back(static_cast<int>(j));
            }
    }

    Int mobius_locked(int x, int y) const {
        if (x == y) return 1;
        if (!leq(x, y)) return 0;
        auto key = std::make_pair(x, y);
        auto it = mu_memo_.find(key);
        if (it != mu_memo_.end()) return it->second;
        Int acc = 0;
        for (int z = 0; z < size(); ++z)
            if (z != y && leq(x, z) && leq(z, y)) acc += mobius_locked(x, z);
        Int val = -acc;
        mu_memo_.emplace(key, val);
        return val;
    }

    int n_;
    std::vector<Mask> flats_;
    std::vector<int> ranks_;
    std::vector<std::vector<int>> covers_;
    std::unordered_map<Mask, int> index_;
    mutable std::mutex mu_mutex_;
    mutable std::map<std::pair<int, int>, Int> mu_memo_;
};

inline const FlatsLattice& Matroid::flats() const {
    std::call_once(cache_->flats_once, [this] { cache_->flats = std::make_shared<FlatsLattice>(*this); });
    return *cache_->flats;
}

inline const FlatsLattice& flats(const Matroid& m) { return m.flats(); }

inline Int mobius(const FlatsLattice& lat, int x, int y) { return lat.mobius(x, y); }

// flats F whose restriction is coloop-free
struct CyclicFlatsLattice {
    std::vector<Mask> flats;  // sorted by (popcount, mask); includes bottom/top of Z
    std::vector<int> ranks;
};

inline bool is_cyclic_set(const Matroid& m, Mask f) {
    int r = m.rank_of(f);
    Mask rest = f;
    while (rest) {
        int e = std::countr_zero(rest);
        rest &= rest - 1;
        if (m.rank_of(f & ~bit(e)) < r) return false;
    }
    return true;
}

inline CyclicFlatsLattice cyclic_flats(const Matroid& m) {
    CyclicFlatsLattice out;
    const auto& lat = m.flats();
    for (int i = 0; i < lat.size(); ++i) {
        Mask f = lat.flat(i);
        if (is_cyclic_set(m, f)) {
            out.flats.push_back(f);
            out.ranks.push_back(lat.rank_of(i));
        }
    }
    std::vector<size_t> idx(out.flats.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        int pa = popcount(out.flats[a]), pb = popcount(out.flats[b]);
        if (pa != pb) return pa < pb;
        return out.flats[a] < out.flats[b];
    });
    CyclicFlatsLattice sorted;
    for (size_t i : idx) sorted.flats.push_back(out.flats[i]), sorted.ranks.push_back(out.ranks[i]);
    return sorted;
}

// proper cyclic flats: neither the bottom nor the top of Z(M)
inline std::vector<std::pair<Mask, int>> proper_cyclic_flats(const Matroid& m) {
    auto z = cyclic_flats(m);
    Mask lp = loops(m), top = m.ground() & ~coloops(m);
    std::vector<std::pair<Mask, int>> out;
    for (size_t i = 0; i < z.flats.size(); ++i)
        if (z.flats[i] != lp && z.flats[i] != top) out.emplace_back(z.flats[i], z.ranks[i]);
    return out;
}

// ---- lattice path matroids --------------------------------------------------

struct LatticePathPair {
    std::string lower, upper;  // step strings over {N,E}

    LatticePathPair(std::string l, std::string u) : lower(std::move(l)), upper(std::move(u)) {
        validate();
    }

    int n() const { return static_cast<int>(lower.size()); }
    int k() const { return static_cast<int>(std::count(lower.begin(), lower.end(), 'N')); }

    // heights[m] = number of N steps among the first m
    static std::vector<int> heights(const std::string& path) {
        std::vector<int> h(path.size() + 1, 0);
        for (size_t i = 0; i < path.size(); ++i) h[i + 1] = h[i] + (path[i] == 'N' ? 1 : 0);
        return h;
    }

    bool strictly_below() const {
        auto hl = heights(lower), hu = heights(upper);
        for (int m = 1; m < n(); ++m)
            if (hl[static_cast<size_t>(m)] >= hu[static_cast<size_t>(m)]) return false;
        return n() > 0;
    }

private:
    void validate() const {
        if (lower.size() != upper.size()) throw std::invalid_argument("lattice paths: unequal lengths");
        for (char c : lower + upper)
            if (c != 'N' && c != 'E') throw std::invalid_argument("lattice paths: steps must be N or E");
        auto hl = heights(lower), hu = heights(upper);
        if (hl.back() != hu.back()) throw std::invalid_argument("lattice paths: unequal N-counts");
        for (size_t m = 0; m < hl.size(); ++m)
            if (hl[m] > hu[m]) throw std::invalid_argument("lattice paths: lower path not below upper");
    }
};

inline Matroid lattice_path_matroid(const LatticePathPair& p) {
    const int n = p.n(), k = p.k();
    auto hl = LatticePathPair::heights(p.lower), hu = LatticePathPair::heights(p.upper);
    std::vector<Mask> bs;
    // enumerate monotone height profiles between hl and hu
    std::vector<std::pair<Mask, int>> frontier = {{Mask{0}, 0}};
    for (int m = 0; m < n; ++m) {
        std::vector<std::pair<Mask, int>> next;
        for (auto [mask, h] : frontier) {
            // step E
            if (h >= hl[static_cast<size_t>(m + 1)]) next.emplace_back(mask, h);
            // step N
            if (h + 1 <= hu[static_cast<size_t>(m + 1)]) next.emplace_back(mask | bit(m), h + 1);
        }
        frontier = std::move(next);
    }
    for (auto& [mask, h] : frontier)
        if (h == k) bs.push_back(mask);
    return Matroid(n, k, std::move(bs));
}

inline Matroid lattice_path_matroid(const std::string& lower, const std::string& upper) {
    return lattice_path_matroid(LatticePathPair(lower, upper));
}

inline Matroid schubert(const std::string& upper) {
    int n = static_cast<int>(upper.size());
    int k = static_cast<int>(std::count(upper.begin(), upper.end(), 'N'));
    std::string lower = std::string(static_cast<size_t>(n - k), 'E') + std::string(static_cast<size_t>(k), 'N');
    return lattice_path_matroid(lower, upper);
}

// relabel the ground set by a permutation: element e becomes perm[e]
inline Matroid relabel(const Matroid& m, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != m.n()) throw std::invalid_argument("relabel: wrong permutation size");
    std::vector<Mask> bs;
    bs.reserve(m.bases().size());
    for (Mask b : m.bases()) {
        Mask img = 0;
        for (int e : mask_elements(b)) img |= bit(perm[static_cast<size_t>(e)]);
        bs.push_back(img);
    }
    return Matroid(m.n(), m.rank(), std::move(bs));
}

// graphic matroid of two cycles of lengths a and b glued along a common edge;
// edges 1..a on the first cycle and a..a+b-1 on the second (1-based), 0-based here
inline Matroid graphic_two_cycles(int a, int b) {
    if (a < 2 || b < 2) throw std::invalid_argument("graphic_two_cycles: need a,b >= 2");
    const int n = a + b - 1, k = a + b - 3;
    const Mask circA = full_mask(a);
    const Mask circB = full_mask(n) & ~full_mask(a - 1);
    const Mask circC = full_mask(n) & ~bit(a - 1);
    std::vector<Mask> bs;
    for_each_subset_of_size(n, k, [&](Mask s) {
        if ((circA & ~s) == 0 || (circB & ~s) == 0 || (circC & ~s) == 0) return;
        bs.push_back(s);
    });
    return Matroid(n, k, std::move(bs));
}

}  // namespace matval
