#pragma once

// Definition-level brute-force evaluators for small matroids: the ground
// truth every closed form and the master formula are validated against.

#include <matval/polytope.hpp>

#include <functional>
#include <unordered_map>

namespace matval {

// ---- subset-sum invariants ----------------------------------------------------

inline BiPoly tutte_oracle(const Matroid& m) {
    const int n = m.n(), k = m.rank();
    const auto& rk = m.rank_table();
    // count subsets by (corank, nullity), then expand (x-1)^i (y-1)^j
    std::vector<std::vector<Int>> cnt(static_cast<size_t>(k) + 1,
                                      std::vector<Int>(static_cast<size_t>(n - k) + 1, Int(0)));
    for (Mask a = 0; a <= m.ground(); ++a) {
        int r = rk[a];
        ++cnt[static_cast<size_t>(k - r)][static_cast<size_t>(popcount(a) - r)];
        if (a == m.ground()) break;
    }
    BiPoly out;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= n - k; ++j) {
            if (cnt[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
            Rat c(cnt[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            for (int a = 0; a <= i; ++a)
                for (int b = 0; b <= j; ++b) {
                    Int sign = ((i - a + j - b) % 2 == 0) ? 1 : -1;
                    out.add(a, b, c * Rat(sign * binom(i, a) * binom(j, b)));
                }
        }
    return out;
}

inline UniPoly char_oracle(const Matroid& m) {
    const int k = m.rank();
    const auto& rk = m.rank_table();
    std::vector<Rat> coeffs(static_cast<size_t>(k) + 1, Rat(0));
    for (Mask a = 0; a <= m.ground(); ++a) {
        int sign = popcount(a) % 2 == 0 ? 1 : -1;
        coeffs[static_cast<size_t>(k - rk[a])] += sign;
        if (a == m.ground()) break;
    }
    return UniPoly(std::move(coeffs));
}

inline Int beta_oracle(const Matroid& m) {
    const auto& rk = m.rank_table();
    Int acc = 0;
    for (Mask a = 0; a <= m.ground(); ++a) {
        acc += (popcount(a) % 2 == 0 ? 1 : -1) * Int(rk[a]);
        if (a == m.ground()) break;
    }
    if (m.rank() % 2) acc = -acc;
    return acc;
}

// ---- lattice-of-flats invariants -----------------------------------------------

// rank generating function of the lattice of flats
inline UniPoly whitney_oracle(const Matroid& m) {
    const FlatsLattice& lat = m.flats();
    std::vector<Rat> coeffs(static_cast<size_t>(m.rank()) + 1, Rat(0));
    for (int i = 0; i < lat.size(); ++i) coeffs[static_cast<size_t>(lat.rank_of(i))] += 1;
    return UniPoly(std::move(coeffs));
}

// f-polynomial of the order complex of the proper part of L(M); zero for
// loopy or empty matroids
inline UniPoly chain_oracle(const Matroid& m) {
    if (m.n() == 0 || loops(m) != 0) return UniPoly();
    const FlatsLattice& lat = m.flats();
    const int d = m.rank() - 1;
    // chains[i] = number of chains of i proper flats
    std::vector<Int> chains(static_cast<size_t>(d) + 1, Int(0));
    chains[0] = 1;
    // count descending chains ending at each proper flat
    std::vector<std::vector<Int>> ending(static_cast<size_t>(lat.size()));
    for (int i = 0; i < lat.size(); ++i) {
        if (i == lat.bottom() || i == lat.top()) continue;
        std::vector<Int> cnt(static_cast<size_t>(d) + 1, Int(0));
        cnt[1] = 1;
        for (int j = 0; j < i; ++j) {
            if (j == lat.bottom() || ending[static_cast<size_t>(j)].empty()) continue;
            if (!lat.leq(j, i) || j == i) continue;
            const auto& prev = ending[static_cast<size_t>(j)];
            for (size_t len = 1; len + 1 < prev.size() + 1 && len + 1 <= static_cast<size_t>(d); ++len)
                cnt[len + 1] += prev[len];
        }
        for (size_t len = 1; len <= static_cast<size_t>(d); ++len) chains[len] += cnt[len];
        ending[static_cast<size_t>(i)] = std::move(cnt);
    }
    std::vector<Rat> coeffs(static_cast<size_t>(d) + 1, Rat(0));
    for (int i = 0; i <= d; ++i) coeffs[static_cast<size_t>(d - i)] = Rat(chains[static_cast<size_t>(i)]);
    return UniPoly(std::move(coeffs));
}

// Feichtner--Yuzvinsky chain expansion of Hilb(A(M), x); zero for loopy matroids
inline UniPoly hilb_chow_oracle(const Matroid& m) {
    if (loops(m) != 0) return UniPoly();
    if (m.n() == 0) return UniPoly(1L);
    const FlatsLattice& lat = m.flats();
    // gap factor x(1-x^{d-1})/(1-x) = x + ... + x^{d-1}
    auto gap = [](int d) {
        std::vector<Rat> c(static_cast<size_t>(std::max(d, 1)), Rat(0));
        for (int i = 1; i <= d - 1; ++i) c[static_cast<size_t>(i)] = 1;
        return UniPoly(std::move(c));
    };
    // g(F) = sum over chains starting at F of the gap products; chains may
    // end at any flat including E (rank-1 gaps contribute a zero factor)
    std::vector<UniPoly> g(static_cast<size_t>(lat.size()));
    for (int i = lat.size() - 1; i >= 0; --i) {
        UniPoly acc(1L);
        for (int j = i + 1; j < lat.size(); ++j) {
            if (!lat.leq(i, j)) continue;
            acc += gap(lat.rank_of(j) - lat.rank_of(i)) * g[static_cast<size_t>(j)];
        }
        g[static_cast<size_t>(i)] = acc;
    }
    return g[static_cast<size_t>(lat.bottom())];
}

// ---- Kazhdan--Lusztig family ----------------------------------------------------

namespace detail {

inline UniPoly solve_kl_functional(const UniPoly& rhs, int k, const char* who) {
    // solve t^k P(1/t) - P(t) = rhs with deg P < k/2
    const int half = (k + 1) / 2;  // number of unknown coefficients
    std::vector<Rat> p(static_cast<size_t>(half), Rat(0));
    for (int j = 0; j < half; ++j) p[static_cast<size_t>(j)] = rhs.coeff(k - j);
    UniPoly P(std::move(p));
    if (P.reversed(k) - P != rhs) throw std::logic_error(std::string(who) + ": recursion inconsistency");
    return P;
}

inline std::unordered_map<std::string, UniPoly>& kl_memo() {
    thread_local std::unordered_map<std::string, UniPoly> memo;
    return memo;
}
inline std::unordered_map<std::string, UniPoly>& klq_memo() {
    thread_local std::unordered_map<std::string, UniPoly> memo;
    return memo;
}

}  // namespace detail

inline UniPoly kl_oracle(const Matroid& m) {
    if (m.n() == 0) return UniPoly(1L);
    if (loops(m) != 0) return UniPoly();
    const std::string key = m.cache_key();
    auto& memo = detail::kl_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int k = m.rank();
    const FlatsLattice& lat = m.flats();
    UniPoly rhs;
    for (int i = 0; i < lat.size(); ++i) {
        if (i == lat.bottom()) continue;
        rhs += char_oracle(restrict_to(m, lat.flat(i))) * kl_oracle(contract(m, lat.flat(i)));
    }
    UniPoly P = detail::solve_kl_functional(rhs, k, "kl_oracle");
    memo.emplace(key, P);
    return P;
}

inline UniPoly klq_oracle(const Matroid& m) {
    if (m.n() == 0) return UniPoly(1L);
    if (loops(m) != 0) return UniPoly();
    const std::string key = m.cache_key();
    auto& memo = detail::klq_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int k = m.rank();
    const FlatsLattice& lat = m.flats();
    UniPoly rhs;
    for (int i = 0; i < lat.size(); ++i) {
        if (i == lat.top()) continue;
        Matroid contr = contract(m, lat.flat(i));
        UniPoly rev_char = char_oracle(contr).reversed(contr.rank());
        UniPoly term = klq_oracle(restrict_to(m, lat.flat(i))) * rev_char;
        if (lat.rank_of(i) % 2) term = -term;
        rhs += term;
    }
    if (k % 2) rhs = -rhs;
    UniPoly Q = detail::solve_kl_functional(rhs, k, "klq_oracle");
    memo.emplace(key, Q);
    return Q;
}

inline UniPoly klz_oracle(const Matroid& m) {
    const FlatsLattice& lat = m.flats();
    UniPoly z;
    for (int i = 0; i < lat.size(); ++i)
        z += UniPoly::monomial(lat.rank_of(i)) * kl_oracle(contract(m, lat.flat(i)));
    return z;
}

// gamma from Z(t) = gamma(t/(1+t)^2) (1+t)^k; requires Z palindromic of degree k
inline UniPoly gamma_extract(const UniPoly& z, int k) {
    UniPoly rest = z;
    std::vector<Rat> g(static_cast<size_t>(k / 2) + 1, Rat(0));
    for (int j = 0; j <= k / 2; ++j) {
        g[static_cast<size_t>(j)] = rest.coeff(j);
        if (g[static_cast<size_t>(j)] == 0) continue;
        UniPoly onePlusT(std::vector<Rat>{Rat(1), Rat(1)});
        UniPoly term = UniPoly::monomial(j, g[static_cast<size_t>(j)]);
        for (int e = 0; e < k - 2 * j; ++e) term *= onePlusT;
        rest -= term;
    }
    if (!rest.is_zero()) throw std::domain_error("gamma_extract: input is not palindromic of the given degree");
    return UniPoly(std::move(g));
}

inline UniPoly gamma_oracle(const Matroid& m) { return gamma_extract(klz_oracle(m), m.rank()); }

// ---- Denham / spectrum -----------------------------------------------------------

// Denham polynomial as a map: cyclic flat -> coefficient of b_F in Z[x,y]
inline std::map<Mask, BiPoly> denham_oracle(const Matroid& m) {
    std::map<Mask, BiPoly> out;
    auto z = cyclic_flats(m);
    const int k = m.rank();
    for (size_t i = 0; i < z.flats.size(); ++i) {
        Mask f = z.flats[i];
        UniPoly cx = char_oracle(contract(m, f));               // in t, substitute -x
        UniPoly cy = char_oracle(dual(restrict_to(m, f)));      // in t, substitute -y
        BiPoly term;
        for (int a = 0; a <= cx.degree(); ++a)
            for (int b = 0; b <= cy.degree(); ++b) {
                Rat c = cx.coeff(a) * cy.coeff(b);
                if (c == 0) continue;
                int sign = ((a + b) % 2 == 0) ? 1 : -1;  // (-x)^a (-y)^b
                term.add(a, b, Rat(sign) * c);
            }
        int sign = ((k - popcount(f)) % 2 == 0) ? 1 : -1;
        term.scale(Rat(sign));
        if (!term.is_zero()) out.emplace(f, std::move(term));
    }
    return out;
}

// Spec_M(t,q) = t^rk Phi_M(1/t, 0, q,...,q); the substitution is asserted to
// produce an honest polynomial
inline BiPoly spectrum_oracle(const Matroid& m) {
    const int k = m.rank();
    BiPoly out;  // variables (t, q)
    auto z = cyclic_flats(m);
    for (size_t i = 0; i < z.flats.size(); ++i) {
        Mask f = z.flats[i];
        UniPoly cx = char_oracle(contract(m, f));
        Rat cy0 = char_oracle(dual(restrict_to(m, f))).eval(Rat(0));
        if (cy0 == 0) continue;
        int sign = ((k - popcount(f)) % 2 == 0) ? 1 : -1;
        // t^k chi(-1/t) = sum_j c_j (-1)^j t^{k-j}
        for (int j = 0; j <= cx.degree(); ++j) {
            Rat c = cx.coeff(j);
            if (c == 0) continue;
            if (j % 2) c = -c;
            out.add(k - j, popcount(f), Rat(sign) * c * cy0);
        }
    }
    return out;
}

// the def of Kook--Reiner--Stanton, as an independent cross-check
inline BiPoly spectrum_from_definition(const Matroid& m) {
    const FlatsLattice& lat = m.flats();
    BiPoly out;
    for (int i = 0; i < lat.size(); ++i) {
        Matroid rest = restrict_to(m, lat.flat(i));
        Rat chi_tilde = tutte_oracle(rest).eval(Rat(0), Rat(1));
        if (chi_tilde < 0) chi_tilde = -chi_tilde;
        if (chi_tilde == 0) continue;
        for (int j = 0; j < lat.size(); ++j) {
            if (!lat.leq(i, j)) continue;
            Int mu = lat.mobius(i, j);
            if (mu < 0) mu = -mu;
            if (mu == 0) continue;
            out.add(lat.rank_of(j), popcount(lat.flat(i)), chi_tilde * Rat(mu));
        }
    }
    return out;
}

// ---- G-invariant ------------------------------------------------------------------

struct GInvariantVector {
    int n = 0;
    std::map<Mask, Int> weights;  // bit i-1 of the key = rank jump at step i

    friend bool operator==(const GInvariantVector& a, const GInvariantVector& b) {
        return a.n == b.n && a.weights == b.weights;
    }
    GInvariantVector& operator+=(const GInvariantVector& o) {
        for (const auto& [s, w] : o.weights) {
            weights[s] += w;
            if (weights[s] == 0) weights.erase(s);
        }
        return *this;
    }
    GInvariantVector& operator-=(const GInvariantVector& o) {
        for (const auto& [s, w] : o.weights) {
            weights[s] -= w;
            if (weights[s] == 0) weights.erase(s);
        }
        return *this;
    }
    friend GInvariantVector operator+(GInvariantVector a, const GInvariantVector& b) { a += b; return a; }
    friend GInvariantVector operator-(GInvariantVector a, const GInvariantVector& b) { a -= b; return a; }

    std::string to_string() const {
        if (weights.empty()) return "0";
        std::string out;
        for (const auto& [s, w] : weights) {
            if (!out.empty()) out += " + ";
            out += w.get_str() + "*U[";
            for (int i = 0; i < n; ++i) out += has_bit(s, i) ? '1' : '0';
            out += "]";
        }
        return out;
    }
};

// DP over (subset, jump-sequence) layers; weights add to n!
inline GInvariantVector g_invariant_oracle(const Matroid& m) {
    const int n = m.n();
    if (n > 16) throw std::invalid_argument("g_invariant_oracle: ground set too large");
    const auto& rk = m.rank_table();
    std::map<std::pair<Mask, Mask>, Int> layer;  // (subset, jumps so far) -> count
    layer[{0, 0}] = 1;
    for (int step = 0; step < n; ++step) {
        std::map<std::pair<Mask, Mask>, Int> next;
        for (const auto& [key, cnt] : layer) {
            auto [s, seq] = key;
            for (int e = 0; e < n; ++e) {
                if (has_bit(s, e)) continue;
                Mask s2 = s | bit(e);
                Mask seq2 = seq | (rk[s2] > rk[s] ? bit(step) : 0);
                next[{s2, seq2}] += cnt;
            }
        }
        layer = std::move(next);
    }
    GInvariantVector out;
    out.n = n;
    for (const auto& [key, cnt] : layer) out.weights[key.second] += cnt;
    return out;
}

// ---- convolution and flag indicators ----------------------------------------------

// (f * g)(M) = sum_{S subseteq E} f(M|_S) g(M/S)
template <typename F, typename G>
auto convolve(F&& f, G&& g, const Matroid& m) {
    using V = decltype(f(m) * g(m));
    std::optional<V> acc;
    for (Mask s = 0;; ++s) {
        V term = f(restrict_to(m, s)) * g(contract(m, s));
        if (acc)
            *acc += term;
        else
            acc = term;
        if (s == m.ground()) break;
    }
    return *acc;
}

struct FlagIndicator {
    std::vector<Mask> flats;          // strict chain F_0 < ... < F_m < E
    std::vector<int> ranks;           // optional prescribed ranks (empty = unconstrained)
};

inline int flag_indicator(const Matroid& m, const FlagIndicator& flag) {
    for (size_t i = 0; i + 1 < flag.flats.size(); ++i)
        if (!((flag.flats[i] & ~flag.flats[i + 1]) == 0 && flag.flats[i] != flag.flats[i + 1]))
            throw std::invalid_argument("flag_indicator: not a strict chain");
    for (size_t i = 0; i < flag.flats.size(); ++i) {
        Mask f = flag.flats[i];
        if (closure(m, f) != f) return 0;
        if (!flag.ranks.empty() && m.rank_of(f) != flag.ranks[i]) return 0;
    }
    return 1;
}

// ---- Speyer g on lattice path matroids ---------------------------------------------

namespace detail {
inline std::unordered_map<std::string, UniPoly>& g_lpm_memo() {
    thread_local std::unordered_map<std::string, UniPoly> memo;
    return memo;
}
}  // namespace detail

// g-polynomial by recursive hyperplane splits: snakes give t, loops kill the
// product, direct sums multiply
inline UniPoly g_poly_oracle_lpm(const LatticePathPair& p) {
    const std::string key = p.lower + "|" + p.upper;
    auto& memo = detail::g_lpm_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int n = p.n();
    if (n == 0) return UniPoly(1L);
    auto hl = LatticePathPair::heights(p.lower), hu = LatticePathPair::heights(p.upper);
    // split into components at interior touch points
    std::vector<int> cuts = {0};
    for (int m = 1; m < n; ++m)
        if (hl[static_cast<size_t>(m)] == hu[static_cast<size_t>(m)]) cuts.push_back(m);
    cuts.push_back(n);
    UniPoly result(1L);
    if (cuts.size() > 2) {
        for (size_t c = 0; c + 1 < cuts.size(); ++c) {
            int a = cuts[c], b = cuts[c + 1];
            LatticePathPair seg(p.lower.substr(static_cast<size_t>(a), static_cast<size_t>(b - a)),
                                p.upper.substr(static_cast<size_t>(a), static_cast<size_t>(b - a)));
            result *= g_poly_oracle_lpm(seg);
            if (result.is_zero()) break;
        }
    } else if (n == 1) {
        result = p.lower == "N" ? UniPoly(std::vector<Rat>{Rat(0), Rat(1)}) : UniPoly();
    } else {
        auto interior = lpm_interior_points(p);
        if (interior.empty()) {
            result = UniPoly(std::vector<Rat>{Rat(0), Rat(1)});  // snake
        } else {
            auto sp = lpm_split(p, interior[0].first, interior[0].second);
            result = g_poly_oracle_lpm(sp.m1) + g_poly_oracle_lpm(sp.m2) + g_poly_oracle_lpm(sp.m3);
        }
    }
    memo.emplace(key, result);
    return result;
}

}  // namespace matval
