#pragma once

// Closed-form evaluation of the supported invariants on uniform matroids,
// cuspidal matroids, direct sums of two uniforms, and the special families
// (minimal, C_{a,b}, corank 2). A few documented terms (chain polynomials
// and Hilbert series of cuspidal matroids, Q of corank-2 cuspidals) delegate
// to the definitional oracles on explicitly built matroids.

#include <matval/oracle.hpp>

namespace matval {

struct UnresolvableTerm : std::runtime_error {
    explicit UnresolvableTerm(const std::string& what) : std::runtime_error(what) {}
};

// shared parameter analysis for Lambda_{r,k,h,n}
enum class CuspidalShape { Uniform, DirectSum, Proper };

inline CuspidalShape cuspidal_shape(int r, int k, int h, int n) {
    if (!CuspidalParams{r, k, h, n}.valid())
        throw std::invalid_argument("cuspidal parameters out of range");
    if (r == 0 || k - r == n - h) return CuspidalShape::Uniform;
    if (r == h || r == k) return CuspidalShape::DirectSum;  // empty cusp, stays a direct sum
    return CuspidalShape::Proper;
}

// ---- volume -------------------------------------------------------------------

inline Rat vol_uniform(int k, int n) {
    if (n == 0) return Rat(1);
    if (k == 0 && n == 1) return Rat(1);  // point in a zero-dimensional lattice
    return make_rat(eulerian(n - 1, k - 1), factorial(n - 1));
}

// |{s in S_m : des(s) = d_total, des(s_1..s_p) = d_pre}| via a rank-of-last DP
inline std::vector<std::vector<Int>> descent_prefix_table(int m, int p, int max_pre, int max_tot) {
    // dp[r][pre][tot], r = unused values below the last entry
    auto dims = [&](int a, int b, int c) {
        return std::vector<std::vector<std::vector<Int>>>(
            static_cast<size_t>(a),
            std::vector<std::vector<Int>>(static_cast<size_t>(b), std::vector<Int>(static_cast<size_t>(c), Int(0))));
    };
    std::vector<std::vector<Int>> out(static_cast<size_t>(max_pre) + 1,
                                      std::vector<Int>(static_cast<size_t>(max_tot) + 1, Int(0)));
    if (m == 0) {
        out[0][0] = 1;
        return out;
    }
    auto dp = dims(m, max_pre + 1, max_tot + 1);
    for (int r = 0; r < m; ++r) dp[static_cast<size_t>(r)][0][0] = 1;
    for (int pos = 1; pos < m; ++pos) {
        int u = m - pos;  // unused before choosing position pos+1
        auto nx = dims(u, max_pre + 1, max_tot + 1);
        bool in_prefix = pos <= p - 1;  // descent at gap `pos` counts toward the prefix statistic
        for (int r = 0; r <= u; ++r)
            for (int pre = 0; pre <= max_pre; ++pre)
                for (int tot = 0; tot <= max_tot; ++tot) {
                    const Int& w = dp[static_cast<size_t>(r)][static_cast<size_t>(pre)][static_cast<size_t>(tot)];
                    if (w == 0) continue;
                    for (int s = 0; s < u; ++s) {
                        bool desc = s < r;
                        int pre2 = pre + ((desc && in_prefix) ? 1 : 0);
                        int tot2 = tot + (desc ? 1 : 0);
                        if (pre2 > max_pre || tot2 > max_tot) continue;
                        nx[static_cast<size_t>(s)][static_cast<size_t>(pre2)][static_cast<size_t>(tot2)] += w;
                    }
                }
        dp = std::move(nx);
    }
    for (int pre = 0; pre <= max_pre; ++pre)
        for (int tot = 0; tot <= max_tot; ++tot)
            out[static_cast<size_t>(pre)][static_cast<size_t>(tot)] =
                dp[0][static_cast<size_t>(pre)][static_cast<size_t>(tot)];
    return out;
}

// permutations of S_{n-1} with k-1 descents whose first n-h entries carry
// fewer than k-r descents
inline Int vol_cuspidal_count(int r, int k, int h, int n) {
    const int m = n - 1, p = n - h;
    auto table = descent_prefix_table(m, p, std::min(k - r - 1, m), k - 1);
    Int total = 0;
    for (int pre = 0; pre <= std::min(k - r - 1, m); ++pre) total += table[static_cast<size_t>(pre)][static_cast<size_t>(k - 1)];
    return total;
}

inline Rat vol_cuspidal(int r, int k, int h, int n) {
    switch (cuspidal_shape(r, k, h, n)) {
        case CuspidalShape::Uniform: return vol_uniform(k, n);
        case CuspidalShape::DirectSum: return Rat(0);
        case CuspidalShape::Proper: break;
    }
    return make_rat(vol_cuspidal_count(r, k, h, n), factorial(n - 1));
}

// loopless rank-2 matroids: lambda_h counts the parallel classes of size h >= 2;
// singleton classes are padded in so the classes partition the ground set
inline Rat vol_rank2(const std::map<int, long>& lambda_h, int n) {
    long covered = 0;
    for (const auto& [h, c] : lambda_h) {
        if (h < 2 || c < 0) throw std::invalid_argument("vol_rank2: classes must have size >= 2");
        covered += static_cast<long>(h) * c;
    }
    if (covered > n) throw std::invalid_argument("vol_rank2: classes exceed the ground set");
    Int acc = Int(1) << (n - 1);
    auto correction = [&](int h, long c) {
        Int s = 0;
        for (int i = n - h; i <= n - 1; ++i) s += binom(n - 1, i);
        acc -= Int(c) * s;
    };
    for (const auto& [h, c] : lambda_h) correction(h, c);
    correction(1, n - covered);
    return make_rat(acc, factorial(n - 1));
}

inline Rat vol_split(const StressedProfile& profile, int k, int n) {
    Rat out = make_rat(eulerian(n - 1, k - 1), factorial(n - 1));
    for (const auto& [rh, c] : profile.lambda) out -= Rat(c) * vol_cuspidal(rh.first, k, rh.second, n);
    return out;
}

// ---- ehrhart ------------------------------------------------------------------

inline UniPoly ehr_uniform(int k, int n) {
    if (k < 0 || k > n) throw std::invalid_argument("ehr_uniform: need 0 <= k <= n");
    if (k == 0 || k == n) return UniPoly(1L);
    UniPoly acc;
    for (int j = 0; j < k; ++j) {
        UniPoly term = poly_binom(k - j, n - 1 - j, n - 1);
        term.scale(Rat((j % 2 == 0 ? 1 : -1) * binom(n, j)));
        acc += term;
    }
    return acc;
}

inline UniPoly ehr_minimal(int k, int n) {
    if (k < 1 || k >= n) throw std::invalid_argument("ehr_minimal: need 1 <= k <= n-1");
    UniPoly sum;
    for (int j = 0; j < k; ++j) {
        UniPoly term = poly_binom(1, j, j);
        term.scale(Rat(binom(n - k - 1 + j, j)));
        sum += term;
    }
    UniPoly out = poly_binom(1, n - k, n - k) * sum;
    out.scale(make_rat(1, binom(n - 1, k - 1)));
    return out;
}

// ehr(T_{k,n}, t) - ehr(T_{k,n}, t-1) telescopes to a product of simplices,
// giving ehr(T_{k,n}, t-1) without a shift of variables
inline UniPoly ehr_minimal_shifted(int k, int n) {
    return ehr_minimal(k, n) - poly_binom(1, n - k - 1, n - k - 1) * poly_binom(1, k - 1, k - 1);
}

inline UniPoly ehr_sparse_paving(int k, int n, const Int& lambda) {
    UniPoly corr = ehr_minimal_shifted(k, n);
    corr.scale(Rat(lambda));
    return ehr_uniform(k, n) - corr;
}

inline Int fan_li_value(int r, int k, int h, int n, long t) {
    const long a = n - h - k + r, b = h - r, m = std::min(h, k) - r;
    Rat acc(0);
    for (long i = 0; i <= m * t; ++i)
        for (int j = 0; j <= n - h; ++j) {
            Int b1 = binom((a - j) * t + (n - h) - j + i - 1, n - h - 1);
            if (b1 == 0) continue;
            for (int l = 0; l <= h; ++l) {
                Int b2 = binom((b - l) * t + h - l - i - 1, h - 1);
                if (b2 == 0) continue;
                Int term = binom(n - h, j) * binom(h, l) * b1 * b2;
                if ((j + l) % 2) term = -term;
                acc += Rat(term);
            }
        }
    if (acc.get_den() != 1) throw std::logic_error("fan_li_value: non-integer value");
    return acc.get_num();
}

inline UniPoly ehr_cuspidal(int r, int k, int h, int n) {
    switch (cuspidal_shape(r, k, h, n)) {
        case CuspidalShape::Uniform: return ehr_uniform(k, n);
        case CuspidalShape::DirectSum:
            return r == h ? ehr_uniform(k - h, n - h) * ehr_uniform(h, h)
                          : ehr_uniform(0, n - h) * ehr_uniform(k, h);
        case CuspidalShape::Proper: break;
    }
    std::vector<std::pair<Rat, Rat>> pts;
    for (long t = 0; t <= n - 1; ++t) pts.emplace_back(Rat(t), Rat(fan_li_value(r, k, h, n, t)));
    return interpolate(pts);
}

inline UniPoly ehr_split(const StressedProfile& profile, int k, int n) {
    UniPoly acc = ehr_uniform(k, n);
    for (const auto& [rh, c] : profile.lambda) {
        auto [r, h] = rh;
        UniPoly term = ehr_cuspidal(r, k, h, n) - ehr_uniform(k - r, n - h) * ehr_uniform(r, h);
        term.scale(Rat(c));
        acc -= term;
    }
    return acc;
}

inline UniPoly ehr_uniform_low_coeffs(int k, long n, int max_deg) {
    if (k < 1 || k >= n) throw std::invalid_argument("ehr_uniform_low_coeffs: need 1 <= k <= n-1");
    UniPoly acc;
    for (int j = 0; j < k; ++j) {
        UniPoly term = poly_binom_truncated(k - j, n - 1 - j, n - 1, max_deg);
        term.scale(Rat((j % 2 == 0 ? 1 : -1) * binom(n, j)));
        acc += term;
    }
    return acc.truncated(max_deg);
}

inline UniPoly ehr_minimal_low_coeffs(int k, long n, int max_deg) {
    UniPoly sum;
    for (int j = 0; j < k; ++j) {
        UniPoly term = poly_binom(1, j, j);
        term.scale(Rat(binom(n - k - 1 + j, j)));
        sum += term;
    }
    UniPoly out = poly_binom_truncated(1, n - k, n - k, max_deg) * sum;
    out.scale(make_rat(1, binom(n - 1, k - 1)));
    return out.truncated(max_deg);
}

inline UniPoly ehr_sparse_paving_low_coeffs(int k, long n, const Int& lambda, int max_deg) {
    UniPoly shifted = ehr_minimal_low_coeffs(k, n, max_deg) -
                      (poly_binom_truncated(1, n - k - 1, n - k - 1, max_deg) *
                       poly_binom_truncated(1, k - 1, k - 1, max_deg))
                          .truncated(max_deg);
    shifted.scale(Rat(lambda));
    return (ehr_uniform_low_coeffs(k, n, max_deg) - shifted).truncated(max_deg);
}

// ---- tutte, characteristic polynomial, beta ------------------------------------

inline BiPoly tutte_uniform(int k, int n) {
    if (k < 0 || k > n) throw std::invalid_argument("tutte_uniform: need 0 <= k <= n");
    if (k == 0) return BiPoly::monomial(0, n, Rat(1));
    if (k == n) return BiPoly::monomial(n, 0, Rat(1));
    BiPoly out;
    for (int i = 1; i <= k; ++i) out.add(i, 0, Rat(binom(n - i - 1, n - k - 1)));
    for (int i = 1; i <= n - k; ++i) out.add(0, i, Rat(binom(n - i - 1, k - 1)));
    return out;
}

// T_{Rel(M,F)} - T_M for a stressed F of rank r and size h; a multiple of x+y-xy
inline BiPoly tutte_relax_delta(int r, int k, int h, int n) {
    const BiPoly xm1 = BiPoly::var_x() - BiPoly(Rat(1));
    const BiPoly ym1 = BiPoly::var_y() - BiPoly(Rat(1));
    const BiPoly xy = xm1 * ym1;
    auto xy_pow = [&](int e) { return xy.pow(e); };
    BiPoly acc;
    for (int i = r + 1; i <= h; ++i)
        for (int j = 0; j <= k - r - 1; ++j) {
            BiPoly alpha;
            if (i + j <= k)
                alpha = xm1.pow(k - i - j) * (BiPoly(Rat(1)) - xy_pow(i - r));
            else
                alpha = ym1.pow(i + j - k) * (BiPoly(Rat(1)) - xy_pow(k - r - j));
            alpha.scale(Rat(binom(h, i) * binom(n - h, j)));
            acc += alpha;
        }
    return acc;
}

inline BiPoly tutte_cuspidal(int r, int k, int h, int n) {
    if (cuspidal_shape(r, k, h, n) == CuspidalShape::Uniform) return tutte_uniform(k, n);
    return tutte_uniform(k - r, n - h) * tutte_uniform(r, h) + tutte_relax_delta(r, k, h, n);
}

inline BiPoly tutte_split(const StressedProfile& profile, int k, int n) {
    BiPoly acc = tutte_uniform(k, n);
    for (const auto& [rh, c] : profile.lambda) {
        BiPoly d = tutte_relax_delta(rh.first, k, rh.second, n);
        d.scale(Rat(c));
        acc -= d;
    }
    return acc;
}

inline UniPoly char_uniform(int k, int n) {
    if (k == 0) return n == 0 ? UniPoly(1L) : UniPoly();
    UniPoly acc;
    for (int j = 0; j < k; ++j) {
        UniPoly term = UniPoly::monomial(k - j) - UniPoly(1L);
        term.scale(Rat((j % 2 == 0 ? 1 : -1) * binom(n, j)));
        acc += term;
    }
    return acc;
}

// the sign (-1)^{i+j} comes from substituting x=1-t, y=0 into the Tutte
// delta; validated against the subset-sum oracle
inline UniPoly char_delta(int r, int k, int h, int n) {
    UniPoly acc;
    for (int i = r + 1; i <= h; ++i)
        for (int j = 0; j <= k - r - 1; ++j) {
            UniPoly omega;
            if (i + j <= k)
                omega = UniPoly::monomial(k - i - j) - UniPoly::monomial(k - r - j);
            else
                omega = UniPoly(1L) - UniPoly::monomial(k - r - j);
            omega.scale(Rat(((i + j) % 2 == 0 ? 1 : -1) * binom(h, i) * binom(n - h, j)));
            acc += omega;
        }
    return acc;
}

inline UniPoly char_cuspidal(int r, int k, int h, int n) {
    if (cuspidal_shape(r, k, h, n) == CuspidalShape::Uniform) return char_uniform(k, n);
    return char_uniform(k - r, n - h) * char_uniform(r, h) + char_delta(r, k, h, n);
}

inline UniPoly char_split(const StressedProfile& profile, int k, int n) {
    UniPoly acc = char_uniform(k, n);
    for (const auto& [rh, c] : profile.lambda) {
        UniPoly d = char_delta(rh.first, k, rh.second, n);
        d.scale(Rat(c));
        acc -= d;
    }
    return acc;
}

inline Int beta_uniform(int k, int n) {
    if (n == 1 && k == 1) return 1;
    if (0 < k && k < n) return binom(n - 2, k - 1);
    return 0;
}

inline Int beta_cuspidal(int r, int k, int h, int n) {
    if (cuspidal_shape(r, k, h, n) == CuspidalShape::Uniform) return beta_uniform(k, n);
    Int acc = 0;
    for (int i = r; i <= k - 1; ++i) acc += binom(h - 1, i) * binom(n - h - 1, k - 1 - i);
    return acc;
}

// ---- whitney numbers of the second kind -----------------------------------------

inline UniPoly whitney_uniform(int k, int n) {
    std::vector<Rat> w(static_cast<size_t>(k) + 1, Rat(0));
    for (int i = 0; i < k; ++i) w[static_cast<size_t>(i)] = Rat(binom(n, i));
    w[static_cast<size_t>(k)] = 1;
    return UniPoly(std::move(w));
}

inline UniPoly whitney_cuspidal(int r, int k, int h, int n) {
    if (!CuspidalParams{r, k, h, n}.valid()) throw std::invalid_argument("whitney_cuspidal: bad parameters");
    std::vector<Rat> w(static_cast<size_t>(k) + 1, Rat(0));
    for (int i = 0; i < k; ++i) {
        Int acc = binom(h, r + i - k);
        for (int j = std::max(r + i - k + 1, 0); j <= h; ++j) acc += binom(h, j) * binom(n - h, i - j);
        w[static_cast<size_t>(i)] = Rat(acc);
    }
    w[static_cast<size_t>(k)] = 1;
    return UniPoly(std::move(w));
}

inline UniPoly whitney_split(const StressedProfile& profile, int k, int n) {
    std::vector<Rat> w(static_cast<size_t>(k) + 1, Rat(0));
    for (int i = 0; i < k; ++i) {
        Int acc = binom(n, i);
        for (const auto& [rh, c] : profile.lambda) {
            auto [r, h] = rh;
            Int inner = -binom(n - h, i - r);
            for (int j = r; j <= h; ++j) inner += binom(h, j) * binom(n - h, i - j);
            acc -= Int(c) * inner;
        }
        w[static_cast<size_t>(i)] = Rat(acc);
    }
    w[static_cast<size_t>(k)] = 1;
    return UniPoly(std::move(w));
}

// ---- chain polynomials and Hilbert series ---------------------------------------

inline UniPoly chain_uniform(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("chain_uniform: need 0 < k <= n");
    UniPoly acc;
    for (int j = 0; j < k; ++j) {
        UniPoly aj = eulerian_poly(j).compose_linear(Rat(1), Rat(1));  // A_j(x+1)
        aj.scale(Rat(binom(n, j)));
        acc += aj.shifted_up(k - 1 - j);
    }
    return acc;
}

inline UniPoly chain_to_h(const UniPoly& f, int d) {
    if (f.degree() > d) throw std::invalid_argument("chain_to_h: degree exceeds d");
    return f.compose_linear(Rat(1), Rat(-1));
}

// conjectural formulas (Hameister--Rao--Simpson); cross-checked against the
// Feichtner--Yuzvinsky oracle but never used as an evaluation route
inline UniPoly hilb_uniform_conjectural(int k, int n) {
    UniPoly acc;
    for (int i = 1; i <= k; ++i) {
        UniPoly h = chain_to_h(chain_uniform(i, n), i - 1);
        // C(-1,0) = 1 at the i = k = n corner
        h.scale(Rat(((k - i) % 2 == 0 ? 1 : -1) *
                    binom(n - i - 1, k - i, BinomConvention::NegUpperExtended)));
        acc += h;
    }
    return acc;
}

inline UniPoly hilb_uniform_plus_coloop_conjectural(int k, int n) {
    UniPoly acc;
    for (int i = 1; i <= k; ++i) {
        UniPoly h = chain_to_h(chain_oracle(direct_sum(uniform(i, n), uniform(1, 1))), i);
        h.scale(Rat(((k - i) % 2 == 0 ? 1 : -1) *
                    binom(n - i - 1, k - i, BinomConvention::NegUpperExtended)));
        acc += h;
    }
    return acc;
}

// ---- Kazhdan--Lusztig ------------------------------------------------------------

namespace detail {
inline Rat int_div(const Rat& a) {
    if (a.get_den() != 1) throw std::logic_error("closed form produced a non-integer coefficient");
    return a;
}
}  // namespace detail

inline UniPoly kl_uniform(int k, int n) {
    if (k == n) return UniPoly(1L);
    if (k == 0) return n == 0 ? UniPoly(1L) : UniPoly();
    std::vector<Rat> c(static_cast<size_t>((k - 1) / 2) + 1, Rat(0));
    for (int j = 0; j <= (k - 1) / 2; ++j) {
        Rat acc(0);
        for (int i = 0; i <= n - k - 1; ++i) {
            Int num = binom(n, j) * binom(k + i - j, i + j + 1) *
                      binom(i + j - 1, i, BinomConvention::NegUpperExtended);
            acc += make_rat(num, Int(k - j));
        }
        c[static_cast<size_t>(j)] = detail::int_div(acc);
    }
    return UniPoly(std::move(c));
}

inline UniPoly klq_uniform(int k, int n) {
    if (k == n) return UniPoly(1L);
    if (k == 0) return n == 0 ? UniPoly(1L) : UniPoly();
    std::vector<Rat> c(static_cast<size_t>((k - 1) / 2) + 1, Rat(0));
    for (int j = 0; j <= (k - 1) / 2; ++j) {
        Rat factor = make_rat(Int(n - k) * Int(k - 2 * j), Int(n - k + j) * Int(n - j));
        c[static_cast<size_t>(j)] = detail::int_div(Rat(binom(n, k)) * factor * Rat(binom(k, j)));
    }
    return UniPoly(std::move(c));
}

inline UniPoly klz_uniform(int k, int n) {
    UniPoly z = UniPoly::monomial(k);
    for (int j = 0; j < k; ++j) {
        UniPoly term = kl_uniform(k - j, n - j);
        term.scale(Rat(binom(n, j)));
        z += term.shifted_up(j);
    }
    return z;
}

inline UniPoly gamma_uniform(int k, int n) {
    if (k == 0 || k == n) return UniPoly(1L);
    std::vector<Rat> c(static_cast<size_t>(k / 2) + 1, Rat(0));
    for (int j = 0; j <= k / 2; ++j) {
        Rat acc(0);
        for (int i = j; i <= k - 1; ++i) {
            Int num = binom(k - j, j) * binom(i - 1, i - j, BinomConvention::NegUpperExtended) *
                      binom(n - k + i - 1, i);
            acc += make_rat(Int(k - i) * num, Int(k - j));
        }
        c[static_cast<size_t>(j)] = detail::int_div(acc);
    }
    return UniPoly(std::move(c));
}

inline UniPoly kl_cab(int a, int b) {
    if (a < 2 || b < 2) throw std::invalid_argument("kl_cab: need a,b >= 2");
    const int n = a + b - 1;
    return kl_uniform(n - 2, n - 1) -
           (kl_uniform(a - 2, a - 1) * kl_uniform(b - 2, b - 1)).shifted_up(1);
}

inline UniPoly klz_cab(int a, int b) {
    if (a < 2 || b < 2) throw std::invalid_argument("klz_cab: need a,b >= 2");
    return klz_uniform(a + b - 3, a + b - 2);
}

// corank-2 cuspidal matroids via the C_{a,b} subdivision
inline UniPoly kl_cuspidal_corank2(int r, int n) {
    UniPoly acc;
    for (int a = 2; a <= n - r - 1; ++a) acc += kl_cab(a, n + 1 - a);
    for (int a = 2; a <= n - r - 2; ++a) acc -= kl_uniform(a - 1, a) * kl_uniform(n - a - 1, n - a);
    return acc;
}

inline UniPoly klz_cuspidal_corank2(int r, int n) {
    UniPoly acc;
    UniPoly zslice = klz_uniform(n - 2, n - 1);
    for (int a = 2; a <= n - r - 1; ++a) acc += zslice;
    for (int a = 2; a <= n - r - 2; ++a) acc -= klz_uniform(a - 1, a) * klz_uniform(n - a - 1, n - a);
    return acc;
}

inline UniPoly kl_corank2(const std::map<int, long>& lambda_r, int n) {
    UniPoly acc = kl_uniform(n - 2, n);
    for (const auto& [r, c] : lambda_r) {
        UniPoly inner;
        for (int a = 2; a <= n - r - 1; ++a) {
            inner += kl_uniform(n - 2, n - 1);
            inner -= kl_uniform(n - a - 1, n - a) *
                     (kl_uniform(a - 1, a) + kl_uniform(a - 2, a - 1).shifted_up(1));
        }
        inner.scale(Rat(c));
        acc -= inner;
    }
    return acc;
}

inline UniPoly klz_corank2(const std::map<int, long>& lambda_r, int n) {
    UniPoly acc = klz_uniform(n - 2, n);
    for (const auto& [r, c] : lambda_r) {
        UniPoly inner;
        for (int a = 2; a <= n - r - 1; ++a) {
            inner += klz_uniform(n - 2, n - 1);
            inner -= klz_uniform(a - 1, a) * klz_uniform(n - a - 1, n - a);
        }
        inner.scale(Rat(c));
        acc -= inner;
    }
    return acc;
}

// Which route produced a cuspidal Kazhdan--Lusztig term.
enum class KlRoute { UniformCollapse, DirectSum, Simplification, CorankTwo, OracleFallback };

inline const char* kl_route_name(KlRoute r) {
    switch (r) {
        case KlRoute::UniformCollapse: return "uniform";
        case KlRoute::DirectSum: return "direct-sum";
        case KlRoute::Simplification: return "simplification";
        case KlRoute::CorankTwo: return "corank-2";
        case KlRoute::OracleFallback: return "oracle";
    }
    return "?";
}

enum class KlKind { P, Q, Z };

inline UniPoly kl_uniform_of(KlKind kind, int k, int n) {
    switch (kind) {
        case KlKind::P: return kl_uniform(k, n);
        case KlKind::Q: return klq_uniform(k, n);
        case KlKind::Z: return klz_uniform(k, n);
    }
    throw std::logic_error("kl_uniform_of");
}

inline UniPoly kl_cuspidal(KlKind kind, int r, int k, int h, int n, KlRoute* route = nullptr,
                           int oracle_cap = 12) {
    auto set = [&](KlRoute rt) {
        if (route) *route = rt;
    };
    switch (cuspidal_shape(r, k, h, n)) {
        case CuspidalShape::Uniform:
            set(KlRoute::UniformCollapse);
            return kl_uniform_of(kind, k, n);
        case CuspidalShape::DirectSum:
            set(KlRoute::DirectSum);
            return r == h ? kl_uniform_of(kind, k - h, n - h) * kl_uniform_of(kind, h, h)
                          : kl_uniform_of(kind, 0, n - h) * kl_uniform_of(kind, k, h);
        case CuspidalShape::Proper: break;
    }
    if (r == k - 1) {  // si(Lambda_{k-1,k,h,n}) = U_{k,h+1}; P,Q,Z invariant under simplification
        set(KlRoute::Simplification);
        return kl_uniform_of(kind, k, h + 1);
    }
    if (k == n - 2 && kind != KlKind::Q) {  // h = r+1 for proper corank-2 cuspidals
        set(KlRoute::CorankTwo);
        return kind == KlKind::P ? kl_cuspidal_corank2(r, n) : klz_cuspidal_corank2(r, n);
    }
    if (n > oracle_cap)
        throw UnresolvableTerm("no closed route for this cuspidal Kazhdan-Lusztig term and the "
                               "matroid is too large for the recursion oracle");
    set(KlRoute::OracleFallback);
    Matroid lam = cuspidal(r, k, h, n);
    switch (kind) {
        case KlKind::P: return kl_oracle(lam);
        case KlKind::Q: return klq_oracle(lam);
        case KlKind::Z: return klz_oracle(lam);
    }
    throw std::logic_error("kl_cuspidal");
}

struct KlTermReport {
    int r = 0, h = 0;
    KlRoute route = KlRoute::UniformCollapse;
};

inline UniPoly kl_split_of(KlKind kind, const StressedProfile& profile, int k, int n,
                           std::vector<KlTermReport>* reports = nullptr, int oracle_cap = 12) {
    UniPoly acc = kl_uniform_of(kind, k, n);
    for (const auto& [rh, c] : profile.lambda) {
        auto [r, h] = rh;
        KlRoute route = KlRoute::UniformCollapse;
        UniPoly lam = kl_cuspidal(kind, r, k, h, n, &route, oracle_cap);
        if (reports) reports->push_back({r, h, route});
        UniPoly term = lam - kl_uniform_of(kind, k - r, n - h) * kl_uniform_of(kind, r, h);
        term.scale(Rat(c));
        acc -= term;
    }
    return acc;
}

inline UniPoly kl_split(const StressedProfile& p, int k, int n,
                        std::vector<KlTermReport>* reports = nullptr, int cap = 12) {
    return kl_split_of(KlKind::P, p, k, n, reports, cap);
}
inline UniPoly klq_split(const StressedProfile& p, int k, int n,
                         std::vector<KlTermReport>* reports = nullptr, int cap = 12) {
    return kl_split_of(KlKind::Q, p, k, n, reports, cap);
}
inline UniPoly klz_split(const StressedProfile& p, int k, int n,
                         std::vector<KlTermReport>* reports = nullptr, int cap = 12) {
    return kl_split_of(KlKind::Z, p, k, n, reports, cap);
}
inline UniPoly gamma_split(const StressedProfile& p, int k, int n, int cap = 12) {
    return gamma_extract(klz_split(p, k, n, nullptr, cap), k);
}

// ---- spectrum ---------------------------------------------------------------------

inline BiPoly spec_uniform(int k, int n) {
    BiPoly out;
    Int lead = binom(n - 1, k);
    if (lead != 0) {
        out.add(k, n, Rat(lead));
        out.add(k, 0, Rat(-lead));
    }
    for (int i = 0; i <= k; ++i) out.add(i, 0, Rat(binom(n, i)));
    return out;
}

namespace detail {
// t^k chi(-1/t) as a polynomial in t
inline UniPoly spec_char_reversal(const UniPoly& chi, int k) {
    UniPoly out;
    for (int j = 0; j <= chi.degree(); ++j) {
        Rat c = chi.coeff(j);
        if (j % 2) c = -c;
        out += UniPoly::monomial(k - j, c);
    }
    return out;
}
// chi_{U_{a,b}}(0) = (-1)^a binom(b-1, a-1)
inline Rat chi_uniform_at_zero(int a, int b) {
    if (a == 0) return b == 0 ? Rat(1) : Rat(0);
    Rat v(binom(b - 1, a - 1));
    if (a % 2) v = -v;
    return v;
}
}  // namespace detail

inline BiPoly spec_cuspidal(int r, int k, int h, int n) {
    switch (cuspidal_shape(r, k, h, n)) {
        case CuspidalShape::Uniform: return spec_uniform(k, n);
        case CuspidalShape::DirectSum:
            return r == h ? spec_uniform(k - h, n - h) * spec_uniform(h, h)
                          : spec_uniform(0, n - h) * spec_uniform(k, h);
        case CuspidalShape::Proper: break;
    }
    BiPoly out;
    // cyclic flats of Lambda: empty set, E_1 = first n-h elements, E
    auto add_term = [&out](const UniPoly& tpoly, int qdeg, const Rat& factor) {
        for (int d = 0; d <= tpoly.degree(); ++d) {
            Rat c = tpoly.coeff(d) * factor;
            if (c != 0) out.add(d, qdeg, c);
        }
    };
    UniPoly chi_lam = char_cuspidal(r, k, h, n);
    Rat sgn_k = Rat(k % 2 == 0 ? 1 : -1);
    add_term(detail::spec_char_reversal(chi_lam, k), 0, sgn_k);
    // F = E_1: Lambda/E_1 = U_{r,h}, Lambda|E_1 = U_{k-r,n-h}
    Rat cy1 = detail::chi_uniform_at_zero((n - h) - (k - r), n - h);
    Rat sgn1 = Rat((k - (n - h)) % 2 == 0 ? 1 : -1);
    add_term(detail::spec_char_reversal(char_uniform(r, h), k), n - h, sgn1 * cy1);
    // F = E: chi of the empty contraction is 1
    Rat cy2 = Rat(tutte_cuspidal(r, k, h, n).eval(Rat(0), Rat(1)));
    if ((n - k) % 2) cy2 = -cy2;
    Rat sgn2 = Rat((k - n) % 2 == 0 ? 1 : -1);
    add_term(UniPoly::monomial(k), n, sgn2 * cy2);
    return out;
}

inline BiPoly spec_minimal(int k, int n) {
    // ((t+1)^k - t^k - t^{k-1}) (t+1 + (n-k-1) t q^{n-k}) + t^k + t^{k-1} + (n-k) t^k q^n
    BiPoly t = BiPoly::var_x(), q = BiPoly::var_y();
    BiPoly tp1 = t + BiPoly(Rat(1));
    BiPoly lead = tp1.pow(k) - BiPoly::monomial(k, 0) - BiPoly::monomial(k - 1, 0);
    BiPoly qpow = BiPoly::monomial(0, n - k, Rat(n - k - 1)) * t;
    BiPoly out = lead * (tp1 + qpow);
    out += BiPoly::monomial(k, 0) + BiPoly::monomial(k - 1, 0) + BiPoly::monomial(k, n, Rat(n - k));
    return out;
}

inline BiPoly spec_split(const StressedProfile& profile, int k, int n) {
    BiPoly acc = spec_uniform(k, n);
    for (const auto& [rh, c] : profile.lambda) {
        auto [r, h] = rh;
        BiPoly term = spec_cuspidal(r, k, h, n) - spec_uniform(r, h) * spec_uniform(k - r, n - h);
        term.scale(Rat(c));
        acc -= term;
    }
    return acc;
}

// ---- Speyer's g-polynomial ----------------------------------------------------------

inline UniPoly g_uniform(int k, int n) {
    if (n == 0) return UniPoly(1L);
    if (k == 0) return UniPoly();       // loops
    if (k == n) return UniPoly::monomial(n);  // free matroid: n coloops
    UniPoly acc;
    for (int i = 1; i <= k; ++i)
        acc += UniPoly::monomial(i, Rat(binom(n - i - 1, k - i) * binom(n - k - 1, i - 1)));
    return acc;
}

inline UniPoly g_cuspidal(int r, int k, int h, int n) {
    switch (cuspidal_shape(r, k, h, n)) {
        case CuspidalShape::Uniform: return g_uniform(k, n);
        case CuspidalShape::DirectSum:
            return r == h ? g_uniform(k - h, n - h) * g_uniform(h, h)
                          : g_uniform(0, n - h) * g_uniform(k, h);
        case CuspidalShape::Proper: break;
    }
    UniPoly acc = g_uniform(k, h - r + k);
    for (int j = r + 1; j <= k - 1; ++j) {
        UniPoly inner = g_uniform(k - j, n - h + r - j) +
                        g_uniform(k - j + 1, n - h + r - j + 1).divided_by_power(1);
        acc += g_uniform(j, h - r + j) * inner;
    }
    return acc;
}

// connected paving matroids; lambda_h = number of stressed hyperplanes of size h
inline UniPoly g_paving(const std::map<int, long>& lambda_h, int k, int n) {
    UniPoly acc = g_uniform(k, n);
    for (const auto& [h, c] : lambda_h) {
        UniPoly term = g_uniform(k, h + 1) + g_uniform(k - 1, h).shifted_up(1);
        term.scale(Rat(c));
        acc -= term;
    }
    return acc;
}

}  // namespace matval
