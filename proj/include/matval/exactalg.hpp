#pragma once

// Exact integer/rational arithmetic and dense polynomial algebra.
// Integers and rationals are GMP's mpz/mpq; everything downstream is exact.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matval {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not reduce; always build rationals through this.
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Int factorial(long m) {
    if (m < 0) throw std::invalid_argument("factorial: negative argument");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

// Two binomial conventions are in use downstream; they only differ for
// negative upper index. ZeroOutside: C(a,b)=0 if b<0, a<0 or a<b. NegUpperExtended:
// falling factorial a(a-1)...(a-b+1)/b! for b>=0, so C(-1,0)=1.
enum class BinomConvention { ZeroOutside, NegUpperExtended };

inline Int binom(long a, long b, BinomConvention conv = BinomConvention::ZeroOutside) {
    if (b < 0) return 0;
    if (conv == BinomConvention::ZeroOutside) {
        if (a < 0 || a < b) return 0;
        Int r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
        return r;
    }
    Int n(a), r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(b));
    return r;
}

// Eulerian numbers A_{m,i}: permutations of [m] with i descents; A_0(x)=1.
// Rows are memoized per thread.
inline const std::vector<Int>& eulerian_row(long m) {
    if (m < 0) throw std::invalid_argument("eulerian: negative m");
    thread_local std::vector<std::vector<Int>> rows = {{Int(1)}};
    while (static_cast<long>(rows.size()) <= m) {
        long v = static_cast<long>(rows.size());
        const auto& prev = rows.back();
        std::vector<Int> row(static_cast<size_t>(v), Int(0));
        for (long i = 0; i < v; ++i) {
            Int val = 0;
            if (i < static_cast<long>(prev.size())) val += Int(i + 1) * prev[static_cast<size_t>(i)];
            if (i - 1 >= 0 && i - 1 < static_cast<long>(prev.size()))
                val += Int(v - i) * prev[static_cast<size_t>(i - 1)];
            row[static_cast<size_t>(i)] = val;
        }
        rows.push_back(std::move(row));
    }
    return rows[static_cast<size_t>(m)];
}

inline Int eulerian(long m, long i) {
    const auto& row = eulerian_row(m);
    if (i < 0 || i >= static_cast<long>(row.size())) return 0;
    return row[static_cast<size_t>(i)];
}

// Dense univariate polynomial over Rat. Zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Rat c) { coeffs_.push_back(std::move(c)); trim(); }
    explicit UniPoly(long c) : UniPoly(Rat(c)) {}
    explicit UniPoly(const Int& c) : UniPoly(Rat(c)) {}
    explicit UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UniPoly variable() { return UniPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
    static UniPoly monomial(int deg, Rat c = Rat(1)) {
        std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
        v.back() = std::move(c);
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rat(0);
        return coeffs_[static_cast<size_t>(i)];
    }
    Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly& operator+=(const UniPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { a += b; return a; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { a -= b; return a; }
    friend UniPoly operator-(const UniPoly& a) { return UniPoly() - a; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return UniPoly(std::move(out));
    }
    UniPoly& operator*=(const UniPoly& o) { *this = *this * o; return *this; }

    UniPoly& scale(const Rat& s) {
        if (s == 0) { coeffs_.clear(); return *this; }
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    friend UniPoly operator*(Rat s, UniPoly p) { p.scale(s); return p; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Int eval_int(long x) const {
        Rat v = eval(Rat(x));
        if (v.get_den() != 1) throw std::domain_error("UniPoly::eval_int: non-integer value");
        return v.get_num();
    }

    // p(a*t + b)
    UniPoly compose_linear(const Rat& a, const Rat& b) const {
        UniPoly lin(std::vector<Rat>{b, a});
        UniPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * lin;
            acc += UniPoly(*it);
        }
        return acc;
    }

    // t^d * p(1/t); requires d >= deg(p)
    UniPoly reversed(int d) const {
        if (degree() > d) throw std::invalid_argument("UniPoly::reversed: d < degree");
        std::vector<Rat> out(static_cast<size_t>(d) + 1, Rat(0));
        for (int i = 0; i <= degree(); ++i) out[static_cast<size_t>(d - i)] = coeff(i);
        return UniPoly(std::move(out));
    }

    UniPoly truncated(int max_deg) const {
        if (max_deg < 0) return UniPoly();
        std::vector<Rat> out(coeffs_.begin(),
                             coeffs_.begin() + std::min(coeffs_.size(), static_cast<size_t>(max_deg) + 1));
        return UniPoly(std::move(out));
    }

    UniPoly shifted_up(int d) const {  // t^d * p
        if (is_zero()) return UniPoly();
        std::vector<Rat> out(static_cast<size_t>(d), Rat(0));
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return UniPoly(std::move(out));
    }

    // exact division by t^d; throws if lower coefficients are nonzero
    UniPoly divided_by_power(int d) const {
        for (int i = 0; i < d; ++i)
            if (coeff(i) != 0) throw std::domain_error("UniPoly: not divisible by t^d");
        if (is_zero()) return UniPoly();
        std::vector<Rat> out(coeffs_.begin() + std::min<size_t>(coeffs_.size(), static_cast<size_t>(d)),
                             coeffs_.end());
        return UniPoly(std::move(out));
    }

    bool integral() const {
        for (const auto& c : coeffs_)
            if (c.get_den() != 1) return false;
        return true;
    }
    bool nonnegative() const {
        for (const auto& c : coeffs_)
            if (c < 0) return false;
        return true;
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rat> coeffs_;
};

inline std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rat c = coeff(i);
        if (c == 0) continue;
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// Sparse bivariate polynomial; no stored zero coefficients.
class BiPoly {
public:
    using Key = std::pair<int, int>;  // (deg_x, deg_y)

    BiPoly() = default;
    explicit BiPoly(Rat c) { add(0, 0, std::move(c)); }
    explicit BiPoly(long c) : BiPoly(Rat(c)) {}

    static BiPoly var_x() { BiPoly p; p.add(1, 0, Rat(1)); return p; }
    static BiPoly var_y() { BiPoly p; p.add(0, 1, Rat(1)); return p; }
    static BiPoly monomial(int dx, int dy, Rat c = Rat(1)) { BiPoly p; p.add(dx, dy, std::move(c)); return p; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rat>& terms() const { return terms_; }

    Rat coeff(int dx, int dy) const {
        auto it = terms_.find({dx, dy});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add(int dx, int dy, Rat c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace({dx, dy}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { a += b; return a; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { a -= b; return a; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return out;
    }
    BiPoly& operator*=(const BiPoly& o) { *this = *this * o; return *this; }
    BiPoly& scale(const Rat& s) {
        if (s == 0) { terms_.clear(); return *this; }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend BiPoly operator*(Rat s, BiPoly p) { p.scale(s); return p; }

    BiPoly pow(int e) const {
        BiPoly acc(Rat(1));
        for (int i = 0; i < e; ++i) acc *= *this;
        return acc;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat acc(0);
        for (const auto& [k, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < k.first; ++i) t *= x;
            for (int i = 0; i < k.second; ++i) t *= y;
            acc += t;
        }
        return acc;
    }

    // substitute univariate polynomials for x and y
    UniPoly eval_poly(const UniPoly& px, const UniPoly& py) const {
        int mx = 0, my = 0;
        for (const auto& [k, c] : terms_) { mx = std::max(mx, k.first); my = std::max(my, k.second); }
        std::vector<UniPoly> powx(static_cast<size_t>(mx) + 1), powy(static_cast<size_t>(my) + 1);
        powx[0] = UniPoly(1L);
        for (int i = 1; i <= mx; ++i) powx[static_cast<size_t>(i)] = powx[static_cast<size_t>(i - 1)] * px;
        powy[0] = UniPoly(1L);
        for (int i = 1; i <= my; ++i) powy[static_cast<size_t>(i)] = powy[static_cast<size_t>(i - 1)] * py;
        UniPoly acc;
        for (const auto& [k, c] : terms_)
            acc += c * (powx[static_cast<size_t>(k.first)] * powy[static_cast<size_t>(k.second)]);
        return acc;
    }

    bool integral() const {
        for (const auto& [k, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }
    bool nonnegative() const {
        for (const auto& [k, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    // degree-lex: higher total degree first, ties broken by higher x-degree
    std::string to_string(const std::string& vx = "x", const std::string& vy = "y") const;

private:
    std::map<Key, Rat> terms_;
};

inline std::string BiPoly::to_string(const std::string& vx, const std::string& vy) const {
    if (is_zero()) return "0";
    std::vector<Key> keys;
    keys.reserve(terms_.size());
    for (const auto& [k, c] : terms_) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& k : keys) {
        Rat c = terms_.at(k);
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool has_var = k.first > 0 || k.second > 0;
        if (!has_var) {
            os << rat_to_string(a);
        } else {
            bool need_star = false;
            if (a != 1) { os << rat_to_string(a); need_star = true; }
            if (k.first > 0) {
                if (need_star) os << "*";
                os << vx;
                if (k.first > 1) os << "^" << k.first;
                need_star = true;
            }
            if (k.second > 0) {
                if (need_star) os << "*";
                os << vy;
                if (k.second > 1) os << "^" << k.second;
            }
        }
    }
    return os.str();
}

inline UniPoly eulerian_poly(long m) {
    const auto& row = eulerian_row(m);
    std::vector<Rat> c;
    c.reserve(row.size());
    for (const auto& v : row) c.emplace_back(v);
    return UniPoly(std::move(c));
}

// binom(a*t + b_offset, m) expanded as a polynomial in t
inline UniPoly poly_binom(long a, long b_offset, long m) {
    if (m < 0) throw std::invalid_argument("poly_binom: m < 0");
    UniPoly acc(1L);
    for (long i = 0; i < m; ++i)
        acc *= UniPoly(std::vector<Rat>{Rat(b_offset - i), Rat(a)});
    acc.scale(Rat(Int(1), factorial(m)));
    return acc;
}

// same product but with every intermediate truncated past t^max_deg;
// O(m * max_deg) ring operations
inline UniPoly poly_binom_truncated(long a, long b_offset, long m, int max_deg) {
    if (m < 0) throw std::invalid_argument("poly_binom_truncated: m < 0");
    if (max_deg < 0) throw std::invalid_argument("poly_binom_truncated: max_deg < 0");
    UniPoly acc(1L);
    for (long i = 0; i < m; ++i) {
        acc *= UniPoly(std::vector<Rat>{Rat(b_offset - i), Rat(a)});
        acc = acc.truncated(max_deg);
    }
    acc.scale(Rat(Int(1), factorial(m)));
    return acc;
}

// Newton interpolation through points with distinct abscissae.
inline UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    const size_t m = points.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolate: duplicate abscissae");
    // divided differences
    std::vector<Rat> dd;
    dd.reserve(m);
    for (const auto& p : points) dd.push_back(p.second);
    for (size_t level = 1; level < m; ++level)
        for (size_t i = m - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);
            if (i == level) break;
        }
    UniPoly acc;
    for (size_t i = m; i-- > 0;) {
        acc *= UniPoly(std::vector<Rat>{-points[i].first, Rat(1)});
        acc += UniPoly(dd[i]);
    }
    return acc;
}

}  // namespace matval
