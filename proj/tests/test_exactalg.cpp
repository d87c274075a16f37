#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <matval/exactalg.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace matval;

namespace {

// independent descent counter over explicit permutations
Int eulerian_brute(int m, int d) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Int count = 0;
    do {
        int des = 0;
        for (int i = 0; i + 1 < m; ++i)
            if (perm[i] > perm[i + 1]) ++des;
        if (des == d) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

UniPoly random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), num(-9, 9), den(1, 5);
    std::vector<Rat> c(deg(rng) + 1);
    for (auto& x : c) x = make_rat(num(rng), den(rng));
    return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("binom conventions") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(-1, 0) == 0);
    CHECK(binom(-1, 0, BinomConvention::NegUpperExtended) == 1);
    CHECK(binom(3, 5) == 0);
    CHECK(binom(3, 5, BinomConvention::NegUpperExtended) == 0);
    CHECK(binom(-2, 3, BinomConvention::NegUpperExtended) == -4);  // (-2)(-3)(-4)/6
    CHECK(binom(4, 0) == 1);
    CHECK(binom(0, 0) == 1);
    CHECK(binom(7, 7) == 1);
    CHECK(binom(2, 3, BinomConvention::NegUpperExtended) == 0);  // falling factorial hits 0
}

TEST_CASE("poly_binom expansion") {
    CHECK(poly_binom(1, 1, 1) == UniPoly(std::vector<Rat>{Rat(1), Rat(1)}));
    // (2t+2)(2t+1)/2 = 2t^2+3t+1
    CHECK(poly_binom(2, 2, 2) == UniPoly(std::vector<Rat>{Rat(1), Rat(3), Rat(2)}));
    CHECK(poly_binom(0, 3, 2) == UniPoly(3L));
    // evaluation agrees with ZeroOutside binom whenever a*t+b >= 0
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 4; ++b)
            for (long m = 0; m <= 4; ++m)
                for (long t = 0; t <= 5; ++t)
                    if (a * t + b >= 0)
                        CHECK(poly_binom(a, b, m).eval_int(t) == binom(a * t + b, m));
}

TEST_CASE("poly_binom_truncated") {
    CHECK(poly_binom_truncated(2, 2, 2, 1) == UniPoly(std::vector<Rat>{Rat(1), Rat(3)}));
    CHECK(poly_binom_truncated(2, 2, 2, 5) == poly_binom(2, 2, 2));
    CHECK(poly_binom_truncated(1, 4, 3, 0) == UniPoly(std::vector<Rat>{Rat(4)}));
    // the one huge case stays fast and matches low-order coefficients of the full product
    UniPoly big = poly_binom_truncated(3, 3587, 3588, 2);
    CHECK(big.degree() == 2);
}

TEST_CASE("eulerian numbers") {
    CHECK(eulerian(3, 1) == 4);
    for (long m = 1; m <= 6; ++m) CHECK(eulerian(m, 0) == 1);
    Int total = 0;
    for (long i = 0; i < 4; ++i) total += eulerian(4, i);
    CHECK(total == 24);
    for (int m = 1; m <= 8; ++m)
        for (int d = 0; d < m; ++d)
            CHECK(eulerian(m, d) == eulerian_brute(m, d));
    // palindromicity A_m(x) = x^{m-1} A_m(1/x)
    for (long m = 1; m <= 8; ++m) {
        UniPoly a = eulerian_poly(m);
        CHECK(a == a.reversed(static_cast<int>(m) - 1));
    }
    CHECK(eulerian_poly(0) == UniPoly(1L));
}

TEST_CASE("interpolation") {
    std::vector<std::pair<Rat, Rat>> pts = {{Rat(0), Rat(1)}, {Rat(1), Rat(3)}, {Rat(2), Rat(7)}};
    CHECK(interpolate(pts) == UniPoly(std::vector<Rat>{Rat(1), Rat(1), Rat(1)}));
    CHECK(interpolate({{Rat(0), Rat(5)}}) == UniPoly(5L));
    // reproduces a known cubic exactly
    UniPoly cubic(std::vector<Rat>{Rat(2), Rat(-1, 3), Rat(0), Rat(7, 2)});
    std::vector<std::pair<Rat, Rat>> sample;
    for (long t = -1; t <= 2; ++t) sample.push_back({Rat(t), cubic.eval(Rat(t))});
    CHECK(interpolate(sample) == cubic);
    CHECK_THROWS_AS(interpolate({{Rat(1), Rat(0)}, {Rat(1), Rat(2)}}), std::invalid_argument);
}

TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 60; ++iter) {
        UniPoly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
    std::uniform_int_distribution<int> d(0, 3), v(-4, 4);
    auto random_bi = [&]() {
        BiPoly p;
        for (int i = 0; i < 5; ++i) p.add(d(rng), d(rng), Rat(v(rng)));
        return p;
    };
    for (int iter = 0; iter < 40; ++iter) {
        BiPoly a = random_bi(), b = random_bi(), c = random_bi();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("polynomial utilities") {
    UniPoly p(std::vector<Rat>{Rat(1), Rat(2), Rat(1)});  // (t+1)^2
    CHECK(p.compose_linear(Rat(1), Rat(-1)) == UniPoly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}));
    CHECK(p.eval(Rat(2)) == 9);
    CHECK(p.reversed(2) == p);
    CHECK(p.shifted_up(2).divided_by_power(2) == p);
    CHECK_THROWS(p.divided_by_power(1));
    CHECK(p.to_string("t") == "t^2 + 2*t + 1");
    UniPoly q(std::vector<Rat>{Rat(-1, 2), Rat(0), Rat(3)});
    CHECK(q.to_string("x") == "3*x^2 - 1/2");

    BiPoly tu = BiPoly::monomial(2, 0) + BiPoly::monomial(1, 0, Rat(2)) + BiPoly::monomial(0, 1, Rat(2)) +
                BiPoly::monomial(0, 2);
    CHECK(tu.to_string() == "x^2 + y^2 + 2*x + 2*y");
    CHECK(tu.eval(Rat(1), Rat(1)) == 6);
    // substitute x -> 1-t, y -> 0
    UniPoly sub = tu.eval_poly(UniPoly(std::vector<Rat>{Rat(1), Rat(-1)}), UniPoly());
    CHECK(sub == UniPoly(std::vector<Rat>{Rat(3), Rat(-4), Rat(1)}));
}
