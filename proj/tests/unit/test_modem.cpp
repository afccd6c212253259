#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "swipt/modem.hpp"
#include "swipt/rng.hpp"

using namespace swipt;

TEST_CASE("alphabet invariants") {
    for (const int M : {2, 4, 8, 16, 3}) {
        const auto a = mpsk_alphabet(M);
        REQUIRE(a.order() == M);
        CHECK(a.symbol(1) == cplx(1.0, 0.0));
        for (const cplx x : a.symbols()) CHECK(std::abs(std::abs(x) - 1.0) < 1e-12);
        for (int i = 1; i <= M; ++i) {
            for (int j = 1; j <= M; ++j) {
                CHECK(std::abs(a.symbol(i) * a.symbol(j) - a.symbol(a.product_index(i, j))) < 1e-12);
            }
        }
    }
}

TEST_CASE("small alphabets") {
    const auto b = mpsk_alphabet(2);
    CHECK(b.symbol(2) == cplx(-1.0, 0.0));
    const auto q = mpsk_alphabet(4);
    CHECK(q.symbol(2) == cplx(0.0, 1.0));
    CHECK(q.symbol(3) == cplx(-1.0, 0.0));
    CHECK(q.symbol(4) == cplx(0.0, -1.0));
    CHECK_THROWS_AS(mpsk_alphabet(1), std::invalid_argument);
    CHECK_THROWS_AS(q.symbol(5), std::invalid_argument);
}

TEST_CASE("differential encoding recurrence") {
    const auto a = mpsk_alphabet(8);
    Rng rng(9);
    std::vector<int> info(5000);
    for (auto& i : info) i = rng.index(8) + 1;
    const auto s = diff_encode(info, a);
    REQUIRE(s.coded.size() == info.size() + 1);
    CHECK(s.coded[0] == cplx(1.0, 0.0));
    for (std::size_t k = 1; k < s.coded.size(); ++k) {
        CHECK(std::abs(s.coded[k] - s.coded[k - 1] * a.symbol(info[k - 1])) < 1e-12);
        CHECK(std::abs(std::abs(s.coded[k]) - 1.0) < 1e-12);
    }
    const std::vector<int> bad{1, 9};
    CHECK_THROWS_AS(diff_encode(bad, a), std::invalid_argument);
}

TEST_CASE("noiseless round trip through relay_detect") {
    for (const int M : {2, 4, 8, 16}) {
        const auto a = mpsk_alphabet(M);
        Rng rng(M);
        std::vector<int> info(2000);
        for (auto& i : info) i = rng.index(M) + 1;
        const auto s = diff_encode(info, a);
        const cplx h = std::polar(0.3, 1.1);
        for (std::size_t k = 1; k < s.coded.size(); ++k) {
            CHECK(relay_detect(h * s.coded[k - 1], h * s.coded[k], a) == info[k - 1]);
        }
    }
}

TEST_CASE("relay_detect matches the nearest rotated-reference oracle") {
    // |y_prev x_m| is the same for every m, so the correlation argmax is the distance argmin.
    for (const int M : {2, 4, 8}) {
        const auto a = mpsk_alphabet(M);
        Rng rng(100 + M);
        for (int t = 0; t < 20000; ++t) {
            const cplx yp = rng.complex_normal(1.0);
            const cplx yc = rng.complex_normal(1.0);
            int oracle = 1;
            double best = std::norm(yc - yp * a.symbol(1));
            for (int m = 2; m <= M; ++m) {
                const double d = std::norm(yc - yp * a.symbol(m));
                if (d < best) {
                    best = d;
                    oracle = m;
                }
            }
            CHECK(relay_detect(yp, yc, a) == oracle);
        }
    }
}

TEST_CASE("ties resolve to the smallest index") {
    const auto b = mpsk_alphabet(2);
    CHECK(relay_detect(cplx(1.0, 0.0), cplx(0.0, 1.0), b) == 1);
    CHECK(relay_detect(cplx(0.0, 0.0), cplx(0.0, 0.0), mpsk_alphabet(8)) == 1);
}

TEST_CASE("worked encoding and detection cases") {
    const auto q = mpsk_alphabet(4);
    const std::vector<int> ones(6, 1);
    for (const cplx c : diff_encode(ones, q).coded) CHECK(c == cplx(1.0, 0.0));
    const std::vector<int> quarter(5, 2);
    const auto s = diff_encode(quarter, q);
    const std::vector<cplx> expected{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}, {0, 1}};
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(s.coded[k] - expected[k]) < 1e-15);
    CHECK(relay_detect(1.0, q.symbol(3), q) == 3);
    CHECK(relay_detect(0.0, q.symbol(3), q) == 1);
}

TEST_CASE("relay_detect is rotation and scale invariant") {
    const auto a = mpsk_alphabet(8);
    Rng rng(12);
    for (int t = 0; t < 20000; ++t) {
        const cplx yp = rng.complex_normal(1.0);
        const cplx yc = rng.complex_normal(1.0);
        const int d = relay_detect(yp, yc, a);
        const cplx rot = std::polar(1.0, 6.283185307 * rng.uniform());
        const double scale = 0.01 + 100.0 * rng.uniform();
        CHECK(relay_detect(rot * yp, rot * yc, a) == d);
        CHECK(relay_detect(scale * yp, scale * yc, a) == d);
    }
}
