#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "iterstbc/codebook.hpp"
#include "test_util.hpp"

using namespace iterstbc;

TEST_CASE("constellations") {
    Constellation q4 = Constellation::qam(4);
    CHECK(q4.symbols.size() == 4);
    CHECK(q4.average_energy == Rational(2));
    Constellation q16 = Constellation::qam(16);
    CHECK(q16.symbols.size() == 16);
    CHECK(q16.average_energy == Rational(10));  // 2(M-1)/3
    Constellation h4 = Constellation::hex(4);
    CHECK(h4.symbols.size() == 4);
    CHECK(h4.average_energy == Rational(1));
    CHECK(h4.contains({0, 1}));
    CHECK_FALSE(h4.contains({1, 1}));
    CHECK_THROWS_AS(Constellation::qam(8), std::invalid_argument);
    CHECK_THROWS_AS(Constellation::hex(16), std::invalid_argument);
}

TEST_CASE("presets construct and validate their ideal bases") {
    CHECK(code_6x3_right().theta_basis.size() == 3);
    CHECK(code_6x3_left().theta_basis.size() == 3);
    CHECK(code_8x4_right().theta_basis.size() == 4);
    CHECK_THROWS_AS(code_by_name("nope"), std::invalid_argument);
}

TEST_CASE("zero symbols give the zero matrix") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    std::vector<Symbol> symbols(18, Symbol{0, 0});
    Codeword w = encode(spec, hex, symbols);
    CHECK(w.exact_matrix.is_zero());
    CHECK(w.element.is_zero());
}

TEST_CASE("symbol count and membership validation") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    CHECK_THROWS_AS(encode(spec, hex, std::vector<Symbol>(17, Symbol{0, 0})),
                    std::invalid_argument);
    std::vector<Symbol> bad(18, Symbol{0, 0});
    bad[0] = {2, 0};  // outside 4-HEX
    CHECK_THROWS_AS(encode(spec, hex, bad), std::invalid_argument);
    // 18 symbols accepted for the 6x3 code, 32 for the 8x4 code
    CHECK(code_6x3_right().symbols_per_codeword() == 18);
    CHECK(code_8x4_right().symbols_per_codeword() == 32);
    Constellation q4 = Constellation::qam(4);
    CHECK_NOTHROW(encode(code_8x4_right(), q4,
                         std::vector<Symbol>(32, Symbol{1, 1})));
}

TEST_CASE("single-symbol codeword is block diagonal") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    std::vector<Symbol> symbols(18, Symbol{0, 0});
    symbols[0] = {1, 0};  // s_1 = 1: x_0 = theta_1
    Codeword w = encode(spec, hex, symbols);
    // expected: diag(lambda(theta_1), tau lambda(theta_1), tau^2 lambda(theta_1))
    const auto& t = spec.algebra->tower();
    DElement x0 = spec.algebra->D()->from_K(spec.theta_basis[0]);
    KMatrix lam0 = lambda_of(x0);
    for (unsigned b = 0; b < 3; ++b) {
        KMatrix expect = lam0.mapped(t.tau().power(b));
        for (unsigned r = 0; r < 2; ++r)
            for (unsigned c = 0; c < 2; ++c) CHECK(w.exact_matrix.at(2 * b + r, 2 * b + c) == expect.at(r, c));
    }
    // off-diagonal blocks vanish
    for (unsigned r = 0; r < 6; ++r)
        for (unsigned c = 0; c < 6; ++c)
            if (r / 2 != c / 2) CHECK(w.exact_matrix.at(r, c).is_zero());
    // determinant is the product of the conjugate block determinants
    DetInfo info = exact_det(spec, w);
    CycloElement expect_det = spec.algebra->field()->one();
    for (unsigned b = 0; b < 3; ++b)
        expect_det = expect_det * apply_aut(t.tau().power(b), lam0.det());
    CHECK(info.det == expect_det);
}

TEST_CASE("encode is additive in the symbol vector") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    SplitMix64 rng(229);
    for (int i = 0; i < 5; ++i) {
        auto s1 = random_symbols(spec, hex, 229, i * 2);
        auto s2 = random_symbols(spec, hex, 229, i * 2 + 1);
        Codeword w1 = encode(spec, hex, s1);
        Codeword w2 = encode(spec, hex, s2);
        AElement combined = w1.element + w2.element;
        CHECK(lambda_matrix(combined) == w1.exact_matrix + w2.exact_matrix);
    }
}

TEST_CASE("determinants of the right preset land in Z[omega] with |det|^2 >= 1") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    unsigned nonzero = 0;
    for (int i = 0; i < 40; ++i) {
        auto symbols = random_symbols(spec, hex, 31337, i);
        Codeword w = encode(spec, hex, symbols);
        DetInfo info = exact_det(spec, w);
        CHECK(info.in_L);
        if (info.det.is_zero()) continue;
        ++nonzero;
        REQUIRE(info.quad_coords.has_value());
        CHECK(info.integral);
        REQUIRE(info.abs_sq.has_value());
        CHECK(*info.abs_sq >= Rational(1));
    }
    CHECK(nonzero > 0);
}

TEST_CASE("float determinant magnitude matches the exact determinant") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    for (int i = 0; i < 3; ++i) {
        auto symbols = random_symbols(spec, hex, 5150 + i, i);
        Codeword w = encode(spec, hex, symbols);
        DetInfo info = exact_det(spec, w);
        // float determinant via LU on the embedded matrix
        unsigned n = w.exact_matrix.rows();
        std::vector<std::vector<std::complex<double>>> m(n, std::vector<std::complex<double>>(n));
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) m[r][c] = embed(w.exact_matrix.at(r, c));
        std::complex<double> det{1.0, 0.0};
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = col;
            for (unsigned r = col + 1; r < n; ++r)
                if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            if (piv != col) {
                std::swap(m[piv], m[col]);
                det = -det;
            }
            det *= m[col][col];
            if (std::abs(m[col][col]) < 1e-14) break;
            for (unsigned r = col + 1; r < n; ++r) {
                auto f = m[r][col] / m[col][col];
                for (unsigned c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            }
        }
        double exact_mag = std::abs(embed_complex(info.det));
        CHECK(std::abs(std::abs(det) - exact_mag) <= 1e-6 * std::max(1.0, exact_mag));
    }
}

TEST_CASE("min det survey on the right preset") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    MinDetStats stats = min_det_survey(spec, hex, 200, 42);
    CHECK(stats.samples > 0);
    CHECK(stats.zero_dets == 0);
    REQUIRE(stats.min_abs_sq.has_value());
    CHECK(*stats.min_abs_sq >= Rational(1));
    REQUIRE(stats.normalized_min.has_value());
    // normalized = min * 2^18 / (28 E)^9 with E = 1
    Rational factor = Rational(1);
    for (int i = 0; i < 9; ++i) factor *= rat(4, 28);
    CHECK(*stats.normalized_min == *stats.min_abs_sq * factor);
}

TEST_CASE("survey of only zero codewords is rejected") {
    CodeSpec spec = code_6x3_right();
    Constellation hex = Constellation::hex(4);
    CHECK_THROWS_AS(min_det_survey(spec, hex, 0, 1), std::invalid_argument);
}

TEST_CASE("diversity evidence: division presets show no violation") {
    Constellation hex = Constellation::hex(4);
    DiversityReport r1 = diversity_evidence(code_6x3_right(), hex, 60, 7);
    CHECK(r1.samples > 0);
    CHECK(r1.violations == 0);
    DiversityReport r2 = diversity_evidence(code_6x3_left(), hex, 60, 7);
    CHECK(r2.violations == 0);
}

TEST_CASE("diversity evidence: broken preset d = 1 is caught") {
    // same tower and basis as the right preset but with d = 1
    CodeSpec good = code_6x3_right();
    auto D = good.algebra->D();
    CodeSpec broken{"broken-d1",
                    IteratedAlgebra::create(D, 3, D->one(), IterVariant::Right),
                    good.theta_basis, good.ring_unit, good.native_kind};
    Constellation hex = Constellation::hex(4);
    // theta_1 - f theta_1 is a left zero divisor when d = 1 (kill it with
    // y = (conjugate-product coordinates)), and it is encodable: symbol 1
    // in layer 0 and -1 in layer 1, both at the first basis slot.
    std::vector<Symbol> witness(18, Symbol{0, 0});
    witness[0] = {1, 0};
    witness[6] = {-1, 0};
    DiversityReport r = diversity_evidence(broken, hex, 40, 11, 0, {witness});
    CHECK(r.samples > 0);
    CHECK(r.violations > 0);
    REQUIRE(r.counterexample.has_value());
    CHECK(r.counterexample->exact_matrix.det().is_zero());
}

TEST_CASE("normalization identity") { CHECK(normalization_identity_6x3()); }

TEST_CASE("exhaustive one-layer minimum determinant") {
    // the true minimum over all 4^6 one-layer codewords of the right preset
    CodeSpec spec = code_6x3_right();
    MinDetStats stats = min_det_exhaustive_one_layer(spec, Constellation::hex(4));
    CHECK(stats.samples == 4096);  // every 4-HEX symbol is nonzero
    CHECK(stats.zero_dets == 0);
    REQUIRE(stats.min_abs_sq.has_value());
    CHECK(*stats.min_abs_sq >= Rational(1));
}

TEST_CASE("8x4 preset determinants stay in Z[i]") {
    CodeSpec spec = code_8x4_right();
    Constellation q4 = Constellation::qam(4);
    for (int i = 0; i < 3; ++i) {
        auto symbols = random_symbols(spec, q4, 999, i);
        Codeword w = encode(spec, q4, symbols);
        DetInfo info = exact_det(spec, w);
        CHECK(info.in_L);
        REQUIRE(info.quad_coords.has_value());
        CHECK(info.integral);
    }
}
