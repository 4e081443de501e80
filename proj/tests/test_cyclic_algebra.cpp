#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iterstbc/cyclic_algebra.hpp"
#include "test_util.hpp"

using namespace iterstbc;

namespace {
AlgebraPtr quaternion_6x3() {
    TowerSpec t = tower_6x3();
    return CyclicAlgebra::create(t, -t.ambient()->one());
}
AlgebraPtr quaternion_8x4() {
    TowerSpec t = tower_8x4();
    return CyclicAlgebra::create(t, -t.ambient()->one());
}
}  // namespace

TEST_CASE("constructor enforces c in F0") {
    TowerSpec t = tower_6x3();
    CHECK_THROWS_AS(CyclicAlgebra::create(t, omega_of(t.ambient())), std::invalid_argument);
    CHECK_THROWS_AS(CyclicAlgebra::create(t, t.ambient()->zero()), std::invalid_argument);
    CHECK_NOTHROW(CyclicAlgebra::create(t, t.ambient()->from_rational(Rational(5))));
}

TEST_CASE("e*e = c in the quaternion algebra") {
    auto D = quaternion_6x3();
    DElement e = D->basis_e(1);
    DElement sq = e * e;
    CHECK(sq == D->from_K(-D->field()->one()));
}

TEST_CASE("multiplicative identity") {
    auto D = quaternion_6x3();
    SplitMix64 rng(41);
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        CHECK(x * D->one() == x);
        CHECK(D->one() * x == x);
    }
}

TEST_CASE("quaternion product formula") {
    // (x0 + e x1)(u0 + e u1) = (x0 u0 + c s(x1) u1) + e (x1 u0 + s(x0) u1)
    auto D = quaternion_6x3();
    const auto& sigma = D->tower().sigma();
    SplitMix64 rng(43);
    for (int i = 0; i < 15; ++i) {
        DElement x = testutil::random_d(D, rng);
        DElement u = testutil::random_d(D, rng);
        DElement prod = x * u;
        CycloElement c = D->c();
        CycloElement p0 = x.coord(0) * u.coord(0) + c * apply_aut(sigma, x.coord(1)) * u.coord(1);
        CycloElement p1 = x.coord(1) * u.coord(0) + apply_aut(sigma, x.coord(0)) * u.coord(1);
        CHECK(prod.coord(0) == p0);
        CHECK(prod.coord(1) == p1);
    }
}

TEST_CASE("associativity on random triples") {
    auto D = quaternion_8x4();
    SplitMix64 rng(47);
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        DElement y = testutil::random_d(D, rng);
        DElement z = testutil::random_d(D, rng);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("left regular representation") {
    auto D = quaternion_6x3();
    CHECK(lambda_of(D->one()) == KMatrix::identity(2, D->field()));
    // lambda(x0 + e x1) = [[x0, -sigma(x1)], [x1, sigma(x0)]] for c = -1
    SplitMix64 rng(53);
    DElement x = testutil::random_d(D, rng);
    KMatrix lam = lambda_of(x);
    const auto& sigma = D->tower().sigma();
    CHECK(lam.at(0, 0) == x.coord(0));
    CHECK(lam.at(0, 1) == -apply_aut(sigma, x.coord(1)));
    CHECK(lam.at(1, 0) == x.coord(1));
    CHECK(lam.at(1, 1) == apply_aut(sigma, x.coord(0)));
    // lambda(e) has c in the top-right corner; lambda(e) coords(y) = coords(e y)
    DElement e = D->basis_e(1);
    KMatrix lam_e = lambda_of(e);
    CHECK(lam_e.at(0, 1) == D->c());
    for (int i = 0; i < 10; ++i) {
        DElement y = testutil::random_d(D, rng);
        CHECK(lam_e.apply(y.coords()) == (e * y).coords());
        CHECK(lambda_of(x).apply(y.coords()) == (x * y).coords());
    }
}

TEST_CASE("lambda is a homomorphism") {
    auto D = quaternion_6x3();
    SplitMix64 rng(59);
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        DElement y = testutil::random_d(D, rng);
        CHECK(lambda_of(x * y) == lambda_of(x) * lambda_of(y));
    }
}

TEST_CASE("reduced norm") {
    auto D = quaternion_6x3();
    CHECK(d_norm(D->one()) == D->field()->one());
    // d_norm(e) = -c for m = 2
    CHECK(d_norm(D->basis_e(1)) == D->field()->one());  // -(-1)
    // multiplicativity and sigma-invariance
    SplitMix64 rng(61);
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        DElement y = testutil::random_d(D, rng);
        CHECK(d_norm(x * y) == d_norm(x) * d_norm(y));
        CHECK(fixed_by(d_norm(x), D->tower().sigma()));
    }
    // norm form x0 sigma(x0) + x1 sigma(x1) for c = -1 with sigma = conjugation
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        const auto& s = D->tower().sigma();
        CycloElement form = x.coord(0) * apply_aut(s, x.coord(0)) +
                            x.coord(1) * apply_aut(s, x.coord(1));
        CHECK(d_norm(x) == form);
    }
}

TEST_CASE("tau extension") {
    auto D = quaternion_6x3();
    CHECK(apply_tau(D->one()) == D->one());
    SplitMix64 rng(67);
    unsigned n = D->tower().n();
    for (int i = 0; i < 10; ++i) {
        DElement x = testutil::random_d(D, rng);
        DElement y = testutil::random_d(D, rng);
        // order n
        DElement t = x;
        for (unsigned j = 0; j < n; ++j) t = apply_tau(t);
        CHECK(t == x);
        // multiplicative (c fixed by tau)
        CHECK(apply_tau(x * y) == apply_tau(x) * apply_tau(y));
        // lambda(tau~(x)) = tau(lambda(x)) entrywise
        CHECK(lambda_of(apply_tau(x)) == lambda_of(x).mapped(D->tower().tau()));
        // norm compatibility
        CHECK(d_norm(apply_tau(x)) == apply_aut(D->tower().tau(), d_norm(x)));
    }
}

TEST_CASE("inverse in D") {
    auto D = quaternion_6x3();
    SplitMix64 rng(71);
    int done = 0;
    while (done < 8) {
        DElement x = testutil::random_d(D, rng);
        if (d_norm(x).is_zero()) continue;
        CHECK(x * d_inv(x) == D->one());
        CHECK(d_inv(x) * x == D->one());
        ++done;
    }
}

TEST_CASE("quaternion definiteness detection") {
    CHECK(is_division_quaternion_definite(*quaternion_6x3()));
    CHECK(is_division_quaternion_definite(*quaternion_8x4()));
    // c = +1 splits: (1 - e)(1 + e) = 0
    TowerSpec t = tower_6x3();
    auto split = CyclicAlgebra::create(t, t.ambient()->one());
    CHECK_FALSE(is_division_quaternion_definite(*split));
    DElement zero_prod = (split->one() - split->basis_e(1)) * (split->one() + split->basis_e(1));
    CHECK(zero_prod.is_zero());
}
