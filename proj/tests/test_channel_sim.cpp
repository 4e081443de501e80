#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iterstbc/channel_sim.hpp"

using namespace iterstbc;

namespace {
EmbeddedCodebook small_codebook() {
    static EmbeddedCodebook cb =
        build_one_layer_codebook(code_6x3_right(), Constellation::hex(4));
    return cb;
}
}  // namespace

TEST_CASE("one-layer codebook size") {
    EmbeddedCodebook cb = small_codebook();
    CHECK(cb.symbol_vectors.size() == 4096);  // 4^6
    CHECK(cb.matrices.size() == 4096);
    CHECK(cb.matrices.front().rows == 6);
}

TEST_CASE("gaussian draws are reproducible and scheduling independent") {
    CMatrix h1 = draw_channel(7, 3, 3, 6);
    CMatrix h2 = draw_channel(7, 3, 3, 6);
    CHECK(h1.data == h2.data);
    CMatrix h3 = draw_channel(7, 4, 3, 6);
    CHECK(h1.data != h3.data);
    CMatrix n1 = draw_noise(7, 3, 3, 6);
    CHECK(h1.data != n1.data);
}

TEST_CASE("noiseless decoding is error free") {
    EmbeddedCodebook cb = small_codebook();
    ChannelConfig cfg;
    cfg.n_r = 3;
    cfg.rho = 4.0;
    cfg.trials = 25;
    cfg.seed = 5;
    SimResult r = simulate(cb, cfg, /*noise_scale=*/0.0);
    CHECK(r.errors == 0);
    CHECK(r.trials == 25);
}

TEST_CASE("decoding a one-codeword codebook") {
    EmbeddedCodebook cb = small_codebook();
    cb.matrices.resize(1);
    cb.symbol_vectors.resize(1);
    CMatrix H = draw_channel(1, 0, 3, 6);
    CMatrix Y = cmul(H, cb.matrices[0]);
    CHECK(ml_decode_exhaustive(Y, H, 1.0, cb) == 0);
    EmbeddedCodebook empty = cb;
    empty.matrices.clear();
    CHECK_THROWS_AS(ml_decode_exhaustive(Y, H, 1.0, empty), std::invalid_argument);
}

TEST_CASE("simulation validates inputs") {
    EmbeddedCodebook cb = small_codebook();
    ChannelConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(simulate(cb, cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.rho = -1;
    CHECK_THROWS_AS(simulate(cb, cfg), std::invalid_argument);
}

TEST_CASE("seed determinism") {
    EmbeddedCodebook cb = small_codebook();
    ChannelConfig cfg;
    cfg.n_r = 3;
    cfg.rho = 2.0;
    cfg.trials = 40;
    cfg.seed = 11;
    SimResult a = simulate(cb, cfg);
    SimResult b = simulate(cb, cfg);
    CHECK(a.errors == b.errors);
}

TEST_CASE("higher SNR is strictly better under matched draws") {
    // same seed: identical H, N and codeword draws, only the scaling moves
    EmbeddedCodebook cb = small_codebook();
    ChannelConfig lo;
    lo.n_r = 3;
    lo.rho = 1.0;
    lo.trials = 1000;
    lo.seed = 7;
    ChannelConfig hi = lo;
    hi.rho = 100.0;
    SimResult r_lo = simulate(cb, lo);
    SimResult r_hi = simulate(cb, hi);
    CHECK(r_hi.error_rate < r_lo.error_rate);
}

TEST_CASE("exhaustive decoder recovers the transmitted codeword with mild noise") {
    EmbeddedCodebook cb = small_codebook();
    unsigned errors = 0;
    for (uint64_t t = 0; t < 20; ++t) {
        size_t tx = keyed_rng(99, t).below(cb.matrices.size());
        CMatrix H = draw_channel(99, t, 3, 6);
        CMatrix Y = cmul(H, cb.matrices[tx]);
        double sr = std::sqrt(400.0);
        for (auto& z : Y.data) z *= sr;
        CMatrix N = draw_noise(99, t, 3, 6);
        for (size_t i = 0; i < Y.data.size(); ++i) Y.data[i] += N.data[i];
        if (ml_decode_exhaustive(Y, H, 400.0, cb) != tx) ++errors;
    }
    CHECK(errors == 0);
}

TEST_CASE("sphere decoder equals exhaustive ML on seeded instances") {
    EmbeddedCodebook cb = small_codebook();
    for (uint64_t t = 0; t < 100; ++t) {
        size_t tx = keyed_rng(1234, t).below(cb.matrices.size());
        CMatrix H = draw_channel(1234, t, 3, 6);
        CMatrix N = draw_noise(1234, t, 3, 6);
        double rho = (t % 2) ? 1.0 : 25.0;  // mix noisy and clean instances
        double sr = std::sqrt(rho);
        CMatrix Y = cmul(H, cb.matrices[tx]);
        for (auto& z : Y.data) z *= sr;
        for (size_t i = 0; i < Y.data.size(); ++i) Y.data[i] += N.data[i];
        size_t ml = ml_decode_exhaustive(Y, H, rho, cb);
        size_t sp = sphere_decode(Y, H, rho, cb);
        CHECK(ml == sp);
    }
}

TEST_CASE("sphere decoder with zero noise returns the transmitted symbols") {
    EmbeddedCodebook cb = small_codebook();
    for (uint64_t t = 0; t < 10; ++t) {
        size_t tx = keyed_rng(77, t).below(cb.matrices.size());
        CMatrix H = draw_channel(77, t, 3, 6);
        CMatrix Y = cmul(H, cb.matrices[tx]);
        CHECK(sphere_decode(Y, H, 1.0, cb) == tx);
    }
}
