#include "iterstbc/channel_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace iterstbc {

CMatrix cmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    CMatrix out(a.rows, b.cols);
    for (unsigned i = 0; i < a.rows; ++i)
        for (unsigned k = 0; k < a.cols; ++k) {
            auto v = a.at(i, k);
            if (v == std::complex<double>(0.0, 0.0)) continue;
            for (unsigned j = 0; j < b.cols; ++j) out.at(i, j) += v * b.at(k, j);
        }
    return out;
}

double frob_sq(const CMatrix& a) {
    double acc = 0;
    for (const auto& z : a.data) acc += std::norm(z);
    return acc;
}

EmbeddedCodebook build_one_layer_codebook(const CodeSpec& spec, const Constellation& constellation) {
    EmbeddedCodebook cb{spec, constellation, 1, one_layer_symbol_vectors(spec, constellation), {}, 1.0};
    if (cb.symbol_vectors.size() > (1u << 16))
        throw std::invalid_argument("codebook too large for exhaustive decoding");
    cb.matrices.reserve(cb.symbol_vectors.size());
    unsigned mn = spec.m() * spec.n();
    double energy = 0.0;
    for (const auto& symbols : cb.symbol_vectors) {
        Codeword w = encode(spec, constellation, symbols);
        CMatrix c(mn, mn);
        for (unsigned r = 0; r < mn; ++r)
            for (unsigned cc = 0; cc < mn; ++cc) c.at(r, cc) = embed(w.exact_matrix.at(r, cc));
        energy += frob_sq(c);
        cb.matrices.push_back(std::move(c));
    }
    double mean = energy / (static_cast<double>(cb.matrices.size()) * mn * mn);
    cb.scale = mean > 0 ? 1.0 / std::sqrt(mean) : 1.0;
    for (auto& m : cb.matrices)
        for (auto& z : m.data) z *= cb.scale;
    return cb;
}

std::complex<double> gaussian_pair(SplitMix64& rng) {
    double u1 = rng.unit();
    double u2 = rng.unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

namespace {
enum StreamTag : uint64_t { kChannel = 0, kNoise = 1, kCodeword = 2 };

SplitMix64 trial_rng(uint64_t seed, uint64_t trial, uint64_t tag) {
    return keyed_rng(seed, trial * 4 + tag);
}
}  // namespace

CMatrix draw_channel(uint64_t seed, uint64_t trial, unsigned n_r, unsigned n_t) {
    SplitMix64 rng = trial_rng(seed, trial, kChannel);
    CMatrix h(n_r, n_t);
    for (auto& z : h.data) z = gaussian_pair(rng);
    return h;
}

CMatrix draw_noise(uint64_t seed, uint64_t trial, unsigned n_r, unsigned T) {
    SplitMix64 rng = trial_rng(seed, trial, kNoise);
    CMatrix n(n_r, T);
    for (auto& z : n.data) z = gaussian_pair(rng);
    return n;
}

size_t ml_decode_exhaustive(const CMatrix& Y, const CMatrix& H, double rho,
                            const EmbeddedCodebook& codebook) {
    if (codebook.matrices.empty()) throw std::invalid_argument("empty codebook");
    double sr = std::sqrt(rho);
    size_t best = 0;
    double best_metric = 0;
    bool first = true;
    for (size_t k = 0; k < codebook.matrices.size(); ++k) {
        CMatrix hs = cmul(H, codebook.matrices[k]);
        double metric = 0;
        for (size_t i = 0; i < Y.data.size(); ++i) metric += std::norm(Y.data[i] - sr * hs.data[i]);
        if (first || metric < best_metric) {
            best = k;
            best_metric = metric;
            first = false;
        }
    }
    return best;
}

namespace {

struct RealLattice {
    unsigned dim;                       // 2 * mn symbols of the populated layer
    std::vector<std::vector<double>> q; // orthonormal columns (rows x dim)
    std::vector<std::vector<double>> r; // dim x dim upper triangular
    std::vector<double> qty;            // Q^T y
    // candidate values per level and the valid (a, b) pairs
    std::vector<std::vector<long>> level_values;
    const Constellation* constellation;
};

// columns: real/imag parts of sqrt(rho) H B_g for the layer-0 basis
// matrices; rows: stacked Re/Im of the received matrix entries.
RealLattice build_lattice(const CMatrix& H, double rho, const EmbeddedCodebook& cb,
                          const std::vector<BasisMatrix>& basis) {
    unsigned mn = cb.spec.m() * cb.spec.n();
    unsigned rows = 2 * H.rows * mn;
    unsigned dim = static_cast<unsigned>(basis.size());
    double sr = std::sqrt(rho);
    std::vector<std::vector<double>> g(rows, std::vector<double>(dim, 0.0));
    for (unsigned col = 0; col < dim; ++col) {
        CMatrix b(mn, mn);
        for (unsigned r0 = 0; r0 < mn; ++r0)
            for (unsigned c0 = 0; c0 < mn; ++c0)
                b.at(r0, c0) = cb.scale * embed(basis[col].matrix.at(r0, c0));
        CMatrix hb = cmul(H, b);
        for (unsigned r0 = 0; r0 < H.rows; ++r0)
            for (unsigned c0 = 0; c0 < mn; ++c0) {
                g[2 * (r0 * mn + c0)][col] = sr * hb.at(r0, c0).real();
                g[2 * (r0 * mn + c0) + 1][col] = sr * hb.at(r0, c0).imag();
            }
    }
    RealLattice lat;
    lat.dim = dim;
    lat.constellation = &cb.constellation;
    // modified Gram-Schmidt
    lat.q.assign(dim, std::vector<double>(rows, 0.0));
    lat.r.assign(dim, std::vector<double>(dim, 0.0));
    for (unsigned col = 0; col < dim; ++col) {
        std::vector<double> v(rows);
        for (unsigned i = 0; i < rows; ++i) v[i] = g[i][col];
        for (unsigned prev = 0; prev < col; ++prev) {
            double dot = 0;
            for (unsigned i = 0; i < rows; ++i) dot += lat.q[prev][i] * v[i];
            lat.r[prev][col] = dot;
            for (unsigned i = 0; i < rows; ++i) v[i] -= dot * lat.q[prev][i];
        }
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw std::invalid_argument("degenerate lattice (rank-deficient channel)");
        lat.r[col][col] = nrm;
        for (unsigned i = 0; i < rows; ++i) lat.q[col][i] = v[i] / nrm;
    }
    // distinct candidate values: even levels carry the first symbol
    // coordinate, odd levels the second
    std::vector<long> avals, bvals;
    for (const auto& s : cb.constellation.symbols) {
        if (std::find(avals.begin(), avals.end(), s.first) == avals.end()) avals.push_back(s.first);
        if (std::find(bvals.begin(), bvals.end(), s.second) == bvals.end()) bvals.push_back(s.second);
    }
    std::sort(avals.begin(), avals.end());
    std::sort(bvals.begin(), bvals.end());
    lat.level_values.resize(dim);
    for (unsigned lev = 0; lev < dim; ++lev) lat.level_values[lev] = (lev % 2 == 0) ? avals : bvals;
    return lat;
}

struct SphereState {
    const RealLattice* lat;
    std::vector<long> g;
    std::vector<long> best_g;
    double radius_sq;
    bool found = false;

    bool pair_ok(unsigned level) const {
        // even level completes the symbol (a, b) = (g[2q], g[2q+1])
        if (level % 2 != 0) return true;
        Symbol s{g[level], g[level + 1]};
        if (s == Symbol{0, 0}) return false;  // 0 is not a constellation point
        return lat->constellation->contains(s);
    }

    void dfs(int level, double dist) {
        if (dist > radius_sq) return;
        if (level < 0) {
            if (!found || dist < radius_sq) {
                best_g = g;
                radius_sq = dist;
                found = true;
            }
            return;
        }
        unsigned lev = static_cast<unsigned>(level);
        double acc = lat->qty[lev];
        for (unsigned j = lev + 1; j < lat->dim; ++j) acc -= lat->r[lev][j] * g[j];
        double center = acc / lat->r[lev][lev];
        // enumerate candidates by distance from the center
        std::vector<long> vals = lat->level_values[lev];
        std::sort(vals.begin(), vals.end(), [&](long a, long b) {
            return std::abs(a - center) < std::abs(b - center);
        });
        for (long v : vals) {
            g[lev] = v;
            double e = acc - lat->r[lev][lev] * v;
            double nd = dist + e * e;
            if (nd > radius_sq) continue;
            if (!pair_ok(lev)) continue;
            dfs(level - 1, nd);
        }
        g[lev] = 0;
    }
};

}  // namespace

size_t sphere_decode(const CMatrix& Y, const CMatrix& H, double rho,
                     const EmbeddedCodebook& codebook) {
    if (codebook.layers != 1)
        throw std::invalid_argument("sphere decoder expects a one-layer codebook");
    auto basis = basis_matrices(codebook.spec, Subcode::DiagonalBlock);
    RealLattice lat = build_lattice(H, rho, codebook, basis);
    unsigned mn = codebook.spec.m() * codebook.spec.n();
    if (Y.rows != H.rows || Y.cols != mn) throw std::invalid_argument("dimension mismatch");

    std::vector<double> y(2 * static_cast<size_t>(Y.rows) * mn);
    for (unsigned r0 = 0; r0 < Y.rows; ++r0)
        for (unsigned c0 = 0; c0 < mn; ++c0) {
            y[2 * (r0 * mn + c0)] = Y.at(r0, c0).real();
            y[2 * (r0 * mn + c0) + 1] = Y.at(r0, c0).imag();
        }
    lat.qty.assign(lat.dim, 0.0);
    for (unsigned col = 0; col < lat.dim; ++col)
        for (size_t i = 0; i < y.size(); ++i) lat.qty[col] += lat.q[col][i] * y[i];

    // Babai point with snapping to valid symbols: initial radius
    std::vector<long> babai(lat.dim, 0);
    for (int level = static_cast<int>(lat.dim) - 1; level >= 0; --level) {
        unsigned lev = static_cast<unsigned>(level);
        double acc = lat.qty[lev];
        for (unsigned j = lev + 1; j < lat.dim; ++j) acc -= lat.r[lev][j] * babai[j];
        double center = acc / lat.r[lev][lev];
        const auto& vals = lat.level_values[lev];
        long pick = vals.front();
        double best = std::abs(pick - center);
        bool have = false;
        for (long v : vals) {
            if (lev % 2 == 0) {
                Symbol s{v, babai[lev + 1]};
                if (!lat.constellation->contains(s)) continue;
            }
            double dd = std::abs(v - center);
            if (!have || dd < best) {
                pick = v;
                best = dd;
                have = true;
            }
        }
        babai[lev] = pick;
    }
    double babai_dist = 0;
    for (unsigned lev = 0; lev < lat.dim; ++lev) {
        double acc = lat.qty[lev];
        for (unsigned j = lev + 1; j < lat.dim; ++j) acc -= lat.r[lev][j] * babai[j];
        double e = acc - lat.r[lev][lev] * babai[lev];
        babai_dist += e * e;
    }

    SphereState state;
    state.lat = &lat;
    state.g.assign(lat.dim, 0);
    state.radius_sq = babai_dist * (1.0 + 1e-9) + 1e-12;
    for (int attempt = 0; attempt < 64 && !state.found; ++attempt) {
        state.dfs(static_cast<int>(lat.dim) - 1, 0.0);
        if (!state.found) state.radius_sq *= 2.0;
    }
    if (!state.found) throw std::logic_error("sphere search found no lattice point");

    // recover the codebook index from the symbol digits
    const auto& syms = codebook.constellation.symbols;
    size_t index = 0;
    for (unsigned q = 0; q < mn; ++q) {
        Symbol s{state.best_g[2 * q], state.best_g[2 * q + 1]};
        size_t digit = 0;
        while (digit < syms.size() && !(syms[digit] == s)) ++digit;
        if (digit == syms.size()) throw std::logic_error("decoded symbol outside constellation");
        index = index * syms.size() + digit;
    }
    return index;
}

SimResult simulate(const EmbeddedCodebook& codebook, const ChannelConfig& cfg, double noise_scale) {
    if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
    if (cfg.rho <= 0) throw std::invalid_argument("rho must be positive");
    if (codebook.matrices.empty()) throw std::invalid_argument("empty codebook");
    unsigned n_t = codebook.matrices.front().rows;
    unsigned T = codebook.matrices.front().cols;
    auto start = std::chrono::steady_clock::now();
    SimResult result;
    result.trials = cfg.trials;
    result.decoder = cfg.decoder;
    double sr = std::sqrt(cfg.rho);
    for (unsigned long t = 0; t < cfg.trials; ++t) {
        size_t tx = trial_rng(cfg.seed, t, kCodeword).below(codebook.matrices.size());
        CMatrix H = draw_channel(cfg.seed, t, cfg.n_r, n_t);
        CMatrix N = draw_noise(cfg.seed, t, cfg.n_r, T);
        CMatrix Y = cmul(H, codebook.matrices[tx]);
        for (auto& z : Y.data) z *= sr;
        for (size_t i = 0; i < Y.data.size(); ++i) Y.data[i] += noise_scale * N.data[i];
        size_t decoded = cfg.decoder == "sphere" ? sphere_decode(Y, H, cfg.rho, codebook)
                                                 : ml_decode_exhaustive(Y, H, cfg.rho, codebook);
        if (decoded != tx) ++result.errors;
    }
    result.error_rate = static_cast<double>(result.errors) / static_cast<double>(cfg.trials);
    auto end = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(end - start).count();
    return result;
}

}  // namespace iterstbc
