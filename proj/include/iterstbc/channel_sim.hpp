#ifndef ITERSTBC_CHANNEL_SIM_HPP
#define ITERSTBC_CHANNEL_SIM_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "iterstbc/decodability.hpp"
#include "iterstbc/rng.hpp"

namespace iterstbc {

using CVec = std::vector<std::complex<double>>;

// Row-major complex matrix for the floating-point channel path.
struct CMatrix {
    unsigned rows = 0, cols = 0;
    CVec data;

    CMatrix() = default;
    CMatrix(unsigned r, unsigned c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}
    std::complex<double>& at(unsigned r, unsigned c) { return data[static_cast<size_t>(r) * cols + c]; }
    const std::complex<double>& at(unsigned r, unsigned c) const {
        return data[static_cast<size_t>(r) * cols + c];
    }
};

CMatrix cmul(const CMatrix& a, const CMatrix& b);
double frob_sq(const CMatrix& a);

// Embedded finite codebook (a restricted subset of the code: the layers
// actually populated are recorded). Matrices are scaled to unit average
// entry energy so rho in Y = sqrt(rho) H S + N is the average SNR.
struct EmbeddedCodebook {
    CodeSpec spec;
    Constellation constellation;
    unsigned layers = 1;
    std::vector<std::vector<Symbol>> symbol_vectors;
    std::vector<CMatrix> matrices;  // n_t x T complex codewords, scaled
    double scale = 1.0;             // applied to every raw codeword entry
};

// One-layer exhaustive codebook (M^(mn) codewords).
EmbeddedCodebook build_one_layer_codebook(const CodeSpec& spec, const Constellation& constellation);

struct ChannelConfig {
    unsigned n_r = 1;        // receive antennas
    double rho = 1.0;        // average SNR, linear
    unsigned long trials = 0;
    uint64_t seed = 0;
    std::string decoder = "exhaustive";  // exhaustive | sphere
};

struct SimResult {
    unsigned long errors = 0;
    unsigned long trials = 0;
    double error_rate = 0.0;
    std::string decoder;
    double wall_seconds = 0.0;
};

// Coherent MIMO link Y = sqrt(rho) H S + N with seeded complex Gaussian
// draws keyed by (seed, trial), so runs are bit-reproducible under any
// execution order. noise_scale multiplies N (0 gives the noiseless check).
SimResult simulate(const EmbeddedCodebook& codebook, const ChannelConfig& cfg,
                   double noise_scale = 1.0);

// Argmin of ||Y - sqrt(rho) H S||^2 over the codebook; ties break to the
// lowest index.
size_t ml_decode_exhaustive(const CMatrix& Y, const CMatrix& H, double rho,
                            const EmbeddedCodebook& codebook);

// Sphere decoder over the real lattice spanned by the basis matrices of the
// populated layer; leaf validity enforces the constellation. Radius starts
// at the snapped Babai residual and doubles until a valid point is found.
// Returns the codebook index of the ML point.
size_t sphere_decode(const CMatrix& Y, const CMatrix& H, double rho,
                     const EmbeddedCodebook& codebook);

// Gaussian pair from the counter RNG (Box-Muller).
std::complex<double> gaussian_pair(SplitMix64& rng);

// H (n_r x n_t) and N (n_r x T) for a trial, as pure functions of
// (seed, trial).
CMatrix draw_channel(uint64_t seed, uint64_t trial, unsigned n_r, unsigned n_t);
CMatrix draw_noise(uint64_t seed, uint64_t trial, unsigned n_r, unsigned T);

}  // namespace iterstbc

#endif
