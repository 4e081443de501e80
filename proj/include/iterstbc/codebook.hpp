#ifndef ITERSTBC_CODEBOOK_HPP
#define ITERSTBC_CODEBOOK_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iterstbc/iterated_algebra.hpp"

namespace iterstbc {

enum class ConstellationKind { QAM, HEX };

// Symbol (a, b) stands for a + b*i (QAM, Gaussian integers) or a + b*omega
// (HEX, Eisenstein integers).
using Symbol = std::pair<long, long>;

struct Constellation {
    ConstellationKind kind;
    unsigned size;                 // M
    std::vector<Symbol> symbols;   // centered layout
    Rational average_energy;       // E, exact

    bool contains(const Symbol& s) const;

    // M-QAM on the odd integer grid {±1, ±3, ...}^2, M a perfect square
    // with even side; E = 2(M-1)/3.
    static Constellation qam(unsigned M);
    // M-HEX from Eisenstein integers; supported size 4: the units
    // {1, -1, omega, -omega} (centered, E = 1).
    static Constellation hex(unsigned M);
    static Constellation by_name(const std::string& name);  // qam4, qam16, hex4

    std::string name() const;
};

// A fast-decodable code preset: the iterated algebra, the ideal basis used
// to spread symbols over K, and the ring unit pairing with the
// constellation (omega for HEX, i for QAM).
struct CodeSpec {
    std::string name;
    IterPtr algebra;
    std::vector<CycloElement> theta_basis;  // n elements, L-linearly independent
    CycloElement ring_unit;                 // omega or i inside the ambient field
    ConstellationKind native_kind;

    unsigned m() const { return algebra->m(); }
    unsigned n() const { return algebra->n(); }
    unsigned symbols_per_codeword() const { return m() * n() * n(); }
};

// Presets. The basis elements are verified L-linearly independent at
// construction (nonzero conjugate-matrix determinant).
CodeSpec code_6x3_right();  // right iteration, d = omega, HEX
CodeSpec code_6x3_left();   // left iteration, d = theta, HEX
CodeSpec code_8x4_right();  // right iteration, d = i, QAM
CodeSpec code_by_name(const std::string& name);

struct Codeword {
    std::vector<Symbol> symbols;
    AElement element;
    KMatrix exact_matrix;
};

// Builds the n D-layers from mn symbols each (n symbols per K-coordinate
// through the ideal basis) and represents left multiplication as the exact
// mn x mn codeword matrix.
Codeword encode(const CodeSpec& spec, const Constellation& constellation,
                const std::vector<Symbol>& symbols);

// Same map without constellation membership checks: for basis-matrix
// images and other integer combinations outside a constellation.
Codeword encode_raw(const CodeSpec& spec, const std::vector<Symbol>& symbols);

std::vector<std::vector<std::complex<double>>> complex_matrix(const Codeword& w);

struct DetInfo {
    CycloElement det;
    bool in_F = false;
    bool in_L = false;
    // det = a + b * ring_unit when det lies in the quadratic ring; exact.
    std::optional<std::pair<Rational, Rational>> quad_coords;
    bool integral = false;              // a, b both rational integers
    std::optional<Rational> abs_sq;     // |det|^2 when det lies in L
};

// Exact determinant plus the field/ring memberships the construction
// guarantees (asserted, not assumed).
DetInfo exact_det(const CodeSpec& spec, const Codeword& w);

struct MinDetStats {
    unsigned long samples = 0;
    unsigned long nonzero = 0;
    unsigned long zero_dets = 0;
    std::optional<Rational> min_abs_sq;          // over sampled nonzero codewords
    std::optional<Rational> normalized_min;      // scaled by (2/sqrt(28 E))^(2 mn) for 6x3
    std::vector<Symbol> argmin_symbols;
};

// Seeded survey of |det|^2 over random nonzero codewords; exact arithmetic
// throughout. `layers` restricts symbols to the first so many D-layers
// (0 = all layers).
MinDetStats min_det_survey(const CodeSpec& spec, const Constellation& constellation,
                           unsigned long sample, uint64_t seed, unsigned layers = 0);

// Exhaustive |det|^2 minimum over every one-layer codeword (M^(mn) of
// them); small constellations only.
MinDetStats min_det_exhaustive_one_layer(const CodeSpec& spec,
                                         const Constellation& constellation);

struct DiversityReport {
    unsigned long samples = 0;
    unsigned long violations = 0;  // nonzero codeword with zero determinant
    std::optional<Codeword> counterexample;
};

// Full-diversity evidence: by linearity, pair differences reduce to single
// codewords, so any surveyed nonzero codeword with det = 0 is fatal.
// `extra_vectors` are symbol vectors included in the survey ahead of the
// seeded samples.
DiversityReport diversity_evidence(const CodeSpec& spec, const Constellation& constellation,
                                   unsigned long sample, uint64_t seed, unsigned layers = 0,
                                   const std::vector<std::vector<Symbol>>& extra_vectors = {});

// Exact identity behind the 6x3 normalized minimum determinant: as a
// rational identity in the symbol energy E,
// 49 * (2 / sqrt(28 E))^18 == 1 / (7^7 E^9).
bool normalization_identity_6x3();

// Seeded uniform symbol vector; index keys the stream.
std::vector<Symbol> random_symbols(const CodeSpec& spec, const Constellation& constellation,
                                   uint64_t seed, uint64_t index, unsigned layers = 0);

// Every symbol vector supported on the first D-layer, in odometer order
// (M^(mn) vectors); the exhaustive small codebooks used for decoding.
std::vector<std::vector<Symbol>> one_layer_symbol_vectors(const CodeSpec& spec,
                                                          const Constellation& constellation);

}  // namespace iterstbc

#endif
