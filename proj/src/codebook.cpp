#include "iterstbc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iterstbc/rng.hpp"

namespace iterstbc {

bool Constellation::contains(const Symbol& s) const {
    return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

Constellation Constellation::qam(unsigned M) {
    unsigned side = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(M))));
    if (side * side != M || side % 2 != 0)
        throw std::invalid_argument("QAM size must be a perfect square with even side");
    Constellation c;
    c.kind = ConstellationKind::QAM;
    c.size = M;
    Rational energy(0);
    for (long a = -static_cast<long>(side) + 1; a < static_cast<long>(side); a += 2)
        for (long b = -static_cast<long>(side) + 1; b < static_cast<long>(side); b += 2) {
            c.symbols.emplace_back(a, b);
            energy += Rational(a * a + b * b);
        }
    c.average_energy = energy / Rational(M);
    return c;
}

Constellation Constellation::hex(unsigned M) {
    if (M != 4) throw std::invalid_argument("supported HEX size: 4");
    Constellation c;
    c.kind = ConstellationKind::HEX;
    c.size = 4;
    c.symbols = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    // |a + b omega|^2 = a^2 - a b + b^2 = 1 for all four units
    c.average_energy = Rational(1);
    return c;
}

Constellation Constellation::by_name(const std::string& name) {
    if (name == "hex4") return hex(4);
    if (name.rfind("qam", 0) == 0) {
        unsigned M = static_cast<unsigned>(std::stoul(name.substr(3)));
        return qam(M);
    }
    throw std::invalid_argument("unknown constellation: " + name);
}

std::string Constellation::name() const {
    return (kind == ConstellationKind::QAM ? "qam" : "hex") + std::to_string(size);
}

namespace {

void verify_theta_basis(const IterPtr& algebra, const std::vector<CycloElement>& basis) {
    unsigned n = algebra->n();
    if (basis.size() != n) throw std::invalid_argument("ideal basis must have n elements");
    const auto& t = algebra->tower();
    for (const auto& th : basis)
        if (!t.in_K(th)) throw std::invalid_argument("ideal basis element outside K");
    // L-linear independence: the matrix of tau-conjugates is nonsingular
    // (nonzero relative discriminant).
    KMatrix conj(n, n, algebra->field());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            conj.at(i, j) = apply_aut(t.tau().power(static_cast<long>(j)), basis[i]);
    if (conj.det().is_zero()) throw std::invalid_argument("ideal basis is L-linearly dependent");
}

CodeSpec make_spec(std::string name, IterPtr algebra, std::vector<CycloElement> basis,
                   CycloElement unit, ConstellationKind kind) {
    verify_theta_basis(algebra, basis);
    return CodeSpec{std::move(name), std::move(algebra), std::move(basis), std::move(unit), kind};
}

}  // namespace

CodeSpec code_6x3_right() {
    TowerSpec t = tower_6x3();
    auto field = t.ambient();
    CycloElement omega = omega_of(field);
    CycloElement theta = theta_of(field);
    CycloElement theta2 = theta * theta;
    auto D = CyclicAlgebra::create(t, -field->one());
    auto A = IteratedAlgebra::create(D, 3, D->from_K(omega), IterVariant::Right);
    CycloElement one = field->one();
    // basis of the principal ideal generated by 1 + omega + theta
    CycloElement th1 = one + omega + theta;
    CycloElement th2 = -one - (omega + omega) + omega * theta2;
    CycloElement th3 = (-one - (omega + omega)) + (one + omega) * theta + (one + omega) * theta2;
    return make_spec("6x3-right", A, {th1, th2, th3}, omega, ConstellationKind::HEX);
}

CodeSpec code_6x3_left() {
    TowerSpec t = tower_6x3();
    auto field = t.ambient();
    CycloElement omega = omega_of(field);
    CycloElement theta = theta_of(field);
    CycloElement theta2 = theta * theta;
    auto D = CyclicAlgebra::create(t, -field->one());
    auto A = IteratedAlgebra::create(D, 3, D->from_K(theta), IterVariant::Left);
    CycloElement one = field->one();
    CycloElement th1 = one + omega + theta;
    CycloElement th2 = -one - (omega + omega) + omega * theta2;
    CycloElement th3 = (-one - (omega + omega)) + (one + omega) * theta + (one + omega) * theta2;
    return make_spec("6x3-left", A, {th1, th2, th3}, omega, ConstellationKind::HEX);
}

CodeSpec code_8x4_right() {
    TowerSpec t = tower_8x4();
    auto field = t.ambient();
    CycloElement i = imag_unit_of(field);
    CycloElement theta = theta_of(field);
    CycloElement theta2 = theta * theta;
    CycloElement theta3 = theta2 * theta;
    auto D = CyclicAlgebra::create(t, -field->one());
    auto A = IteratedAlgebra::create(D, 4, D->from_K(i), IterVariant::Right);
    CycloElement one = field->one();
    CycloElement three = field->from_rational(Rational(3));
    // basis of the principal ideal generated by alpha = 1 - 3i + i theta^2
    CycloElement alpha = one - three * i + i * theta2;
    CycloElement th2 = alpha * theta;
    CycloElement th3 = alpha * theta * (-three + theta2);
    CycloElement th4 = alpha * (-one - three * theta + theta2 + theta3);
    return make_spec("8x4-right", A, {alpha, th2, th3, th4}, i, ConstellationKind::QAM);
}

CodeSpec code_by_name(const std::string& name) {
    if (name == "6x3-right") return code_6x3_right();
    if (name == "6x3-left") return code_6x3_left();
    if (name == "8x4-right") return code_8x4_right();
    throw std::invalid_argument("unknown preset: " + name);
}

Codeword encode(const CodeSpec& spec, const Constellation& constellation,
                const std::vector<Symbol>& symbols) {
    if (constellation.kind != spec.native_kind)
        throw std::invalid_argument("constellation kind does not match the preset ring");
    for (const auto& s : symbols)
        if (!(s == Symbol{0, 0}) && !constellation.contains(s))
            throw std::invalid_argument("symbol outside the constellation");
    return encode_raw(spec, symbols);
}

Codeword encode_raw(const CodeSpec& spec, const std::vector<Symbol>& symbols) {
    unsigned m = spec.m(), n = spec.n();
    if (symbols.size() != static_cast<size_t>(m) * n * n)
        throw std::invalid_argument("expected m*n^2 symbols");

    const auto& field = spec.algebra->field();
    std::vector<DElement> layers;
    layers.reserve(n);
    for (unsigned layer = 0; layer < n; ++layer) {
        std::vector<CycloElement> coords(m, field->zero());
        for (unsigned k = 0; k < m; ++k) {
            CycloElement acc = field->zero();
            for (unsigned i = 0; i < n; ++i) {
                const Symbol& s = symbols[static_cast<size_t>(layer) * m * n + k * n + i];
                if (s.first == 0 && s.second == 0) continue;
                CycloElement sym = field->from_rational(Rational(s.first)) +
                                   field->from_rational(Rational(s.second)) * spec.ring_unit;
                acc += sym * spec.theta_basis[i];
            }
            coords[k] = acc;
        }
        layers.push_back(spec.algebra->D()->element(std::move(coords)));
    }
    AElement x = spec.algebra->element(std::move(layers));
    KMatrix mat = lambda_matrix(x);
    return Codeword{symbols, std::move(x), std::move(mat)};
}

std::vector<std::vector<std::complex<double>>> complex_matrix(const Codeword& w) {
    std::vector<std::vector<std::complex<double>>> out(w.exact_matrix.rows());
    for (unsigned r = 0; r < w.exact_matrix.rows(); ++r) {
        out[r].resize(w.exact_matrix.cols());
        for (unsigned c = 0; c < w.exact_matrix.cols(); ++c) out[r][c] = embed(w.exact_matrix.at(r, c));
    }
    return out;
}

namespace {

// det = a + b*unit with a, b rational, when det lies in Q + Q*unit.
std::optional<std::pair<Rational, Rational>> quad_decompose(const CycloElement& det,
                                                            const CycloElement& unit) {
    const auto& field = det.field();
    unsigned idx = 0;
    bool found = false;
    for (unsigned i = 1; i < field->degree(); ++i)
        if (unit.coeff(i) != 0) {
            idx = i;
            found = true;
            break;
        }
    if (!found) return std::nullopt;
    Rational b = det.coeff(idx) / unit.coeff(idx);
    Rational a = det.coeff(0) - b * unit.coeff(0);
    CycloElement recon = field->from_rational(a) + b * unit;
    if (recon == det) return std::make_pair(a, b);
    return std::nullopt;
}

}  // namespace

DetInfo exact_det(const CodeSpec& spec, const Codeword& w) {
    DetInfo info;
    info.det = w.exact_matrix.det();
    const auto& t = spec.algebra->tower();
    info.in_F = t.in_F(info.det);
    info.in_L = t.in_L(info.det);
    if (spec.algebra->variant() == IterVariant::Right) {
        if (!info.in_L) throw std::logic_error("right-variant determinant escaped L");
    } else {
        if (!info.in_F) throw std::logic_error("determinant escaped F");
    }
    if (info.in_L) {
        if (auto q = quad_decompose(info.det, spec.ring_unit)) {
            info.quad_coords = q;
            info.integral = q->first.get_den() == 1 && q->second.get_den() == 1;
            // |a + b u|^2 with u = omega: a^2 - ab + b^2; u = i: a^2 + b^2.
            CycloElement prod = info.det * conjugate(info.det);
            if (!prod.is_rational()) throw std::logic_error("|det|^2 of an L-element must be rational");
            info.abs_sq = prod.rational_value();
        }
    }
    return info;
}

std::vector<Symbol> random_symbols(const CodeSpec& spec, const Constellation& constellation,
                                   uint64_t seed, uint64_t index, unsigned layers) {
    unsigned m = spec.m(), n = spec.n();
    unsigned active_layers = (layers == 0 || layers > n) ? n : layers;
    SplitMix64 rng = keyed_rng(seed, index);
    std::vector<Symbol> symbols(static_cast<size_t>(m) * n * n, Symbol{0, 0});
    for (unsigned layer = 0; layer < active_layers; ++layer)
        for (unsigned k = 0; k < m; ++k)
            for (unsigned i = 0; i < n; ++i)
                symbols[static_cast<size_t>(layer) * m * n + k * n + i] =
                    constellation.symbols[rng.below(constellation.symbols.size())];
    return symbols;
}

namespace {

void survey_codeword(const CodeSpec& spec, const std::vector<Symbol>& symbols,
                     MinDetStats& stats) {
    bool zero = true;
    for (const auto& sym : symbols)
        if (!(sym == Symbol{0, 0})) {
            zero = false;
            break;
        }
    if (zero) return;
    ++stats.samples;
    Codeword w = encode_raw(spec, symbols);
    DetInfo info = exact_det(spec, w);
    if (info.det.is_zero()) {
        ++stats.zero_dets;
        return;
    }
    ++stats.nonzero;
    if (info.abs_sq) {
        if (!stats.min_abs_sq || *info.abs_sq < *stats.min_abs_sq) {
            stats.min_abs_sq = info.abs_sq;
            stats.argmin_symbols = symbols;
        }
    }
}

void finish_survey(const CodeSpec& spec, const Constellation& constellation, MinDetStats& stats) {
    if (stats.samples == 0) throw std::invalid_argument("survey contained only the zero codeword");
    if (stats.min_abs_sq && spec.m() == 2 && spec.n() == 3) {
        // (2 / sqrt(28 E))^(2*mn) = 2^18 / (28 E)^9, exact for rational E.
        Rational factor(1);
        Rational base = Rational(4) / (Rational(28) * constellation.average_energy);
        for (int i = 0; i < 9; ++i) factor *= base;
        stats.normalized_min = *stats.min_abs_sq * factor;
    }
}

}  // namespace

MinDetStats min_det_survey(const CodeSpec& spec, const Constellation& constellation,
                           unsigned long sample, uint64_t seed, unsigned layers) {
    if (sample == 0) throw std::invalid_argument("sample count must be positive");
    MinDetStats stats;
    for (unsigned long s = 0; s < sample; ++s)
        survey_codeword(spec, random_symbols(spec, constellation, seed, s, layers), stats);
    finish_survey(spec, constellation, stats);
    return stats;
}

MinDetStats min_det_exhaustive_one_layer(const CodeSpec& spec, const Constellation& constellation) {
    MinDetStats stats;
    for (const auto& symbols : one_layer_symbol_vectors(spec, constellation))
        survey_codeword(spec, symbols, stats);
    finish_survey(spec, constellation, stats);
    return stats;
}

DiversityReport diversity_evidence(const CodeSpec& spec, const Constellation& constellation,
                                   unsigned long sample, uint64_t seed, unsigned layers,
                                   const std::vector<std::vector<Symbol>>& extra_vectors) {
    DiversityReport report;
    auto survey_one = [&](const std::vector<Symbol>& symbols) {
        bool zero = true;
        for (const auto& sym : symbols)
            if (!(sym == Symbol{0, 0})) {
                zero = false;
                break;
            }
        if (zero) return;
        ++report.samples;
        Codeword w = encode(spec, constellation, symbols);
        if (w.exact_matrix.det().is_zero()) {
            ++report.violations;
            if (!report.counterexample) report.counterexample = w;
        }
    };
    for (const auto& symbols : extra_vectors) survey_one(symbols);
    for (unsigned long s = 0; s < sample; ++s)
        survey_one(random_symbols(spec, constellation, seed, s, layers));
    return report;
}

std::vector<std::vector<Symbol>> one_layer_symbol_vectors(const CodeSpec& spec,
                                                          const Constellation& constellation) {
    unsigned m = spec.m(), n = spec.n();
    unsigned per_layer = m * n;
    size_t total = 1;
    for (unsigned i = 0; i < per_layer; ++i) {
        total *= constellation.symbols.size();
        if (total > (1u << 20)) throw std::invalid_argument("one-layer codebook too large");
    }
    std::vector<std::vector<Symbol>> out;
    out.reserve(total);
    std::vector<unsigned> idx(per_layer, 0);
    while (true) {
        std::vector<Symbol> symbols(static_cast<size_t>(m) * n * n, Symbol{0, 0});
        for (unsigned s = 0; s < per_layer; ++s) symbols[s] = constellation.symbols[idx[s]];
        out.push_back(std::move(symbols));
        unsigned pos = per_layer;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < constellation.symbols.size()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

bool normalization_identity_6x3() {
    // 49 * (2/sqrt(28E))^18 == 1/(7^7 E^9)  <=>  49 * 2^18 * 7^7 == 28^9.
    mpz_class lhs = 49;
    lhs <<= 18;
    mpz_class seven_7 = 1;
    for (int i = 0; i < 7; ++i) seven_7 *= 7;
    lhs *= seven_7;
    mpz_class rhs = 1;
    for (int i = 0; i < 9; ++i) rhs *= 28;
    return lhs == rhs;
}

}  // namespace iterstbc
