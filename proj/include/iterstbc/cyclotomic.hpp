#ifndef ITERSTBC_CYCLOTOMIC_HPP
#define ITERSTBC_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "iterstbc/rational.hpp"

namespace iterstbc {

class CycloElement;

// The ambient cyclotomic field Q(zeta_N). Everything downstream (towers,
// algebras, codewords) computes inside one of these. Immutable; obtain
// shared instances through CycloField::get so elements can cheaply check
// they belong to the same field.
class CycloField {
public:
    static std::shared_ptr<const CycloField> get(unsigned conductor);

    unsigned conductor() const { return conductor_; }
    unsigned degree() const { return degree_; }

    // Monic minimal polynomial of zeta_N over Q (the N-th cyclotomic
    // polynomial), coefficient i belongs to x^i, size degree()+1.
    const std::vector<Rational>& minimal_polynomial() const { return minpoly_; }

    // Power-basis representation of zeta^j for any j in [0, N).
    const std::vector<Rational>& power_of_zeta(unsigned j) const;

    CycloElement zero() const;
    CycloElement one() const;
    CycloElement from_rational(const Rational& r) const;
    // zeta_N^j as a field element.
    CycloElement zeta_pow(unsigned j) const;

private:
    explicit CycloField(unsigned conductor);

    unsigned conductor_;
    unsigned degree_;
    std::vector<Rational> minpoly_;
    std::vector<std::vector<Rational>> zeta_pow_table_;  // j in [0, N)
};

using FieldPtr = std::shared_ptr<const CycloField>;

// Galois automorphism zeta -> zeta^k, gcd(k, N) = 1. The group is abelian,
// so composition is exponent multiplication mod N.
class Automorphism {
public:
    Automorphism(FieldPtr field, unsigned exponent);

    unsigned exponent() const { return exponent_; }
    const FieldPtr& field() const { return field_; }

    Automorphism compose(const Automorphism& other) const;
    Automorphism inverse() const;
    Automorphism power(long e) const;
    // Multiplicative order of the exponent mod N (order on the full
    // ambient field; restrictions to subfields may have smaller order).
    unsigned order() const;

    bool is_identity() const { return exponent_ == 1; }
    bool operator==(const Automorphism& o) const;

private:
    FieldPtr field_;
    unsigned exponent_;
};

// Element of Q(zeta_N) as an exact rational vector over the power basis
// zeta^0 .. zeta^{phi(N)-1}.
class CycloElement {
public:
    CycloElement() = default;
    CycloElement(FieldPtr field, std::vector<Rational> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(unsigned i) const { return coeffs_[i]; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in Q (only the constant coordinate set).
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    CycloElement operator-() const;
    CycloElement& operator+=(const CycloElement& o);
    CycloElement& operator-=(const CycloElement& o);

    friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
    friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(const Rational& r, const CycloElement& a);
    bool operator==(const CycloElement& o) const;
    bool operator!=(const CycloElement& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

// Exact product reduced modulo the cyclotomic polynomial.
CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b);

// Multiplicative inverse via extended gcd with the minimal polynomial.
CycloElement cyclo_inv(const CycloElement& a);

CycloElement cyclo_pow(const CycloElement& a, unsigned long e);

// Image of a under zeta -> zeta^k.
CycloElement apply_aut(const Automorphism& phi, const CycloElement& a);

// Complex conjugation (zeta -> zeta^{N-1}).
CycloElement conjugate(const CycloElement& a);

// Evaluation at zeta_N = exp(2*pi*i/N). The sum is accumulated at
// precision_bits (plus guard bits) before one final rounding, so the
// error is below 2^(1-precision_bits) * sum|coeff| for precision_bits
// up to the 64-bit long double mantissa.
std::complex<long double> embed_complex(const CycloElement& a, unsigned precision_bits = 64);

inline std::complex<double> embed(const CycloElement& a) {
    auto z = embed_complex(a);
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace iterstbc

#endif
