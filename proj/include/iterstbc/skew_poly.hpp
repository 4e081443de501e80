#ifndef ITERSTBC_SKEW_POLY_HPP
#define ITERSTBC_SKEW_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iterstbc/iterated_algebra.hpp"

namespace iterstbc {

// Twisted polynomial ring D[t; phi] with commutation t a = phi(a) t,
// phi = tau~^twist_power (twist_power = n-1 realizes tau~^{-1}, the
// convention the S_f equivalence test pins down). Coefficients multiply
// powers of t from the left: p = sum a_i t^i.
class SkewPoly {
public:
    SkewPoly(AlgebraPtr D, std::vector<DElement> coeffs, unsigned twist_power);

    const AlgebraPtr& D() const { return D_; }
    unsigned twist_power() const { return twist_; }
    const std::vector<DElement>& coeffs() const { return coeffs_; }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const DElement& coeff(unsigned i) const;
    DElement coeff_or_zero(unsigned i) const;

    static SkewPoly zero(const AlgebraPtr& D, unsigned twist_power);
    static SkewPoly constant(const DElement& a, unsigned twist_power);
    static SkewPoly monomial(const DElement& a, unsigned degree, unsigned twist_power);
    // t^n - d
    static SkewPoly t_pow_minus_d(const AlgebraPtr& D, unsigned n, const DElement& d,
                                  unsigned twist_power);

    SkewPoly operator-() const;
    friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b);
    friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b);
    bool operator==(const SkewPoly& o) const;

private:
    AlgebraPtr D_;
    std::vector<DElement> coeffs_;  // trimmed: leading coefficient nonzero
    unsigned twist_;
};

// Ring product under t a = phi(a) t.
SkewPoly sp_mul(const SkewPoly& p, const SkewPoly& q);

// g = q*f + r with deg r < deg f; f must have an invertible leading
// coefficient. The quotient/remainder pair is unique.
std::pair<SkewPoly, SkewPoly> right_divide(const SkewPoly& g, const SkewPoly& f);

// S_f product g o h = g h mod_r f for f = t^n - d, deg g, deg h < n.
SkewPoly sf_mul(const SkewPoly& g, const SkewPoly& h, const SkewPoly& f);

// Per-monomial product with the d factor of the wrap reduction placed per
// variant; Right equals sf_mul for f = t^n - d. Used to cross-validate all
// three iterated multiplications against the polynomial picture.
SkewPoly sf_variant_mul(const SkewPoly& g, const SkewPoly& h, unsigned n, const DElement& d,
                        IterVariant variant);

// Identification f^i x_i <-> t^i x_i (coefficients carried on the right of
// t^i; stored left coefficients are tau~^{-i}(x_i)).
SkewPoly to_poly(const AElement& x);
AElement from_poly(const IterPtr& A, const SkewPoly& p);

struct ReducibilityWitness {
    // z with d = z tau~(z) ... tau~^{n-1}(z), proving t^n - d reducible; or
    // for n = 4 a pair (z0, z1) violating the second condition.
    std::vector<DElement> elements;
    std::string condition;
};

struct ReducibilitySearchResult {
    std::optional<ReducibilityWitness> witness;
    long box = 0;
    std::string scope;  // human-readable description of the searched set
};

// Bounded factor search for f = t^n - d, n in {2, 3, 4}. A witness proves
// reducibility; NotFound only records the searched scope.
ReducibilitySearchResult reducibility_search(const IterPtr& A, long box);

}  // namespace iterstbc

#endif
