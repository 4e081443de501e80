#ifndef ITERSTBC_CYCLIC_ALGEBRA_HPP
#define ITERSTBC_CYCLIC_ALGEBRA_HPP

#include <memory>
#include <vector>

#include "iterstbc/kmatrix.hpp"
#include "iterstbc/tower.hpp"

namespace iterstbc {

class DElement;

// Associative cyclic algebra D = (K/F, sigma, c) of degree m, with
// e^m = c and x e = e sigma(x). The constant c must lie in F0 so that the
// coefficientwise extension of tau is an automorphism of D.
class CyclicAlgebra : public std::enable_shared_from_this<CyclicAlgebra> {
public:
    static std::shared_ptr<const CyclicAlgebra> create(TowerSpec tower, CycloElement c);

    const TowerSpec& tower() const { return tower_; }
    const CycloElement& c() const { return c_; }
    unsigned m() const { return tower_.m(); }
    const FieldPtr& field() const { return tower_.ambient(); }

    DElement zero() const;
    DElement one() const;
    DElement from_K(const CycloElement& a) const;          // scalar embedding K -> D
    DElement basis_e(unsigned power) const;                // e^power
    DElement element(std::vector<CycloElement> coords) const;

private:
    CyclicAlgebra(TowerSpec tower, CycloElement c);
    TowerSpec tower_;
    CycloElement c_;
};

using AlgebraPtr = std::shared_ptr<const CyclicAlgebra>;

// Element of D over the right-K basis {1, e, ..., e^{m-1}}.
class DElement {
public:
    DElement() = default;
    DElement(AlgebraPtr algebra, std::vector<CycloElement> coords);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<CycloElement>& coords() const { return coords_; }
    const CycloElement& coord(unsigned i) const { return coords_[i]; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in K (only coordinate 0 populated).
    bool in_K() const;

    DElement operator-() const;
    DElement& operator+=(const DElement& o);
    DElement& operator-=(const DElement& o);
    friend DElement operator+(DElement a, const DElement& b) { return a += b; }
    friend DElement operator-(DElement a, const DElement& b) { return a -= b; }
    friend DElement operator*(const DElement& a, const DElement& b);
    bool operator==(const DElement& o) const;
    bool operator!=(const DElement& o) const { return !(*this == o); }

private:
    AlgebraPtr algebra_;
    std::vector<CycloElement> coords_;
};

// Associative product from e^m = c, x e = e sigma(x).
DElement d_mul(const DElement& x, const DElement& y);

// Left regular representation: m x m matrix over K with
// lambda(x) * coords(y) = coords(x*y) and lambda(1) = I.
KMatrix lambda_of(const DElement& x);

// Reduced norm det(lambda(x)); lies in F.
CycloElement d_norm(const DElement& x);

// Coefficientwise tau; an automorphism of D of order n since c is in F0.
DElement apply_tau(const DElement& x);
DElement apply_tau_pow(const DElement& x, unsigned j);

// Inverse of a unit of D (solves lambda(x) u = coords(1)).
DElement d_inv(const DElement& x);

DElement d_pow(const DElement& x, unsigned e);

// True when m = 2, c = -1, F is (totally) real and sigma acts on K as
// complex conjugation: the norm form x0 conj(x0) + x1 conj(x1) is then
// positive definite in every real embedding of F, so D embeds into
// Hamilton's quaternions and is division. Returns false whenever the
// preconditions fail, so callers fall back to search.
bool is_division_quaternion_definite(const CyclicAlgebra& D);

}  // namespace iterstbc

#endif
