#ifndef ITERSTBC_ITERATED_ALGEBRA_HPP
#define ITERSTBC_ITERATED_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iterstbc/cyclic_algebra.hpp"

namespace iterstbc {

// Placement of d in the wrap-around branch of the product:
//   LEFT:   (f^i x)(f^j y) = f^{i+j-n} d tau~^j(x) y
//   MIDDLE: (f^i x)(f^j y) = f^{i+j-n} tau~^j(x) d y
//   RIGHT:  (f^i x)(f^j y) = f^{i+j-n} tau~^j(x) y d
// All three coincide when d lies in F.
enum class IterVariant { Left, Middle, Right };

const char* variant_name(IterVariant v);

class AElement;

// Nonassociative algebra on D + fD + ... + f^{n-1}D.
class IteratedAlgebra : public std::enable_shared_from_this<IteratedAlgebra> {
public:
    static std::shared_ptr<const IteratedAlgebra> create(AlgebraPtr D, unsigned n, DElement d,
                                                         IterVariant variant);

    const AlgebraPtr& D() const { return D_; }
    unsigned n() const { return n_; }
    unsigned m() const { return D_->m(); }
    const DElement& d() const { return d_; }
    IterVariant variant() const { return variant_; }
    const FieldPtr& field() const { return D_->field(); }
    const TowerSpec& tower() const { return D_->tower(); }

    // d lies in L (scalar coordinate fixed by tau): required for the
    // K-matrix representation of the RIGHT variant.
    bool d_in_L() const;
    // d lies in F (scalar coordinate fixed by sigma): all variants agree.
    bool d_in_F() const;

    AElement zero() const;
    AElement one() const;
    AElement from_D(const DElement& x, unsigned layer = 0) const;  // f^layer * x
    AElement element(std::vector<DElement> coords) const;

private:
    IteratedAlgebra(AlgebraPtr D, unsigned n, DElement d, IterVariant variant);
    AlgebraPtr D_;
    unsigned n_;
    DElement d_;
    IterVariant variant_;
};

using IterPtr = std::shared_ptr<const IteratedAlgebra>;

// Element x = x_0 + f x_1 + ... + f^{n-1} x_{n-1} over the right-D basis.
class AElement {
public:
    AElement() = default;
    AElement(IterPtr algebra, std::vector<DElement> coords);

    const IterPtr& algebra() const { return algebra_; }
    const std::vector<DElement>& coords() const { return coords_; }
    const DElement& coord(unsigned i) const { return coords_[i]; }

    bool is_zero() const;

    AElement operator-() const;
    AElement& operator+=(const AElement& o);
    AElement& operator-=(const AElement& o);
    friend AElement operator+(AElement a, const AElement& b) { return a += b; }
    friend AElement operator-(AElement a, const AElement& b) { return a -= b; }
    friend AElement operator*(const AElement& a, const AElement& b);
    bool operator==(const AElement& o) const;
    bool operator!=(const AElement& o) const { return !(*this == o); }

private:
    IterPtr algebra_;
    std::vector<DElement> coords_;
};

// Bilinear extension of the basis rules.
AElement a_mul(const AElement& x, const AElement& y);

// [x, y, z] = (xy)z - x(yz).
AElement associator(const AElement& x, const AElement& y, const AElement& z);

// n x n matrix over D representing left multiplication. Raw entries are
// tau~^j(x_i); wrap entries (column > row) additionally carry d, applied
// per variant when the matrix acts on a coordinate vector.
class MMatrix {
public:
    MMatrix(IterPtr algebra, std::vector<DElement> entries);

    const DElement& raw(unsigned r, unsigned c) const { return entries_[r * n() + c]; }
    // Entry as displayed: d * raw (LEFT), raw * d (MIDDLE) on wrap slots;
    // RIGHT wrap entries act as y -> raw * y * d and are displayed as raw
    // with a trailing-d marker.
    DElement display(unsigned r, unsigned c) const;
    bool wraps(unsigned r, unsigned c) const { return c > r; }

    unsigned n() const { return algebra_->n(); }
    // M(x) applied to coords(y); equals coords(x*y) for every variant.
    std::vector<DElement> apply(const std::vector<DElement>& y) const;

private:
    IterPtr algebra_;
    std::vector<DElement> entries_;
};

MMatrix m_matrix(const AElement& x);

// Column vector of x over the K-basis {1, e, .., e^{m-1}, f, fe, ..,
// f^{n-1}e^{m-1}}.
std::vector<CycloElement> flatten(const AElement& x);
AElement unflatten(const IterPtr& algebra, const std::vector<CycloElement>& v);

// mn x mn matrix over K representing left multiplication:
// flatten(x*y) = lambda_matrix(x) * flatten(y). For the RIGHT variant this
// requires d in L.
KMatrix lambda_matrix(const AElement& x);

// Block cyclic-shift P with d I_m in the top-right corner; for the RIGHT
// variant with d in L, lambda_matrix(x) = P * tau(lambda_matrix(x)) * P^-1.
KMatrix shift_conjugator(const IteratedAlgebra& A);

struct ZeroDivisorWitness {
    AElement x, y;  // nonzero, x*y = 0
};

struct ZeroDivisorSearchResult {
    std::optional<ZeroDivisorWitness> witness;
    long box = 0;
    uint64_t candidates_checked = 0;
    // "determinant" when every box-bounded x was cleared through the
    // left-multiplication determinant (covers all y, not just boxed ones);
    // "pairwise" for the fallback product enumeration.
    std::string method;
};

// Searches x with integer coordinates in [-box, box] over the given
// K-basis slots (all mn slots when `support` is empty). When the K-matrix
// representation exists, a candidate x is cleared by det lambda_matrix(x)
// != 0, which rules out every partner y; otherwise pairs are enumerated.
// NotFound (empty witness) is exhaustive for the stated scope.
ZeroDivisorSearchResult zero_divisor_search(const IterPtr& A, long box,
                                            const std::vector<unsigned>& support = {});

}  // namespace iterstbc

#endif
