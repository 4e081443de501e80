#include "iterstbc/cyclic_algebra.hpp"

#include <stdexcept>

namespace iterstbc {

CyclicAlgebra::CyclicAlgebra(TowerSpec tower, CycloElement c)
    : tower_(std::move(tower)), c_(std::move(c)) {}

std::shared_ptr<const CyclicAlgebra> CyclicAlgebra::create(TowerSpec tower, CycloElement c) {
    if (c.is_zero()) throw std::invalid_argument("c must be nonzero");
    if (!tower.in_F0(c)) throw std::invalid_argument("c must lie in F0 = F intersect L");
    return std::shared_ptr<const CyclicAlgebra>(new CyclicAlgebra(std::move(tower), std::move(c)));
}

DElement CyclicAlgebra::zero() const {
    return DElement(shared_from_this(), std::vector<CycloElement>(m(), field()->zero()));
}

DElement CyclicAlgebra::one() const { return from_K(field()->one()); }

DElement CyclicAlgebra::from_K(const CycloElement& a) const {
    std::vector<CycloElement> coords(m(), field()->zero());
    coords[0] = a;
    return DElement(shared_from_this(), std::move(coords));
}

DElement CyclicAlgebra::basis_e(unsigned power) const {
    if (power >= m()) throw std::invalid_argument("basis power out of range");
    std::vector<CycloElement> coords(m(), field()->zero());
    coords[power] = field()->one();
    return DElement(shared_from_this(), std::move(coords));
}

DElement CyclicAlgebra::element(std::vector<CycloElement> coords) const {
    return DElement(shared_from_this(), std::move(coords));
}

DElement::DElement(AlgebraPtr algebra, std::vector<CycloElement> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (!algebra_) throw std::invalid_argument("element needs an algebra");
    if (coords_.size() != algebra_->m())
        throw std::invalid_argument("coordinate vector length must equal m");
}

bool DElement::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

bool DElement::is_one() const {
    if (!coords_[0].is_one()) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

bool DElement::in_K() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

DElement DElement::operator-() const {
    std::vector<CycloElement> c;
    c.reserve(coords_.size());
    for (const auto& x : coords_) c.push_back(-x);
    return DElement(algebra_, std::move(c));
}

namespace {
void check_same_algebra(const DElement& a, const DElement& b) {
    if (a.algebra().get() != b.algebra().get()) throw std::invalid_argument("algebra mismatch");
}
}  // namespace

DElement& DElement::operator+=(const DElement& o) {
    check_same_algebra(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

DElement& DElement::operator-=(const DElement& o) {
    check_same_algebra(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

DElement operator*(const DElement& a, const DElement& b) { return d_mul(a, b); }

bool DElement::operator==(const DElement& o) const {
    check_same_algebra(*this, o);
    return coords_ == o.coords_;
}

DElement d_mul(const DElement& x, const DElement& y) {
    check_same_algebra(x, y);
    const auto& A = *x.algebra();
    unsigned m = A.m();
    const auto& sigma = A.tower().sigma();
    std::vector<CycloElement> out(m, A.field()->zero());
    // (e^i a)(e^j b) = e^{i+j} sigma^j(a) b, with e^m = c.
    for (unsigned i = 0; i < m; ++i) {
        if (x.coord(i).is_zero()) continue;
        for (unsigned j = 0; j < m; ++j) {
            if (y.coord(j).is_zero()) continue;
            CycloElement term = apply_aut(sigma.power(j), x.coord(i)) * y.coord(j);
            unsigned k = i + j;
            if (k >= m) {
                k -= m;
                term = A.c() * term;
            }
            out[k] += term;
        }
    }
    return DElement(x.algebra(), std::move(out));
}

KMatrix lambda_of(const DElement& x) {
    const auto& A = *x.algebra();
    unsigned m = A.m();
    const auto& sigma = A.tower().sigma();
    KMatrix mat(m, m, A.field());
    for (unsigned r = 0; r < m; ++r)
        for (unsigned j = 0; j < m; ++j) {
            if (j <= r) {
                mat.at(r, j) = apply_aut(sigma.power(j), x.coord(r - j));
            } else {
                mat.at(r, j) = A.c() * apply_aut(sigma.power(j), x.coord(m + r - j));
            }
        }
    return mat;
}

CycloElement d_norm(const DElement& x) { return lambda_of(x).det(); }

DElement apply_tau(const DElement& x) {
    const auto& tau = x.algebra()->tower().tau();
    std::vector<CycloElement> out;
    out.reserve(x.coords().size());
    for (const auto& c : x.coords()) out.push_back(apply_aut(tau, c));
    return DElement(x.algebra(), std::move(out));
}

DElement apply_tau_pow(const DElement& x, unsigned j) {
    const auto& tower = x.algebra()->tower();
    unsigned n = tower.n();
    j %= n;
    if (j == 0) return x;
    Automorphism tau_j = tower.tau().power(static_cast<long>(j));
    std::vector<CycloElement> out;
    out.reserve(x.coords().size());
    for (const auto& c : x.coords()) out.push_back(apply_aut(tau_j, c));
    return DElement(x.algebra(), std::move(out));
}

DElement d_inv(const DElement& x) {
    if (x.is_zero()) throw std::invalid_argument("inverse of zero");
    auto inv = lambda_of(x).inverse();
    if (!inv) throw std::invalid_argument("element is not invertible");
    std::vector<CycloElement> one_coords(x.algebra()->m(), x.algebra()->field()->zero());
    one_coords[0] = x.algebra()->field()->one();
    return DElement(x.algebra(), inv->apply(one_coords));
}

DElement d_pow(const DElement& x, unsigned e) {
    DElement acc = x.algebra()->one();
    DElement base = x;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool is_division_quaternion_definite(const CyclicAlgebra& D) {
    if (D.m() != 2) return false;
    const CycloElement minus_one = -D.field()->one();
    if (!(D.c() == minus_one)) return false;
    const auto& t = D.tower();
    Automorphism conj(D.field(), D.field()->conductor() - 1);
    // F real: complex conjugation fixes every F generator (an abelian
    // number field is totally real iff its canonical embedding is real).
    for (const auto& g : t.f_generators())
        if (!fixed_by(g, conj)) return false;
    // sigma acts on K as complex conjugation, nontrivially.
    bool moves_k = false;
    for (const auto& g : t.k_generators()) {
        if (!(apply_aut(t.sigma(), g) == apply_aut(conj, g))) return false;
        if (!fixed_by(g, t.sigma())) moves_k = true;
    }
    return moves_k;
}

}  // namespace iterstbc
