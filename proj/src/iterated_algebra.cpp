#include "iterstbc/iterated_algebra.hpp"

#include <stdexcept>

#include "iterstbc/modular.hpp"

namespace iterstbc {

const char* variant_name(IterVariant v) {
    switch (v) {
        case IterVariant::Left: return "left";
        case IterVariant::Middle: return "middle";
        case IterVariant::Right: return "right";
    }
    return "?";
}

IteratedAlgebra::IteratedAlgebra(AlgebraPtr D, unsigned n, DElement d, IterVariant variant)
    : D_(std::move(D)), n_(n), d_(std::move(d)), variant_(variant) {}

std::shared_ptr<const IteratedAlgebra> IteratedAlgebra::create(AlgebraPtr D, unsigned n, DElement d,
                                                               IterVariant variant) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (d.algebra().get() != D.get()) throw std::invalid_argument("d must live in D");
    if (D->tower().n() != n) throw std::invalid_argument("n must match the order of tau on K");
    if (d_norm(d).is_zero()) throw std::invalid_argument("d must be invertible in D");
    return std::shared_ptr<const IteratedAlgebra>(
        new IteratedAlgebra(std::move(D), n, std::move(d), variant));
}

bool IteratedAlgebra::d_in_L() const {
    return d_.in_K() && tower().in_L(d_.coord(0));
}

bool IteratedAlgebra::d_in_F() const {
    return d_.in_K() && tower().in_F(d_.coord(0));
}

AElement IteratedAlgebra::zero() const {
    return AElement(shared_from_this(), std::vector<DElement>(n_, D_->zero()));
}

AElement IteratedAlgebra::one() const { return from_D(D_->one(), 0); }

AElement IteratedAlgebra::from_D(const DElement& x, unsigned layer) const {
    if (layer >= n_) throw std::invalid_argument("layer out of range");
    std::vector<DElement> coords(n_, D_->zero());
    coords[layer] = x;
    return AElement(shared_from_this(), std::move(coords));
}

AElement IteratedAlgebra::element(std::vector<DElement> coords) const {
    return AElement(shared_from_this(), std::move(coords));
}

AElement::AElement(IterPtr algebra, std::vector<DElement> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (!algebra_) throw std::invalid_argument("element needs an algebra");
    if (coords_.size() != algebra_->n())
        throw std::invalid_argument("coordinate vector length must equal n");
}

bool AElement::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

AElement AElement::operator-() const {
    std::vector<DElement> c;
    c.reserve(coords_.size());
    for (const auto& x : coords_) c.push_back(-x);
    return AElement(algebra_, std::move(c));
}

namespace {
void check_same_algebra(const AElement& a, const AElement& b) {
    if (a.algebra().get() != b.algebra().get()) throw std::invalid_argument("algebra mismatch");
}
}  // namespace

AElement& AElement::operator+=(const AElement& o) {
    check_same_algebra(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

AElement& AElement::operator-=(const AElement& o) {
    check_same_algebra(*this, o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

AElement operator*(const AElement& a, const AElement& b) { return a_mul(a, b); }

bool AElement::operator==(const AElement& o) const {
    check_same_algebra(*this, o);
    return coords_ == o.coords_;
}

AElement a_mul(const AElement& x, const AElement& y) {
    check_same_algebra(x, y);
    const auto& A = *x.algebra();
    unsigned n = A.n();
    const DElement& d = A.d();
    std::vector<DElement> out(n, A.D()->zero());
    for (unsigned i = 0; i < n; ++i) {
        if (x.coord(i).is_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (y.coord(j).is_zero()) continue;
            DElement tx = apply_tau_pow(x.coord(i), j);
            if (i + j < n) {
                out[i + j] += tx * y.coord(j);
            } else {
                unsigned k = i + j - n;
                switch (A.variant()) {
                    case IterVariant::Left: out[k] += d * (tx * y.coord(j)); break;
                    case IterVariant::Middle: out[k] += (tx * d) * y.coord(j); break;
                    case IterVariant::Right: out[k] += (tx * y.coord(j)) * d; break;
                }
            }
        }
    }
    return AElement(x.algebra(), std::move(out));
}

AElement associator(const AElement& x, const AElement& y, const AElement& z) {
    return (x * y) * z - x * (y * z);
}

MMatrix::MMatrix(IterPtr algebra, std::vector<DElement> entries)
    : algebra_(std::move(algebra)), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<size_t>(n()) * n())
        throw std::invalid_argument("entry count mismatch");
}

DElement MMatrix::display(unsigned r, unsigned c) const {
    if (!wraps(r, c)) return raw(r, c);
    switch (algebra_->variant()) {
        case IterVariant::Left: return algebra_->d() * raw(r, c);
        case IterVariant::Middle:
        case IterVariant::Right:
            // Formal entry with trailing d; for RIGHT the operator applies
            // d after the argument (see apply), the display is the plain
            // product.
            return raw(r, c) * algebra_->d();
    }
    throw std::logic_error("unreachable");
}

std::vector<DElement> MMatrix::apply(const std::vector<DElement>& y) const {
    unsigned nn = n();
    if (y.size() != nn) throw std::invalid_argument("vector length mismatch");
    const DElement& d = algebra_->d();
    std::vector<DElement> out(nn, algebra_->D()->zero());
    for (unsigned r = 0; r < nn; ++r)
        for (unsigned c = 0; c < nn; ++c) {
            if (raw(r, c).is_zero() || y[c].is_zero()) continue;
            if (!wraps(r, c)) {
                out[r] += raw(r, c) * y[c];
                continue;
            }
            switch (algebra_->variant()) {
                case IterVariant::Left: out[r] += d * (raw(r, c) * y[c]); break;
                case IterVariant::Middle: out[r] += (raw(r, c) * d) * y[c]; break;
                case IterVariant::Right: out[r] += (raw(r, c) * y[c]) * d; break;
            }
        }
    return out;
}

MMatrix m_matrix(const AElement& x) {
    const auto& A = *x.algebra();
    unsigned n = A.n();
    std::vector<DElement> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) {
            unsigned i = (c <= r) ? (r - c) : (r + n - c);
            entries.push_back(apply_tau_pow(x.coord(i), c));
        }
    return MMatrix(x.algebra(), std::move(entries));
}

std::vector<CycloElement> flatten(const AElement& x) {
    const auto& A = *x.algebra();
    std::vector<CycloElement> v;
    v.reserve(static_cast<size_t>(A.n()) * A.m());
    for (unsigned i = 0; i < A.n(); ++i)
        for (unsigned k = 0; k < A.m(); ++k) v.push_back(x.coord(i).coord(k));
    return v;
}

AElement unflatten(const IterPtr& algebra, const std::vector<CycloElement>& v) {
    unsigned n = algebra->n(), m = algebra->m();
    if (v.size() != static_cast<size_t>(n) * m) throw std::invalid_argument("vector length mismatch");
    std::vector<DElement> coords;
    coords.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        std::vector<CycloElement> kc(v.begin() + static_cast<long>(i) * m,
                                     v.begin() + static_cast<long>(i + 1) * m);
        coords.push_back(algebra->D()->element(std::move(kc)));
    }
    return AElement(algebra, std::move(coords));
}

KMatrix lambda_matrix(const AElement& x) {
    const auto& A = *x.algebra();
    unsigned n = A.n(), m = A.m();
    const bool right = A.variant() == IterVariant::Right;
    if (right && !A.d_in_L())
        throw std::invalid_argument("K-matrix representation of the right variant needs d in L");

    KMatrix lambda_d(m, m, A.field());
    CycloElement d_scalar = A.field()->zero();
    if (right)
        d_scalar = A.d().coord(0);
    else
        lambda_d = lambda_of(A.d());

    const auto& tau = A.tower().tau();
    KMatrix out(n * m, n * m, A.field());
    for (unsigned I = 0; I < n; ++I)
        for (unsigned J = 0; J < n; ++J) {
            unsigned i = (J <= I) ? (I - J) : (I + n - J);
            KMatrix block = lambda_of(x.coord(i)).mapped(tau.power(static_cast<long>(J)));
            if (J > I) {
                switch (A.variant()) {
                    case IterVariant::Left: block = lambda_d * block; break;
                    case IterVariant::Middle: block = block * lambda_d; break;
                    case IterVariant::Right: block = block.scaled(d_scalar); break;
                }
            }
            for (unsigned r = 0; r < m; ++r)
                for (unsigned c = 0; c < m; ++c) out.at(I * m + r, J * m + c) = block.at(r, c);
        }
    return out;
}

KMatrix shift_conjugator(const IteratedAlgebra& A) {
    if (A.variant() != IterVariant::Right || !A.d_in_L())
        throw std::invalid_argument("shift conjugator is defined for the right variant with d in L");
    unsigned n = A.n(), m = A.m();
    KMatrix P(n * m, n * m, A.field());
    const CycloElement d0 = A.d().coord(0);
    for (unsigned r = 0; r < m; ++r) P.at(r, (n - 1) * m + r) = d0;
    for (unsigned I = 1; I < n; ++I)
        for (unsigned r = 0; r < m; ++r) P.at(I * m + r, (I - 1) * m + r) = A.field()->one();
    return P;
}

namespace {

// Odometer over [-box, box]^k in lexicographic order (first slot most
// significant). Returns false when exhausted.
bool next_vector(std::vector<long>& v, long box) {
    for (size_t i = v.size(); i-- > 0;) {
        if (v[i] < box) {
            ++v[i];
            for (size_t j = i + 1; j < v.size(); ++j) v[j] = -box;
            return true;
        }
    }
    return false;
}

bool all_zero(const std::vector<long>& v) {
    for (long x : v)
        if (x != 0) return false;
    return true;
}

AElement element_from_slots(const IterPtr& A, const std::vector<unsigned>& support,
                            const std::vector<long>& values) {
    unsigned n = A->n(), m = A->m();
    std::vector<CycloElement> flat(static_cast<size_t>(n) * m, A->field()->zero());
    for (size_t t = 0; t < support.size(); ++t)
        flat[support[t]] = A->field()->from_rational(Rational(values[t]));
    return unflatten(A, flat);
}

// F_p determinant of the left-multiplication matrix of an integer-slot
// candidate, evaluated at one primitive root. Nonzero certifies
// det(lambda_matrix(x)) != 0 exactly.
struct DetScreen {
    const ModularScreen& screen;
    unsigned n, m;
    uint64_t p;
    bool right;
    uint64_t d_scalar = 0;                 // RIGHT: eval of d at slot 0
    std::vector<uint64_t> lambda_d;        // LEFT/MIDDLE: m x m eval of lambda(d)
    uint64_t c_hat = 0;                    // eval of the cyclic constant c

    DetScreen(const ModularScreen& s, const IteratedAlgebra& A)
        : screen(s), n(A.n()), m(A.m()), p(s.prime()), right(A.variant() == IterVariant::Right) {
        auto c_eval = s.eval(A.D()->c());
        if (!c_eval) throw std::logic_error("modular screen: bad denominator in c");
        c_hat = (*c_eval)[0];
        if (right) {
            auto d_eval = s.eval(A.d().coord(0));
            if (!d_eval) throw std::logic_error("modular screen: bad denominator in d");
            d_scalar = (*d_eval)[0];
        } else {
            KMatrix ld = lambda_of(A.d());
            lambda_d.resize(static_cast<size_t>(m) * m);
            for (unsigned r = 0; r < m; ++r)
                for (unsigned c = 0; c < m; ++c) {
                    auto e = s.eval(ld.at(r, c));
                    if (!e) throw std::logic_error("modular screen: bad denominator in d");
                    lambda_d[r * m + c] = (*e)[0];
                }
        }
    }

    // Integer-slot candidates have rational-integer K-coordinates, which
    // every automorphism fixes, so lambda blocks are tau-invariant.
    bool det_nonzero(const IteratedAlgebra& A, const std::vector<unsigned>& support,
                     const std::vector<long>& values) const {
        (void)A;
        unsigned mn = n * m;
        std::vector<uint64_t> coord(static_cast<size_t>(n) * m, 0);
        for (size_t t = 0; t < support.size(); ++t) {
            long v = values[t];
            uint64_t u = v >= 0 ? static_cast<uint64_t>(v) : p - static_cast<uint64_t>(-v);
            coord[support[t]] = u % p;
        }
        auto lam_entry = [&](unsigned layer, unsigned r, unsigned c) -> uint64_t {
            if (c <= r) return coord[static_cast<size_t>(layer) * m + (r - c)];
            return screen.mul(c_hat, coord[static_cast<size_t>(layer) * m + (m + r - c)]);
        };
        std::vector<uint64_t> mat(static_cast<size_t>(mn) * mn, 0);
        const bool left_variant = A.variant() == IterVariant::Left;
        for (unsigned I = 0; I < n; ++I)
            for (unsigned J = 0; J < n; ++J) {
                unsigned layer = (J <= I) ? (I - J) : (I + n - J);
                for (unsigned r = 0; r < m; ++r)
                    for (unsigned c = 0; c < m; ++c) {
                        uint64_t v;
                        if (J <= I) {
                            v = lam_entry(layer, r, c);
                        } else if (right) {
                            v = screen.mul(d_scalar, lam_entry(layer, r, c));
                        } else {
                            // lambda_d * block (LEFT) or block * lambda_d (MIDDLE)
                            uint64_t acc = 0;
                            for (unsigned k = 0; k < m; ++k) {
                                uint64_t l = left_variant ? lambda_d[r * m + k] : lam_entry(layer, r, k);
                                uint64_t rr = left_variant ? lam_entry(layer, k, c) : lambda_d[k * m + c];
                                acc = screen.add(acc, screen.mul(l, rr));
                            }
                            v = acc;
                        }
                        mat[static_cast<size_t>(I * m + r) * mn + (J * m + c)] = v;
                    }
            }
        // Gaussian elimination mod p.
        auto idx = [&](unsigned r, unsigned c) { return static_cast<size_t>(r) * mn + c; };
        for (unsigned col = 0; col < mn; ++col) {
            unsigned piv = col;
            while (piv < mn && mat[idx(piv, col)] == 0) ++piv;
            if (piv == mn) return false;  // singular mod p: needs exact check
            if (piv != col)
                for (unsigned j = col; j < mn; ++j) std::swap(mat[idx(piv, j)], mat[idx(col, j)]);
            uint64_t inv = 1, base = mat[idx(col, col)], e = p - 2;
            while (e) {
                if (e & 1) inv = screen.mul(inv, base);
                base = screen.mul(base, base);
                e >>= 1;
            }
            for (unsigned r = col + 1; r < mn; ++r) {
                if (mat[idx(r, col)] == 0) continue;
                uint64_t f = screen.mul(mat[idx(r, col)], inv);
                for (unsigned j = col; j < mn; ++j)
                    mat[idx(r, j)] = screen.sub(mat[idx(r, j)], screen.mul(f, mat[idx(col, j)]));
            }
        }
        return true;
    }
};

}  // namespace

ZeroDivisorSearchResult zero_divisor_search(const IterPtr& A, long box,
                                            const std::vector<unsigned>& support_in) {
    if (box < 1) throw std::invalid_argument("box must be at least 1");
    unsigned mn = A->n() * A->m();
    std::vector<unsigned> support = support_in;
    if (support.empty())
        for (unsigned s = 0; s < mn; ++s) support.push_back(s);
    for (unsigned s : support)
        if (s >= mn) throw std::invalid_argument("support slot out of range");

    ZeroDivisorSearchResult result;
    result.box = box;
    const bool have_rep = (A->variant() != IterVariant::Right) || A->d_in_L();

    if (have_rep) {
        result.method = "determinant";
        ModularScreen screen(A->field());
        DetScreen det_screen(screen, *A);
        std::vector<long> v(support.size(), -box);
        do {
            if (all_zero(v)) continue;
            ++result.candidates_checked;
            if (det_screen.det_nonzero(*A, support, v)) continue;
            AElement x = element_from_slots(A, support, v);
            KMatrix lam = lambda_matrix(x);
            if (!lam.det().is_zero()) continue;  // screen false positive
            auto ker = lam.kernel_vector();
            if (!ker) throw std::logic_error("singular matrix without kernel vector");
            AElement y = unflatten(A, *ker);
            if (!a_mul(x, y).is_zero()) throw std::logic_error("kernel vector is not a zero divisor partner");
            result.witness = ZeroDivisorWitness{x, y};
            return result;
        } while (next_vector(v, box));
        return result;
    }

    result.method = "pairwise";
    std::vector<long> vx(support.size(), -box);
    do {
        if (all_zero(vx)) continue;
        AElement x = element_from_slots(A, support, vx);
        std::vector<long> vy(support.size(), -box);
        do {
            if (all_zero(vy)) continue;
            ++result.candidates_checked;
            AElement y = element_from_slots(A, support, vy);
            if (a_mul(x, y).is_zero()) {
                result.witness = ZeroDivisorWitness{x, y};
                return result;
            }
        } while (next_vector(vy, box));
    } while (next_vector(vx, box));
    return result;
}

}  // namespace iterstbc
