#include "iterstbc/cyclotomic.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace iterstbc {

namespace {

using Poly = std::vector<Rational>;  // coefficient i on x^i

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of polynomials over Q, remainder must vanish.
Poly poly_div_exact(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        poly_trim(num);
        if (num.empty()) break;
    }
    if (!num.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

// Phi_N via x^N - 1 = prod_{d | N} Phi_d.
Poly cyclotomic_poly(unsigned n) {
    Poly num(n + 1, Rational(0));
    num[0] = Rational(-1);
    num[n] = Rational(1);
    Poly result = num;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly phi_d = cyclotomic_poly(d);
        result = poly_div_exact(result, phi_d);
    }
    return result;
}

unsigned euler_phi(unsigned n) {
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace

CycloField::CycloField(unsigned conductor) : conductor_(conductor) {
    if (conductor == 0) throw std::invalid_argument("conductor must be positive");
    minpoly_ = cyclotomic_poly(conductor);
    degree_ = static_cast<unsigned>(minpoly_.size() - 1);
    if (degree_ != euler_phi(conductor)) throw std::logic_error("cyclotomic degree mismatch");

    // zeta^j over the power basis for every j < N; built iteratively,
    // reducing by the monic minimal polynomial whenever degree is reached.
    zeta_pow_table_.resize(conductor);
    std::vector<Rational> cur(degree_, Rational(0));
    cur[0] = Rational(1);
    zeta_pow_table_[0] = cur;
    for (unsigned j = 1; j < conductor; ++j) {
        std::vector<Rational> next(degree_, Rational(0));
        // multiply by zeta: shift, then fold the overflow with
        // zeta^degree = -(minpoly_[0] + ... + minpoly_[degree-1] zeta^{degree-1}).
        Rational overflow = cur[degree_ - 1];
        for (unsigned i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
        next[0] = Rational(0);
        if (overflow != 0) {
            for (unsigned i = 0; i < degree_; ++i) next[i] -= overflow * minpoly_[i];
        }
        zeta_pow_table_[j] = next;
        cur = std::move(next);
    }
}

std::shared_ptr<const CycloField> CycloField::get(unsigned conductor) {
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const CycloField>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(conductor);
    if (it != cache.end()) return it->second;
    auto field = std::shared_ptr<const CycloField>(new CycloField(conductor));
    cache.emplace(conductor, field);
    return field;
}

const std::vector<Rational>& CycloField::power_of_zeta(unsigned j) const {
    return zeta_pow_table_[j % conductor_];
}

CycloElement CycloField::zero() const {
    return CycloElement(get(conductor_), std::vector<Rational>(degree_, Rational(0)));
}

CycloElement CycloField::one() const { return from_rational(Rational(1)); }

CycloElement CycloField::from_rational(const Rational& r) const {
    std::vector<Rational> c(degree_, Rational(0));
    c[0] = r;
    return CycloElement(get(conductor_), std::move(c));
}

CycloElement CycloField::zeta_pow(unsigned j) const {
    return CycloElement(get(conductor_), power_of_zeta(j));
}

Automorphism::Automorphism(FieldPtr field, unsigned exponent) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("automorphism needs a field");
    exponent_ = exponent % field_->conductor();
    if (std::gcd(exponent_, field_->conductor()) != 1)
        throw std::invalid_argument("automorphism exponent not coprime to the conductor");
}

Automorphism Automorphism::compose(const Automorphism& other) const {
    if (field_->conductor() != other.field_->conductor())
        throw std::invalid_argument("automorphism conductor mismatch");
    unsigned long long k = static_cast<unsigned long long>(exponent_) * other.exponent_;
    return Automorphism(field_, static_cast<unsigned>(k % field_->conductor()));
}

Automorphism Automorphism::inverse() const {
    unsigned n = field_->conductor();
    // exponents form a finite group; invert by scanning (n is small).
    for (unsigned k = 1; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        if ((static_cast<unsigned long long>(k) * exponent_) % n == 1)
            return Automorphism(field_, k);
    }
    throw std::logic_error("automorphism has no inverse");
}

Automorphism Automorphism::power(long e) const {
    unsigned n = field_->conductor();
    unsigned long r;
    if (e >= 0) {
        r = static_cast<unsigned long>(e);
    } else {
        unsigned ord = order();
        long m = e % static_cast<long>(ord);
        if (m < 0) m += ord;
        r = static_cast<unsigned long>(m);
    }
    unsigned long long acc = 1, base = exponent_ % n;
    while (r > 0) {
        if (r & 1) acc = (acc * base) % n;
        base = (base * base) % n;
        r >>= 1;
    }
    return Automorphism(field_, static_cast<unsigned>(acc));
}

unsigned Automorphism::order() const {
    unsigned n = field_->conductor();
    unsigned long long acc = exponent_ % n;
    unsigned ord = 1;
    while (acc != 1) {
        acc = (acc * exponent_) % n;
        ++ord;
        if (ord > n) throw std::logic_error("order computation ran away");
    }
    return ord;
}

bool Automorphism::operator==(const Automorphism& o) const {
    return field_->conductor() == o.field_->conductor() && exponent_ == o.exponent_;
}

CycloElement::CycloElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("element needs a field");
    if (coeffs_.size() != field_->degree())
        throw std::invalid_argument("coefficient vector length must equal the field degree");
}

bool CycloElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycloElement::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool CycloElement::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CycloElement::rational_value() const {
    if (!is_rational()) throw std::logic_error("element is not rational");
    return coeffs_[0];
}

CycloElement CycloElement::operator-() const {
    std::vector<Rational> c(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
    return CycloElement(field_, std::move(c));
}

namespace {
void check_same_field(const CycloElement& a, const CycloElement& b) {
    if (!a.field() || !b.field() || a.field()->conductor() != b.field()->conductor())
        throw std::invalid_argument("conductor mismatch");
}
}  // namespace

CycloElement& CycloElement::operator+=(const CycloElement& o) {
    check_same_field(*this, o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
    check_same_field(*this, o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) { return cyclo_mul(a, b); }

CycloElement operator*(const Rational& r, const CycloElement& a) {
    std::vector<Rational> c(a.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = r * a.coeffs()[i];
    return CycloElement(a.field(), std::move(c));
}

bool CycloElement::operator==(const CycloElement& o) const {
    check_same_field(*this, o);
    return coeffs_ == o.coeffs_;
}

CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b) {
    check_same_field(a, b);
    const auto& field = *a.field();
    unsigned deg = field.degree();
    // Plain convolution, then fold monomials of exponent >= deg through the
    // precomputed zeta-power table (x^N = 1 modulo the cyclotomic polynomial,
    // so exponent arithmetic mod N is valid).
    std::vector<Rational> conv(2 * deg - 1, Rational(0));
    for (unsigned i = 0; i < deg; ++i) {
        if (a.coeff(i) == 0) continue;
        for (unsigned j = 0; j < deg; ++j) {
            if (b.coeff(j) == 0) continue;
            conv[i + j] += a.coeff(i) * b.coeff(j);
        }
    }
    std::vector<Rational> out(deg, Rational(0));
    for (unsigned i = 0; i < deg; ++i) out[i] = conv[i];
    for (unsigned e = deg; e < conv.size(); ++e) {
        if (conv[e] == 0) continue;
        const auto& rep = field.power_of_zeta(e);
        for (unsigned i = 0; i < deg; ++i) out[i] += conv[e] * rep[i];
    }
    return CycloElement(a.field(), std::move(out));
}

CycloElement cyclo_inv(const CycloElement& a) {
    if (a.is_zero()) throw std::invalid_argument("inverse of zero");
    const auto& field = *a.field();
    // Extended Euclid in Q[x] between the element (degree < deg) and the
    // minimal polynomial: s*a + t*minpoly = gcd = nonzero constant.
    using Poly = std::vector<Rational>;
    Poly r0 = field.minimal_polynomial();
    Poly r1(a.coeffs());
    poly_trim(r1);
    Poly s0{Rational(0)}, s1{Rational(1)};  // coefficients on `a`
    poly_trim(s0);
    while (true) {
        // divide r0 by r1
        Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
        Poly rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational c = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            poly_trim(rem);
        }
        // s_new = s0 - q*s1
        Poly qs(q.size() + s1.size() > 0 ? q.size() + s1.size() - 1 : 0, Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        }
        Poly s_new(std::max(s0.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) s_new[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s_new[i] -= qs[i];
        poly_trim(s_new);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_new);
        if (r1.empty()) break;
    }
    // r0 is the gcd; it must be a nonzero constant (minpoly irreducible).
    if (r0.size() != 1 || r0[0] == 0) throw std::logic_error("element not invertible mod minimal polynomial");
    Rational scale = Rational(1) / r0[0];
    std::vector<Rational> out(field.degree(), Rational(0));
    for (size_t i = 0; i < s0.size() && i < out.size(); ++i) out[i] = scale * s0[i];
    return CycloElement(a.field(), std::move(out));
}

CycloElement cyclo_pow(const CycloElement& a, unsigned long e) {
    CycloElement acc = a.field()->one();
    CycloElement base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

CycloElement apply_aut(const Automorphism& phi, const CycloElement& a) {
    if (phi.field()->conductor() != a.field()->conductor())
        throw std::invalid_argument("automorphism/element conductor mismatch");
    const auto& field = *a.field();
    unsigned n = field.conductor();
    unsigned deg = field.degree();
    std::vector<Rational> out(deg, Rational(0));
    for (unsigned i = 0; i < deg; ++i) {
        if (a.coeff(i) == 0) continue;
        unsigned e = static_cast<unsigned>((static_cast<unsigned long long>(i) * phi.exponent()) % n);
        const auto& rep = field.power_of_zeta(e);
        for (unsigned k = 0; k < deg; ++k) out[k] += a.coeff(i) * rep[k];
    }
    return CycloElement(a.field(), std::move(out));
}

CycloElement conjugate(const CycloElement& a) {
    return apply_aut(Automorphism(a.field(), a.field()->conductor() - 1), a);
}

std::complex<long double> embed_complex(const CycloElement& a, unsigned precision_bits) {
    if (precision_bits < 2) precision_bits = 2;
    const unsigned work = precision_bits + 16;
    unsigned n = a.field()->conductor();
    unsigned deg = a.field()->degree();

    mpfr_t angle, c, s, re, im, term, coeff;
    mpfr_inits2(work, angle, c, s, re, im, term, coeff, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    for (unsigned i = 0; i < deg; ++i) {
        if (a.coeff(i) == 0) continue;
        mpfr_set_q(coeff, a.coeff(i).get_mpq_t(), MPFR_RNDN);
        mpfr_const_pi(angle, MPFR_RNDN);
        mpfr_mul_ui(angle, angle, 2 * i, MPFR_RNDN);
        mpfr_div_ui(angle, angle, n, MPFR_RNDN);
        mpfr_sin_cos(s, c, angle, MPFR_RNDN);
        mpfr_mul(term, coeff, c, MPFR_RNDN);
        mpfr_add(re, re, term, MPFR_RNDN);
        mpfr_mul(term, coeff, s, MPFR_RNDN);
        mpfr_add(im, im, term, MPFR_RNDN);
    }
    long double re_d = mpfr_get_ld(re, MPFR_RNDN);
    long double im_d = mpfr_get_ld(im, MPFR_RNDN);
    mpfr_clears(angle, c, s, re, im, term, coeff, static_cast<mpfr_ptr>(nullptr));
    return {re_d, im_d};
}

}  // namespace iterstbc
