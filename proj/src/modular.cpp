#include "iterstbc/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace iterstbc {

namespace {

uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t acc = 1;
    b %= p;
    while (e) {
        if (e & 1) acc = ModularScreen::mulmod(acc, b, p);
        b = ModularScreen::mulmod(b, b, p);
        e >>= 1;
    }
    return acc;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for 64-bit integers.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = ModularScreen::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

ModularScreen::ModularScreen(const FieldPtr& field) : field_(field) {
    unsigned N = field->conductor();
    // Smallest prime above 2^60 congruent to 1 mod N.
    uint64_t base = (1ull << 60) + 1;
    uint64_t r = base % N;
    uint64_t p = base + ((r == 1) ? 0 : (r < 1 ? 1 - r : N + 1 - r));
    while (!is_prime_u64(p)) p += N;
    p_ = p;

    // Element of multiplicative order exactly N.
    auto qs = prime_factors(N);
    uint64_t w = 0;
    for (uint64_t a = 2; a < p_; ++a) {
        uint64_t cand = powmod(a, (p_ - 1) / N, p_);
        if (cand == 1) continue;
        bool ok = true;
        for (uint64_t q : qs)
            if (powmod(cand, N / q, p_) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            w = cand;
            break;
        }
    }
    if (w == 0) throw std::logic_error("no primitive root found");
    w_ = w;
    w_pows_.resize(N);
    w_pows_[0] = 1;
    for (unsigned j = 1; j < N; ++j) w_pows_[j] = mul(w_pows_[j - 1], w_);

    slot_of_exp_.assign(N, -1);
    for (unsigned k = 1; k < N; ++k) {
        if (std::gcd(k, N) != 1) continue;
        slot_of_exp_[k] = static_cast<int>(unit_exps_.size());
        unit_exps_.push_back(k);
    }
}

std::optional<std::vector<uint64_t>> ModularScreen::eval(const CycloElement& a) const {
    unsigned N = field_->conductor();
    unsigned deg = field_->degree();
    std::vector<uint64_t> num(deg), den_inv(deg);
    for (unsigned i = 0; i < deg; ++i) {
        const Rational& c = a.coeff(i);
        mpz_class n_mod = c.get_num() % static_cast<long>(p_);
        if (n_mod < 0) n_mod += static_cast<long>(p_);
        mpz_class d_mod = c.get_den() % static_cast<long>(p_);
        if (d_mod == 0) return std::nullopt;
        num[i] = n_mod.get_ui();
        den_inv[i] = powmod(d_mod.get_ui(), p_ - 2, p_);
    }
    std::vector<uint64_t> out(unit_exps_.size());
    for (unsigned t = 0; t < unit_exps_.size(); ++t) {
        unsigned k = unit_exps_[t];
        uint64_t acc = 0;
        for (unsigned i = 0; i < deg; ++i) {
            if (num[i] == 0) continue;
            uint64_t coeff = mul(num[i], den_inv[i]);
            acc = add(acc, mul(coeff, w_pows_[(static_cast<unsigned long long>(i) * k) % N]));
        }
        out[t] = acc;
    }
    return out;
}

std::vector<unsigned> ModularScreen::aut_permutation(unsigned k) const {
    unsigned N = field_->conductor();
    std::vector<unsigned> perm(unit_exps_.size());
    for (unsigned t = 0; t < unit_exps_.size(); ++t) {
        unsigned dst = static_cast<unsigned>((static_cast<unsigned long long>(unit_exps_[t]) * k) % N);
        perm[t] = static_cast<unsigned>(slot_of_exp_[dst]);
    }
    return perm;
}

uint64_t ModularScreen::root_power(unsigned slot, unsigned j) const {
    unsigned N = field_->conductor();
    return w_pows_[(static_cast<unsigned long long>(unit_exps_[slot]) * j) % N];
}

}  // namespace iterstbc
