#ifndef ITERSTBC_MODULAR_HPP
#define ITERSTBC_MODULAR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iterstbc/cyclotomic.hpp"

namespace iterstbc {

// Screening arithmetic in F_p for a prime p = 1 (mod N). Evaluating
// zeta -> w (a primitive N-th root of unity mod p) is a ring homomorphism
// Z[zeta] -> F_p, so a nonzero image certifies a nonzero element. Elements
// are screened on the vector of evaluations at all primitive roots w^k
// (k coprime to N), on which the Galois action is an index permutation.
// Screening never decides equality: equal images always fall back to
// exact arithmetic at the call site.
class ModularScreen {
public:
    explicit ModularScreen(const FieldPtr& field);

    uint64_t prime() const { return p_; }
    unsigned slots() const { return static_cast<unsigned>(unit_exps_.size()); }

    // Evaluation vector of an exact element (one value per primitive root).
    // Empty optional when a coefficient denominator is divisible by p.
    std::optional<std::vector<uint64_t>> eval(const CycloElement& a) const;

    // Slot permutation realizing zeta -> zeta^k on evaluation vectors.
    std::vector<unsigned> aut_permutation(unsigned k) const;

    static uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return mulmod(a, b, p_); }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

    // Value of zeta^j under the evaluation at slot t.
    uint64_t root_power(unsigned slot, unsigned j) const;

private:
    FieldPtr field_;
    uint64_t p_;
    uint64_t w_;                        // primitive N-th root of unity mod p
    std::vector<uint64_t> w_pows_;      // w^j for j in [0, N)
    std::vector<unsigned> unit_exps_;   // exponents coprime to N, ascending
    std::vector<int> slot_of_exp_;      // inverse lookup, -1 when not a unit
};

// Deterministic 64-bit Miller-Rabin.
bool is_prime_u64(uint64_t n);

}  // namespace iterstbc

#endif
