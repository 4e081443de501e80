#ifndef ITERSTBC_TOWER_HPP
#define ITERSTBC_TOWER_HPP

#include <string>
#include <vector>

#include "iterstbc/cyclotomic.hpp"

namespace iterstbc {

// The double tower inside one ambient cyclotomic field:
//   K/F cyclic of degree m with Gal(K/F) = <sigma>,
//   K/L cyclic of degree n with Gal(K/L) = <tau>,
//   F0 = F intersect L.
// Subfield membership is decided through the full ambient stabilizer of
// each generator list (Galois correspondence), which is exact.
class TowerSpec {
public:
    TowerSpec(FieldPtr ambient, Automorphism sigma, Automorphism tau, unsigned m, unsigned n,
              std::vector<CycloElement> k_generators, std::vector<CycloElement> f_generators,
              std::vector<CycloElement> l_generators);

    const FieldPtr& ambient() const { return ambient_; }
    const Automorphism& sigma() const { return sigma_; }
    const Automorphism& tau() const { return tau_; }
    unsigned m() const { return m_; }
    unsigned n() const { return n_; }
    const std::vector<CycloElement>& k_generators() const { return k_generators_; }
    const std::vector<CycloElement>& f_generators() const { return f_generators_; }
    const std::vector<CycloElement>& l_generators() const { return l_generators_; }

    bool in_K(const CycloElement& a) const;
    bool in_F(const CycloElement& a) const;
    bool in_L(const CycloElement& a) const;
    // Membership in F0 = F intersect L (fixed by the subgroup generated by
    // the stabilizers of F and of L).
    bool in_F0(const CycloElement& a) const;

    // Ambient exponents stabilizing K pointwise.
    const std::vector<unsigned>& k_stabilizer() const { return stab_k_; }

private:
    FieldPtr ambient_;
    Automorphism sigma_;
    Automorphism tau_;
    unsigned m_, n_;
    std::vector<CycloElement> k_generators_, f_generators_, l_generators_;
    std::vector<unsigned> stab_k_, stab_f_, stab_l_, stab_f0_;
};

// True iff apply_aut(phi, a) == a exactly.
bool fixed_by(const CycloElement& a, const Automorphism& phi);

// a * phi(a) * ... * phi^{order-1}(a). Result is fixed by phi when phi has
// the given order on the subfield containing a.
CycloElement rel_norm(const CycloElement& a, const Automorphism& generator, unsigned order);

CycloElement rel_trace(const CycloElement& a, const Automorphism& generator, unsigned order);

// Preset towers. 6x3: ambient Q(zeta_21), K = Q(omega, theta) with
// theta = zeta_7 + zeta_7^{-1}, F = Q(theta), L = Q(omega), m = 2, n = 3.
// 8x4: ambient Q(zeta_60), K = Q(i, theta) with theta = zeta_15 + zeta_15^{-1},
// F = Q(theta), L = Q(i), m = 2, n = 4. Exponents are re-derived from the
// stated generator images at construction time.
TowerSpec tower_6x3();
TowerSpec tower_8x4();

// Handy generators of the preset towers.
CycloElement omega_of(const FieldPtr& field);        // conductor divisible by 3
CycloElement imag_unit_of(const FieldPtr& field);    // conductor divisible by 4
CycloElement theta_of(const FieldPtr& field);        // zeta_p + zeta_p^{-1}, p = 7 or 15

// JSON (de)serialization: {conductor, sigma_exp, tau_exp, m, n, generators}.
std::string tower_to_json(const TowerSpec& t);
TowerSpec tower_from_json(const std::string& json_text);

}  // namespace iterstbc

#endif
