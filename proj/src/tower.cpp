#include "iterstbc/tower.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <set>
#include <stdexcept>

namespace iterstbc {

namespace {

// All ambient exponents fixing every generator in the list.
std::vector<unsigned> stabilizer(const FieldPtr& field, const std::vector<CycloElement>& gens) {
    std::vector<unsigned> out;
    unsigned N = field->conductor();
    for (unsigned k = 1; k < N; ++k) {
        if (std::gcd(k, N) != 1) continue;
        Automorphism phi(field, k);
        bool fixes = true;
        for (const auto& g : gens)
            if (!(apply_aut(phi, g) == g)) {
                fixes = false;
                break;
            }
        if (fixes) out.push_back(k);
    }
    return out;
}

std::vector<unsigned> subgroup_generated(const FieldPtr& field, const std::vector<unsigned>& a,
                                         const std::vector<unsigned>& b) {
    unsigned N = field->conductor();
    std::set<unsigned> elems(a.begin(), a.end());
    elems.insert(b.begin(), b.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<unsigned> cur(elems.begin(), elems.end());
        for (unsigned x : cur)
            for (unsigned y : cur) {
                unsigned z = static_cast<unsigned>((static_cast<unsigned long long>(x) * y) % N);
                if (elems.insert(z).second) grew = true;
            }
    }
    return {elems.begin(), elems.end()};
}

bool fixed_by_all(const CycloElement& a, const FieldPtr& field, const std::vector<unsigned>& exps) {
    for (unsigned k : exps) {
        if (k == 1) continue;
        if (!(apply_aut(Automorphism(field, k), a) == a)) return false;
    }
    return true;
}

// Order of phi as a permutation of the subfield generated by gens.
unsigned order_on(const Automorphism& phi, const std::vector<CycloElement>& gens) {
    unsigned ord = 1;
    Automorphism cur = phi;
    while (true) {
        bool identity = true;
        for (const auto& g : gens)
            if (!(apply_aut(cur, g) == g)) {
                identity = false;
                break;
            }
        if (identity) return ord;
        cur = cur.compose(phi);
        ++ord;
        if (ord > phi.field()->conductor()) throw std::logic_error("automorphism order ran away");
    }
}

}  // namespace

TowerSpec::TowerSpec(FieldPtr ambient, Automorphism sigma, Automorphism tau, unsigned m, unsigned n,
                     std::vector<CycloElement> k_generators, std::vector<CycloElement> f_generators,
                     std::vector<CycloElement> l_generators)
    : ambient_(std::move(ambient)),
      sigma_(std::move(sigma)),
      tau_(std::move(tau)),
      m_(m),
      n_(n),
      k_generators_(std::move(k_generators)),
      f_generators_(std::move(f_generators)),
      l_generators_(std::move(l_generators)) {
    for (const auto& g : f_generators_)
        if (!(apply_aut(sigma_, g) == g)) throw std::invalid_argument("sigma must fix F");
    for (const auto& g : l_generators_)
        if (!(apply_aut(tau_, g) == g)) throw std::invalid_argument("tau must fix L");
    if (order_on(sigma_, k_generators_) != m_)
        throw std::invalid_argument("sigma does not have order m on K");
    if (order_on(tau_, k_generators_) != n_)
        throw std::invalid_argument("tau does not have order n on K");
    // Abelian ambient group, asserted anyway.
    if (!(sigma_.compose(tau_) == tau_.compose(sigma_)))
        throw std::logic_error("sigma and tau do not commute");

    stab_k_ = stabilizer(ambient_, k_generators_);
    stab_f_ = stabilizer(ambient_, f_generators_);
    stab_l_ = stabilizer(ambient_, l_generators_);
    stab_f0_ = subgroup_generated(ambient_, stab_f_, stab_l_);
}

bool TowerSpec::in_K(const CycloElement& a) const { return fixed_by_all(a, ambient_, stab_k_); }
bool TowerSpec::in_F(const CycloElement& a) const { return fixed_by_all(a, ambient_, stab_f_); }
bool TowerSpec::in_L(const CycloElement& a) const { return fixed_by_all(a, ambient_, stab_l_); }
bool TowerSpec::in_F0(const CycloElement& a) const { return fixed_by_all(a, ambient_, stab_f0_); }

bool fixed_by(const CycloElement& a, const Automorphism& phi) {
    return apply_aut(phi, a) == a;
}

CycloElement rel_norm(const CycloElement& a, const Automorphism& generator, unsigned order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    CycloElement acc = a;
    CycloElement img = a;
    for (unsigned i = 1; i < order; ++i) {
        img = apply_aut(generator, img);
        acc = acc * img;
    }
    return acc;
}

CycloElement rel_trace(const CycloElement& a, const Automorphism& generator, unsigned order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    CycloElement acc = a;
    CycloElement img = a;
    for (unsigned i = 1; i < order; ++i) {
        img = apply_aut(generator, img);
        acc += img;
    }
    return acc;
}

CycloElement omega_of(const FieldPtr& field) {
    if (field->conductor() % 3 != 0) throw std::invalid_argument("conductor not divisible by 3");
    return field->zeta_pow(field->conductor() / 3);
}

CycloElement imag_unit_of(const FieldPtr& field) {
    if (field->conductor() % 4 != 0) throw std::invalid_argument("conductor not divisible by 4");
    return field->zeta_pow(field->conductor() / 4);
}

CycloElement theta_of(const FieldPtr& field) {
    unsigned N = field->conductor();
    unsigned p = (N == 21) ? 7 : (N == 60 ? 15 : 0);
    if (p == 0) throw std::invalid_argument("no preset theta for this conductor");
    unsigned step = N / p;
    return field->zeta_pow(step) + field->zeta_pow(N - step);
}

namespace {

// Smallest ambient exponent realizing the requested generator images.
unsigned solve_exponent(const FieldPtr& field,
                        const std::vector<std::pair<CycloElement, CycloElement>>& images) {
    unsigned N = field->conductor();
    for (unsigned k = 1; k < N; ++k) {
        if (std::gcd(k, N) != 1) continue;
        Automorphism phi(field, k);
        bool ok = true;
        for (const auto& [src, dst] : images)
            if (!(apply_aut(phi, src) == dst)) {
                ok = false;
                break;
            }
        if (ok) return k;
    }
    throw std::logic_error("no ambient automorphism realizes the requested images");
}

}  // namespace

TowerSpec tower_6x3() {
    auto field = CycloField::get(21);
    CycloElement omega = omega_of(field);
    CycloElement theta = theta_of(field);
    CycloElement omega_sq = omega * omega;
    // tau: theta -> zeta_7^2 + zeta_7^{-2}
    CycloElement theta_img = field->zeta_pow(6) + field->zeta_pow(15);
    // Smallest ambient exponents with the stated images; alternatives
    // restrict to K identically.
    unsigned sig_exp = solve_exponent(field, {{theta, theta}, {omega, omega_sq}});
    unsigned tau_exp = solve_exponent(field, {{omega, omega}, {theta, theta_img}});
    return TowerSpec(field, Automorphism(field, sig_exp), Automorphism(field, tau_exp), 2, 3,
                     {omega, theta}, {theta}, {omega});
}

TowerSpec tower_8x4() {
    auto field = CycloField::get(60);
    CycloElement i = imag_unit_of(field);
    CycloElement theta = theta_of(field);
    CycloElement minus_i = -i;
    // tau: theta -> zeta_15^2 + zeta_15^{-2}
    CycloElement theta_img = field->zeta_pow(8) + field->zeta_pow(52);
    unsigned sig_exp = solve_exponent(field, {{theta, theta}, {i, minus_i}});
    unsigned tau_exp = solve_exponent(field, {{i, i}, {theta, theta_img}});
    return TowerSpec(field, Automorphism(field, sig_exp), Automorphism(field, tau_exp), 2, 4,
                     {i, theta}, {theta}, {i});
}

namespace {

nlohmann::json element_to_json(const CycloElement& a) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(rat_to_string(c));
    return coeffs;
}

CycloElement element_from_json(const FieldPtr& field, const nlohmann::json& j) {
    std::vector<Rational> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(rat_from_string(c.get<std::string>()));
    return CycloElement(field, std::move(coeffs));
}

nlohmann::json generators_to_json(const std::vector<CycloElement>& gens) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : gens) arr.push_back(element_to_json(g));
    return arr;
}

std::vector<CycloElement> generators_from_json(const FieldPtr& field, const nlohmann::json& j) {
    std::vector<CycloElement> out;
    for (const auto& g : j) out.push_back(element_from_json(field, g));
    return out;
}

}  // namespace

std::string tower_to_json(const TowerSpec& t) {
    nlohmann::json j;
    j["conductor"] = t.ambient()->conductor();
    j["sigma_exp"] = t.sigma().exponent();
    j["tau_exp"] = t.tau().exponent();
    j["m"] = t.m();
    j["n"] = t.n();
    j["K_generators"] = generators_to_json(t.k_generators());
    j["F_generators"] = generators_to_json(t.f_generators());
    j["L_generators"] = generators_to_json(t.l_generators());
    return j.dump(2);
}

TowerSpec tower_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    auto field = CycloField::get(j.at("conductor").get<unsigned>());
    return TowerSpec(field, Automorphism(field, j.at("sigma_exp").get<unsigned>()),
                     Automorphism(field, j.at("tau_exp").get<unsigned>()), j.at("m").get<unsigned>(),
                     j.at("n").get<unsigned>(), generators_from_json(field, j.at("K_generators")),
                     generators_from_json(field, j.at("F_generators")),
                     generators_from_json(field, j.at("L_generators")));
}

}  // namespace iterstbc
