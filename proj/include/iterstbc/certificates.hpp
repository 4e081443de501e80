#ifndef ITERSTBC_CERTIFICATES_HPP
#define ITERSTBC_CERTIFICATES_HPP

#include <optional>
#include <string>
#include <vector>

#include "iterstbc/skew_poly.hpp"

namespace iterstbc {

// Three-valued outcome of a division certificate. Norm-group membership is
// not decidable by bounded search, so hypothesis-backed verdicts carry the
// searched bound and, for shipped presets, the standing fact they rely on.
struct Verdict {
    enum class Kind {
        Proved,                  // sufficient condition verified exactly
        ProvedAssumingNonnorm,   // exact except for a non-norm hypothesis; bound recorded
        Disproved,               // witness found (algebra is not division)
        HypothesisFailed,        // certificate inapplicable: its hypothesis was refuted
        NotApplicable,           // preconditions not met by this algebra
        Unknown                  // condition did not decide; bound recorded
    };
    Kind kind = Kind::Unknown;
    std::string detail;

    bool is_positive() const {
        return kind == Kind::Proved || kind == Kind::ProvedAssumingNonnorm;
    }
};

std::string verdict_kind_name(Verdict::Kind k);

// True when F0 contains a primitive n-th root of unity (always for n <= 2;
// decided inside the ambient cyclotomic field otherwise).
bool f0_has_primitive_root(const TowerSpec& tower, unsigned n);

// Division criteria for the iterated algebras. Each returns a Verdict and
// never weakens: Unknown is the honest default.

// Left variant, prime n: division holds for every scalar d in F \ F0 with
// d^m outside F0 (both membership tests exact).
Verdict cert_dm_not_in_F0(const IterPtr& A);

// Prime n: division holds when tau(d^m) != d^m, for scalar d in F (left
// variant) or d in K \ L (right variant).
Verdict cert_tau_dm(const IterPtr& A);

// Right variant, prime n: division holds when the reduced norm of d lies
// outside F0.
Verdict cert_norm_not_in_F0(const IterPtr& A);

// Right variant, quaternion D, n = 3: division holds for d in L \ F0 that
// is not a relative norm of K/L. The non-norm hypothesis is corroborated
// by a bounded preimage search; the omega preset ships as a standing fact.
Verdict cert_quaternion_deg3(const IterPtr& A, long box);

// Necessary-and-sufficient product condition (prime n, and the two-part
// degree-4 form): a witness disproves division, otherwise Unknown with the
// search scope recorded.
Verdict cert_product_search(const IterPtr& A, long box);

// Informational: when the product search finds no witness, elements of
// f-degree <= 1 are recorded as non-left-zero-divisors.
Verdict cert_left_factor(const IterPtr& A, const Verdict& product_search_verdict);

struct CertificateEntry {
    std::string name;
    Verdict verdict;
    std::string criterion;  // self-contained statement of the fact applied
};

struct CertificateReport {
    std::string algebra_id;
    long box = 0;
    std::vector<CertificateEntry> entries;
    // Proved coexisting with a found zero divisor: fatal inconsistency.
    bool inconsistent = false;
    std::string inconsistency_detail;

    bool any_positive() const {
        for (const auto& e : entries)
            if (e.verdict.is_positive()) return true;
        return false;
    }
};

// Runs every applicable certificate plus the soundness cross-check
// (zero-divisor search at box 1 whenever something was proved).
CertificateReport certify(const IterPtr& A, long box, const std::string& algebra_id);

}  // namespace iterstbc

#endif
