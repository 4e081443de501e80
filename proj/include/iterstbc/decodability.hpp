#ifndef ITERSTBC_DECODABILITY_HPP
#define ITERSTBC_DECODABILITY_HPP

#include <string>
#include <vector>

#include "iterstbc/codebook.hpp"

namespace iterstbc {

enum class Subcode { All, DiagonalBlock };

// Image of a single real information symbol: one constellation ring unit
// (1 or omega/i) through one ideal-basis slot of one K-coordinate of one
// D-layer. Codewords are integer combinations of these.
struct BasisMatrix {
    unsigned index;
    unsigned layer;       // D-layer (0 only for the diagonal-block subcode)
    unsigned k_coord;     // coordinate over the e-basis of D
    unsigned basis_slot;  // ideal basis element
    bool imaginary;       // multiplier is the ring unit instead of 1
    KMatrix matrix;       // exact mn x mn image
};

std::vector<BasisMatrix> basis_matrices(const CodeSpec& spec, Subcode subcode);

// Squared Frobenius norm of Bg Bk* + Bk Bg*, exact (conjugate transpose via
// the conjugation automorphism). Lands in the maximal real subfield; the
// zero test is exact.
CycloElement mgk(const KMatrix& g, const KMatrix& k);
bool mgk_is_zero(const KMatrix& g, const KMatrix& k);

struct GroupPartition {
    // Disjoint index groups covering all real symbols; cross-group pairs
    // have M_{g,k} = 0 exactly.
    std::vector<std::vector<unsigned>> groups;
    unsigned l() const { return static_cast<unsigned>(groups.size()); }
    unsigned max_group_size() const;
};

// Connected components of the graph with an edge wherever mgk != 0: the
// finest valid partition.
GroupPartition find_partition(const std::vector<BasisMatrix>& mats);

// Recomputes every cross-group pair; true iff all vanish exactly.
bool partition_valid(const std::vector<BasisMatrix>& mats, const GroupPartition& p);

// ML-decoding complexity exponent m n^2 - m n (l-1)/l from an l-group
// decodable diagonal-block subcode.
Rational complexity_exponent(const CodeSpec& spec, const GroupPartition& diagonal_partition);

struct DecodabilityReport {
    std::string preset;
    Subcode subcode;
    unsigned real_symbols = 0;
    GroupPartition partition;
    Rational exponent;                       // for the diagonal subcode
    std::vector<std::vector<bool>> m_nonzero;  // sparsity pattern of M_{g,k}
};

DecodabilityReport analyze_decodability(const CodeSpec& spec, Subcode subcode);

}  // namespace iterstbc

#endif
