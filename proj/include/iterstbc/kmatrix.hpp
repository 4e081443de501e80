#ifndef ITERSTBC_KMATRIX_HPP
#define ITERSTBC_KMATRIX_HPP

#include <optional>
#include <vector>

#include "iterstbc/cyclotomic.hpp"

namespace iterstbc {

// Dense exact matrix over the ambient cyclotomic field. Small sizes only
// (codeword matrices are mn x mn with mn <= 8).
class KMatrix {
public:
    KMatrix() = default;
    KMatrix(unsigned rows, unsigned cols, const FieldPtr& field);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    CycloElement& at(unsigned r, unsigned c) { return data_[r * cols_ + c]; }
    const CycloElement& at(unsigned r, unsigned c) const { return data_[r * cols_ + c]; }

    static KMatrix identity(unsigned n, const FieldPtr& field);

    KMatrix operator*(const KMatrix& o) const;
    KMatrix operator+(const KMatrix& o) const;
    KMatrix operator-(const KMatrix& o) const;
    bool operator==(const KMatrix& o) const;
    bool operator!=(const KMatrix& o) const { return !(*this == o); }

    std::vector<CycloElement> apply(const std::vector<CycloElement>& v) const;

    KMatrix scaled(const CycloElement& s) const;
    KMatrix transposed() const;
    // Entrywise automorphism image.
    KMatrix mapped(const Automorphism& phi) const;
    // Conjugate transpose (complex conjugation entrywise, then transpose).
    KMatrix conj_transposed() const;

    bool is_zero() const;

    CycloElement det() const;
    std::optional<KMatrix> inverse() const;
    // A nonzero kernel vector if the matrix is singular.
    std::optional<std::vector<CycloElement>> kernel_vector() const;

    // Squared Frobenius norm: sum of entry * conj(entry). Lands in the
    // maximal real subfield.
    CycloElement frobenius_sq() const;

private:
    unsigned rows_ = 0, cols_ = 0;
    FieldPtr field_;
    std::vector<CycloElement> data_;
};

}  // namespace iterstbc

#endif
