#include "iterstbc/kmatrix.hpp"

#include <stdexcept>

namespace iterstbc {

KMatrix::KMatrix(unsigned rows, unsigned cols, const FieldPtr& field)
    : rows_(rows), cols_(cols), field_(field) {
    data_.assign(static_cast<size_t>(rows) * cols, field->zero());
}

KMatrix KMatrix::identity(unsigned n, const FieldPtr& field) {
    KMatrix m(n, n, field);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = field->one();
    return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    KMatrix out(rows_, o.cols_, field_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned k = 0; k < cols_; ++k) {
            const CycloElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (unsigned j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                out.at(i, j) += a * o.at(k, j);
            }
        }
    return out;
}

KMatrix KMatrix::operator+(const KMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    KMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

KMatrix KMatrix::operator-(const KMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    KMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
}

bool KMatrix::operator==(const KMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (!(data_[i] == o.data_[i])) return false;
    return true;
}

std::vector<CycloElement> KMatrix::apply(const std::vector<CycloElement>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<CycloElement> out(rows_, field_->zero());
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            out[i] += at(i, j) * v[j];
        }
    return out;
}

KMatrix KMatrix::scaled(const CycloElement& s) const {
    KMatrix out(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = s * data_[i];
    return out;
}

KMatrix KMatrix::transposed() const {
    KMatrix out(cols_, rows_, field_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

KMatrix KMatrix::mapped(const Automorphism& phi) const {
    KMatrix out(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = apply_aut(phi, data_[i]);
    return out;
}

KMatrix KMatrix::conj_transposed() const {
    KMatrix out(cols_, rows_, field_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) out.at(j, i) = conjugate(at(i, j));
    return out;
}

bool KMatrix::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

CycloElement KMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    KMatrix m = *this;
    unsigned n = rows_;
    CycloElement det_acc = field_->one();
    bool negate = false;
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return field_->zero();
        if (pivot != col) {
            for (unsigned j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            negate = !negate;
        }
        const CycloElement& p = m.at(col, col);
        det_acc = det_acc * p;
        CycloElement pinv = cyclo_inv(p);
        for (unsigned r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            CycloElement factor = m.at(r, col) * pinv;
            for (unsigned j = col; j < n; ++j) m.at(r, j) -= factor * m.at(col, j);
        }
    }
    return negate ? -det_acc : det_acc;
}

std::optional<KMatrix> KMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    unsigned n = rows_;
    KMatrix m = *this;
    KMatrix inv = identity(n, field_);
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        CycloElement pinv = cyclo_inv(m.at(col, col));
        for (unsigned j = 0; j < n; ++j) {
            m.at(col, j) = pinv * m.at(col, j);
            inv.at(col, j) = pinv * inv.at(col, j);
        }
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            CycloElement factor = m.at(r, col);
            for (unsigned j = 0; j < n; ++j) {
                m.at(r, j) -= factor * m.at(col, j);
                inv.at(r, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::optional<std::vector<CycloElement>> KMatrix::kernel_vector() const {
    unsigned n = cols_;
    KMatrix m = *this;
    std::vector<int> pivot_of_col(n, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < n && row < rows_; ++col) {
        unsigned p = row;
        while (p < rows_ && m.at(p, col).is_zero()) ++p;
        if (p == rows_) continue;
        if (p != row)
            for (unsigned j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(row, j));
        CycloElement pinv = cyclo_inv(m.at(row, col));
        for (unsigned j = 0; j < n; ++j) m.at(row, j) = pinv * m.at(row, j);
        for (unsigned r = 0; r < rows_; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            CycloElement factor = m.at(r, col);
            for (unsigned j = 0; j < n; ++j) m.at(r, j) -= factor * m.at(row, j);
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    // first free column gives a kernel vector
    for (unsigned col = 0; col < n; ++col) {
        if (pivot_of_col[col] != -1) continue;
        std::vector<CycloElement> v(n, field_->zero());
        v[col] = field_->one();
        for (unsigned c = 0; c < n; ++c) {
            if (pivot_of_col[c] == -1) continue;
            v[c] = -m.at(static_cast<unsigned>(pivot_of_col[c]), col);
        }
        return v;
    }
    return std::nullopt;
}

CycloElement KMatrix::frobenius_sq() const {
    CycloElement acc = field_->zero();
    for (const auto& e : data_) {
        if (e.is_zero()) continue;
        acc += e * conjugate(e);
    }
    return acc;
}

}  // namespace iterstbc
