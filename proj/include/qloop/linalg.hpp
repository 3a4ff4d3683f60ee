#pragma once

#include "qloop/laurent.hpp"

#include <optional>
#include <vector>

namespace qloop {

/// Dense matrix over the rationals; row-major.
struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<BigRat> a;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    static QMatrix identity(int n);

    BigRat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const BigRat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const;
    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const BigRat& s) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row, in order.
std::vector<int> rref(QMatrix& m);
int rank(QMatrix m);

/// Rows span test: is v in the row space of the rref matrix `m` (with pivots)?
bool in_row_space(const QMatrix& m, const std::vector<int>& pivots, const std::vector<BigRat>& v);

/// Small prime-field matrix.
struct FpMatrix {
    int p = 2;
    int rows = 0, cols = 0;
    std::vector<int> a;

    FpMatrix() = default;
    FpMatrix(int p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    FpMatrix operator*(const FpMatrix& o) const;
};

struct BadReduction : std::runtime_error {
    explicit BadReduction(const std::string& m) : std::runtime_error("BadReduction: " + m) {}
};

/// Reduce a rational matrix mod p; throws BadReduction when a denominator
/// vanishes mod p.
FpMatrix reduce_mod(const QMatrix& m, int p);

/// All r-dimensional subspaces of F_p^d, each as an r x d RREF basis matrix.
std::vector<FpMatrix> fp_subspaces(int p, int d, int r);

/// Row space membership over F_p: v (length cols) against RREF rows.
bool fp_in_row_space(const FpMatrix& rrefm, const std::vector<int>& pivots, const std::vector<int>& v);
std::vector<int> fp_rref(FpMatrix& m);

}  // namespace qloop
