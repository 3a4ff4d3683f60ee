#include "qloop/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace qloop {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const BigRat& x) { return x == 0; });
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols != o.rows) throw std::runtime_error("QMatrix: shape mismatch in product");
    QMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const BigRat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) {
                const BigRat& y = o.at(k, j);
                if (y != 0) r.at(i, j) += x * y;
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::runtime_error("QMatrix: shape mismatch in sum");
    QMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::runtime_error("QMatrix: shape mismatch in diff");
    QMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

QMatrix QMatrix::operator*(const BigRat& s) const {
    QMatrix r = *this;
    for (auto& x : r.a) x *= s;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        BigRat inv = 1;
        inv /= m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            BigRat f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

bool in_row_space(const QMatrix& m, const std::vector<int>& pivots, const std::vector<BigRat>& v) {
    std::vector<BigRat> w = v;
    for (size_t r = 0; r < pivots.size(); ++r) {
        int c = pivots[r];
        if (w[static_cast<size_t>(c)] == 0) continue;
        BigRat f = w[static_cast<size_t>(c)];
        for (int j = 0; j < m.cols; ++j) w[static_cast<size_t>(j)] -= f * m.at(static_cast<int>(r), j);
    }
    return std::all_of(w.begin(), w.end(), [](const BigRat& x) { return x == 0; });
}

namespace {
int mod_inverse(int a, int p) {
    int t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::runtime_error("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}
}  // namespace

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (cols != o.rows || p != o.p) throw std::runtime_error("FpMatrix: shape mismatch");
    FpMatrix r(p, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            int x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) = (r.at(i, j) + x * o.at(k, j)) % p;
        }
    return r;
}

FpMatrix reduce_mod(const QMatrix& m, int p) {
    FpMatrix r(p, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const BigRat& x = m.at(i, j);
            BigInt num = boost::multiprecision::numerator(x);
            BigInt den = boost::multiprecision::denominator(x);
            BigInt dp = den % p;
            if (dp == 0) throw BadReduction("denominator vanishes mod " + std::to_string(p));
            BigInt np = num % p;
            int ni = static_cast<int>((np + p) % p);
            int di = static_cast<int>((dp + p) % p);
            r.at(i, j) = ni * mod_inverse(di, p) % p;
        }
    return r;
}

std::vector<int> fp_rref(FpMatrix& m) {
    std::vector<int> pivots;
    int p = m.p, r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        int inv = mod_inverse(m.at(r, c), p);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv % p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            int f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = ((m.at(i, j) - f * m.at(r, j)) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

bool fp_in_row_space(const FpMatrix& rrefm, const std::vector<int>& pivots, const std::vector<int>& v) {
    std::vector<int> w = v;
    int p = rrefm.p;
    for (size_t r = 0; r < pivots.size(); ++r) {
        int c = pivots[r];
        if (w[static_cast<size_t>(c)] == 0) continue;
        int f = w[static_cast<size_t>(c)];
        for (int j = 0; j < rrefm.cols; ++j)
            w[static_cast<size_t>(j)] = ((w[static_cast<size_t>(j)] - f * rrefm.at(static_cast<int>(r), j)) % p + p) % p;
    }
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

std::vector<FpMatrix> fp_subspaces(int p, int d, int r) {
    std::vector<FpMatrix> out;
    if (r < 0 || r > d) return out;
    if (r == 0) {
        out.emplace_back(p, 0, d);
        return out;
    }
    // enumerate pivot column patterns, then free entries
    std::vector<int> cols(static_cast<size_t>(r));
    std::iota(cols.begin(), cols.end(), 0);
    auto next_comb = [&]() {
        int i = r - 1;
        while (i >= 0 && cols[static_cast<size_t>(i)] == d - r + i) --i;
        if (i < 0) return false;
        ++cols[static_cast<size_t>(i)];
        for (int j = i + 1; j < r; ++j) cols[static_cast<size_t>(j)] = cols[static_cast<size_t>(j - 1)] + 1;
        return true;
    };
    do {
        // free positions: entries (row i, col c) with c not a pivot and c > cols[i]
        std::vector<std::pair<int, int>> freepos;
        for (int i = 0; i < r; ++i)
            for (int c = cols[static_cast<size_t>(i)] + 1; c < d; ++c)
                if (std::find(cols.begin(), cols.end(), c) == cols.end()) freepos.emplace_back(i, c);
        long total = 1;
        for (size_t i = 0; i < freepos.size(); ++i) total *= p;
        for (long idx = 0; idx < total; ++idx) {
            FpMatrix m(p, r, d);
            for (int i = 0; i < r; ++i) m.at(i, cols[static_cast<size_t>(i)]) = 1;
            long x = idx;
            for (auto& fp : freepos) {
                m.at(fp.first, fp.second) = static_cast<int>(x % p);
                x /= p;
            }
            out.push_back(std::move(m));
        }
    } while (next_comb());
    return out;
}

}  // namespace qloop
