#pragma once

#include "qloop/ratfunc.hpp"

#include <limits>

namespace qloop {

/// Expansion direction for series in one spectral variable.
enum class Dir {
    AtInf,  // powers of u^{-1}  (expansion as u -> infinity)
    AtZero  // powers of u^{+1}  (expansion as u -> 0)
};

/// Truncated Laurent series with rational-function coefficients.
/// Mode m holds the coefficient of u^{-m} (AtInf) or u^{+m} (AtZero). Modes
/// can be negative. All modes <= bound are exact; nothing is stored above.
class LSeries {
public:
    static constexpr int kInfBound = std::numeric_limits<int>::max() / 4;

    Dir dir;
    int var;
    int bound;
    std::map<int, RatFunc> c;

    LSeries(Dir d, int v, int b) : dir(d), var(v), bound(b) {}
    static LSeries zero(Dir d, int v) { return LSeries(d, v, kInfBound); }

    bool is_zero() const { return c.empty(); }
    /// Smallest present mode, or kInfBound for the zero series.
    int leading_mode() const { return c.empty() ? kInfBound : c.begin()->first; }
    RatFunc coeff(int mode) const;

    LSeries operator+(const LSeries& o) const;
    LSeries operator-(const LSeries& o) const;
    LSeries operator*(const LSeries& o) const;
    LSeries operator*(const RatFunc& s) const;
    LSeries operator-() const;
    bool agrees_with(const LSeries& o) const;  // equality on the common valid window

    /// Multiply by u^k (shifts modes by -k for AtInf, +k for AtZero).
    LSeries shift_u(int k) const;

    /// Drop stored modes beyond the bound and zero coefficients.
    void trim();

    std::string str() const;
};

/// Truncated expansion of a rational function of `var`: `order` additional
/// modes past the leading one are produced (relative truncation window).
LSeries expand(const RatFunc& f, int var, Dir dir, int order);

/// exp of a series with strictly positive leading mode.
LSeries series_exp(const LSeries& x);
/// log(1 + x) for a series x with strictly positive leading mode.
LSeries series_log1p(const LSeries& x);

}  // namespace qloop
