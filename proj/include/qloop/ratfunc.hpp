#pragma once

#include "qloop/laurent.hpp"

#include <optional>

namespace qloop {

/// Exact division attempt; nullopt when not divisible. A sound modular
/// rejector runs first, so failures are usually cheap.
std::optional<LaurentPoly> poly_try_divide(const LaurentPoly& a, const LaurentPoly& b);

/// Total order on polynomials (by term lists), for canonical factor sorting.
int poly_cmp(const LaurentPoly& a, const LaurentPoly& b);

/// Rational function over the multivariate Laurent ring.
/// The value is num / prod_i f_i^{e_i}; the denominator is kept as a list of
/// monic, monomial-free, nonconstant factors (not necessarily irreducible).
/// Arithmetic cancels the numerator against the factors by exact trial
/// division, so no general multivariate gcd runs in the common path.
/// Equality is equality of values (checked by cross-multiplication).
class RatFunc {
public:
    LaurentPoly num;

    RatFunc() : num() {}
    RatFunc(const LaurentPoly& n) : num(n) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const LaurentPoly& n, const LaurentPoly& d);
    explicit RatFunc(const BigRat& c) : num(LaurentPoly(c)) {}
    explicit RatFunc(long c) : num(LaurentPoly(c)) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(LaurentPoly::one()); }
    static RatFunc var(const std::string& name, int exp = 1) { return RatFunc(LaurentPoly::var(name, exp)); }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const;
    bool is_poly() const { return fac_.empty(); }
    const std::vector<std::pair<LaurentPoly, int>>& factors() const { return fac_; }
    /// Expanded denominator (monic).
    LaurentPoly den() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc inverse() const;
    RatFunc pow(int k) const;  // any integer

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Fully reduced pair (gcd-reduced, denominator monic and monomial-free);
    /// the canonical representative used for rendering.
    std::pair<LaurentPoly, LaurentPoly> canonical() const;

    /// Substitute variables (applied to numerator and denominator).
    RatFunc subst(const std::map<int, LaurentPoly>& m) const;

    /// Evaluate at var = value (a rational function free of var); error if the
    /// denominator vanishes there.
    RatFunc eval_at(int var, const RatFunc& value) const;

    /// Residue at a simple pole var = a of this function of `var`.
    /// Method: cancel the (var - a) factor from the denominator exactly.
    RatFunc residue_at_simple_pole(int var, const RatFunc& a) const;
    /// Independent route: num(a) / d(den)/d(var)(a).
    RatFunc residue_via_derivative(int var, const RatFunc& a) const;

    std::string str() const;

private:
    std::vector<std::pair<LaurentPoly, int>> fac_;

    void push_factor(const LaurentPoly& f, int e);
    void cancel();
    friend RatFunc operator*(const BigRat& c, const RatFunc& f);
};

RatFunc operator*(const BigRat& c, const RatFunc& f);

}  // namespace qloop
