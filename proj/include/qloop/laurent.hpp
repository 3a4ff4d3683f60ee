#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qloop {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

/// Interned variable names. Ids are assigned in registration order, so the
/// canonical monomial order depends only on the order of first use, which is
/// deterministic for a given run configuration.
int var_id(const std::string& name);
const std::string& var_name(int id);

/// Exponent vector with arbitrary (possibly negative) integer exponents.
/// Stored sparse, sorted by variable id, no zero exponents.
struct Monomial {
    std::vector<std::pair<int, int>> e;

    static Monomial one() { return {}; }
    static Monomial var(int id, int exp = 1);

    bool is_one() const { return e.empty(); }
    int exp(int id) const;
    Monomial operator*(const Monomial& o) const;
    Monomial pow(int k) const;
    Monomial inverse() const { return pow(-1); }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }

    std::string str() const;
};

/// Total order on monomials: lexicographic over variable ids in increasing
/// order, larger exponent first. Used for canonical term ordering and for
/// leading-coefficient normalization of denominators.
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) < 0; }
};

/// Sparse multivariate Laurent polynomial over the rationals.
/// Terms are kept sorted in decreasing canonical monomial order with nonzero
/// coefficients; this representation is canonical.
class LaurentPoly {
public:
    std::vector<std::pair<Monomial, BigRat>> t;

    LaurentPoly() = default;
    explicit LaurentPoly(const BigRat& c);
    explicit LaurentPoly(long c) : LaurentPoly(BigRat(c)) {}

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(BigRat(1)); }
    static LaurentPoly var(const std::string& name, int exp = 1);
    static LaurentPoly mono(const Monomial& m, const BigRat& c = BigRat(1));

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].first.is_one()); }
    BigRat constant_value() const;

    size_t nterms() const { return t.size(); }
    const Monomial& leading_mono() const;
    const BigRat& leading_coeff() const;

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly operator*(const BigRat& c) const;
    LaurentPoly mul_mono(const Monomial& m, const BigRat& c = BigRat(1)) const;
    LaurentPoly pow(int k) const;  // k >= 0

    bool operator==(const LaurentPoly& o) const { return t == o.t; }
    bool operator!=(const LaurentPoly& o) const { return t != o.t; }

    /// Degree range of a variable over all terms; (0,0) if absent.
    std::pair<int, int> var_range(int id) const;
    bool depends_on(int id) const;
    std::vector<int> vars() const;

    /// Coefficient decomposition along one variable: exponent -> coefficient
    /// polynomial in the remaining variables.
    std::map<int, LaurentPoly> coeffs_in(int id) const;
    static LaurentPoly assemble(int id, const std::map<int, LaurentPoly>& c);

    /// Simultaneous substitution var -> polynomial. Variables with negative
    /// exponents require the substitute to be a single term (monomial).
    LaurentPoly subst(const std::map<int, LaurentPoly>& m) const;

    LaurentPoly derivative(int id) const;

    /// gcd of the rational coefficients (positive), 0 for the zero polynomial.
    BigRat content() const;

    std::string str() const;

private:
    void normalize();
    friend LaurentPoly poly_add_scaled(const LaurentPoly&, const LaurentPoly&, const BigRat&);
};

/// a + s*b computed in one merge pass.
LaurentPoly poly_add_scaled(const LaurentPoly& a, const LaurentPoly& b, const BigRat& s);

/// Multivariate gcd (primitive subresultant PRS). The result is defined up to
/// a unit; it is normalized to have positive integer-primitive content and
/// monic-free monomial part. Laurent inputs are handled by stripping monomial
/// content first.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Exact division; throws if not divisible.
LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace qloop
