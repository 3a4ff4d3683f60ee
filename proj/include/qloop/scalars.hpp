#pragma once

#include "qloop/lseries.hpp"

namespace qloop {
struct CartanData;

/// Signed multiset of monomial characters: each line is a Laurent monomial in
/// the equivariant variables with an integer multiplicity.
class VirtualCharacter {
public:
    std::vector<std::pair<Monomial, int>> lines;  // sorted, nonzero multiplicities

    VirtualCharacter() = default;

    static VirtualCharacter line(const Monomial& m, int mult = 1);
    void add(const Monomial& m, int mult = 1);
    VirtualCharacter operator+(const VirtualCharacter& o) const;
    VirtualCharacter operator-(const VirtualCharacter& o) const;
    VirtualCharacter operator-() const;
    VirtualCharacter scaled(int k) const;
    /// Multiply every line by a fixed monomial.
    VirtualCharacter twisted(const Monomial& m) const;
    /// Dual: every line inverted.
    VirtualCharacter dual() const;

    long rank() const;  // signed cardinality
    bool is_zero() const { return lines.empty(); }
    /// Sum of the lines as a Laurent polynomial.
    LaurentPoly as_poly() const;
    /// Product of all lines^mult (a Laurent monomial with rational coefficient 1);
    /// throws if the result is not a monomial (it always is).
    Monomial determinant() const;
};

/// Adams operation: psi^m raises every line to its m-th power.
VirtualCharacter adams(const VirtualCharacter& e, int m);

/// Lambda_{-u^{+-1}}(E) as a rational function of the series variable:
/// product over positive lines of (1 - u^{+-1} chi), divided by the same for
/// negative lines. sign=+1 gives Lambda_{-u}, sign=-1 gives Lambda_{-u^{-1}}.
RatFunc lambda_u(const VirtualCharacter& e, int uvar, int sign);

/// Quantum integer [m]_{q^d} as a Laurent polynomial in q.
LaurentPoly quantum_int(int m, int d = 1);
LaurentPoly quantum_factorial(int m, int d = 1);

/// Structure function g_{ij}(u) = (q_i^{-c_ij} u - 1)/(u - q_i^{-c_ij}).
RatFunc g_func(int i, int j, const CartanData& cd, int uvar);

}  // namespace qloop
