#include "qloop/scalars.hpp"

#include "qloop/cartan.hpp"

#include <algorithm>

namespace qloop {

VirtualCharacter VirtualCharacter::line(const Monomial& m, int mult) {
    VirtualCharacter e;
    e.add(m, mult);
    return e;
}

void VirtualCharacter::add(const Monomial& m, int mult) {
    if (mult == 0) return;
    auto it = std::lower_bound(lines.begin(), lines.end(), m,
                               [](const std::pair<Monomial, int>& a, const Monomial& b) {
                                   return mono_cmp(a.first, b) < 0;
                               });
    if (it != lines.end() && it->first == m) {
        it->second += mult;
        if (it->second == 0) lines.erase(it);
    } else {
        lines.insert(it, {m, mult});
    }
}

VirtualCharacter VirtualCharacter::operator+(const VirtualCharacter& o) const {
    VirtualCharacter r = *this;
    for (auto& l : o.lines) r.add(l.first, l.second);
    return r;
}

VirtualCharacter VirtualCharacter::operator-() const {
    VirtualCharacter r = *this;
    for (auto& l : r.lines) l.second = -l.second;
    return r;
}

VirtualCharacter VirtualCharacter::operator-(const VirtualCharacter& o) const { return *this + (-o); }

VirtualCharacter VirtualCharacter::scaled(int k) const {
    if (k == 0) return {};
    VirtualCharacter r = *this;
    for (auto& l : r.lines) l.second *= k;
    return r;
}

VirtualCharacter VirtualCharacter::twisted(const Monomial& m) const {
    VirtualCharacter r;
    for (auto& l : lines) r.add(l.first * m, l.second);
    return r;
}

VirtualCharacter VirtualCharacter::dual() const {
    VirtualCharacter r;
    for (auto& l : lines) r.add(l.first.inverse(), l.second);
    return r;
}

long VirtualCharacter::rank() const {
    long s = 0;
    for (auto& l : lines) s += l.second;
    return s;
}

LaurentPoly VirtualCharacter::as_poly() const {
    LaurentPoly p;
    for (auto& l : lines) p += LaurentPoly::mono(l.first, BigRat(l.second));
    return p;
}

Monomial VirtualCharacter::determinant() const {
    Monomial m;
    for (auto& l : lines) m = m * l.first.pow(l.second);
    return m;
}

VirtualCharacter adams(const VirtualCharacter& e, int m) {
    if (m < 1) throw std::runtime_error("adams: m must be >= 1");
    VirtualCharacter r;
    for (auto& l : e.lines) r.add(l.first.pow(m), l.second);
    return r;
}

RatFunc lambda_u(const VirtualCharacter& e, int uvar, int sign) {
    LaurentPoly num = LaurentPoly::one(), den = LaurentPoly::one();
    Monomial u = Monomial::var(uvar, sign > 0 ? 1 : -1);
    for (auto& l : e.lines) {
        LaurentPoly f = LaurentPoly::one() - LaurentPoly::mono(u * l.first);
        LaurentPoly p = f.pow(std::abs(l.second));
        if (l.second > 0)
            num *= p;
        else
            den *= p;
    }
    return RatFunc(num, den);
}

LaurentPoly quantum_int(int m, int d) {
    // [m] with q_i = q^d; [-m] = -[m], [0] = 0
    if (m == 0) return LaurentPoly::zero();
    if (m < 0) return -quantum_int(-m, d);
    LaurentPoly r;
    int qv = var_id("q");
    for (int j = 0; j < m; ++j) r += LaurentPoly::mono(Monomial::var(qv, d * (m - 1 - 2 * j)));
    return r;
}

LaurentPoly quantum_factorial(int m, int d) {
    LaurentPoly r = LaurentPoly::one();
    for (int j = 1; j <= m; ++j) r *= quantum_int(j, d);
    return r;
}

RatFunc g_func(int i, int j, const CartanData& cd, int uvar) {
    int qv = var_id("q");
    int e = -cd.d[static_cast<size_t>(i)] * cd.c[static_cast<size_t>(i)][static_cast<size_t>(j)];  // -b_ij
    LaurentPoly qc = LaurentPoly::mono(Monomial::var(qv, e));
    LaurentPoly u = LaurentPoly::var(var_name(uvar));
    return RatFunc(qc * u - LaurentPoly::one(), u - qc);
}

}  // namespace qloop
