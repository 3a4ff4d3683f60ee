#include "qloop/lseries.hpp"

#include <sstream>

namespace qloop {

RatFunc LSeries::coeff(int mode) const {
    if (mode > bound) throw std::runtime_error("LSeries::coeff: mode beyond truncation");
    auto it = c.find(mode);
    return it == c.end() ? RatFunc() : it->second;
}

void LSeries::trim() {
    for (auto it = c.begin(); it != c.end();) {
        if (it->first > bound || it->second.is_zero())
            it = c.erase(it);
        else
            ++it;
    }
}

LSeries LSeries::operator+(const LSeries& o) const {
    if (dir != o.dir || var != o.var) throw std::runtime_error("LSeries: direction mismatch");
    LSeries r(dir, var, std::min(bound, o.bound));
    r.c = c;
    for (auto& kv : o.c) {
        auto it = r.c.find(kv.first);
        if (it == r.c.end())
            r.c.emplace(kv.first, kv.second);
        else
            it->second += kv.second;
    }
    r.trim();
    return r;
}

LSeries LSeries::operator-() const {
    LSeries r(dir, var, bound);
    for (auto& kv : c) r.c.emplace(kv.first, -kv.second);
    return r;
}

LSeries LSeries::operator-(const LSeries& o) const { return *this + (-o); }

LSeries LSeries::operator*(const LSeries& o) const {
    if (dir != o.dir || var != o.var) throw std::runtime_error("LSeries: direction mismatch");
    int la = leading_mode(), lb = o.leading_mode();
    long b = std::min<long>(static_cast<long>(bound) + lb, static_cast<long>(o.bound) + la);
    b = std::min<long>(b, kInfBound);
    LSeries r(dir, var, static_cast<int>(b));
    for (auto& p : c)
        for (auto& q : o.c) {
            long m = static_cast<long>(p.first) + q.first;
            if (m > r.bound) continue;
            RatFunc v = p.second * q.second;
            auto it = r.c.find(static_cast<int>(m));
            if (it == r.c.end())
                r.c.emplace(static_cast<int>(m), v);
            else
                it->second += v;
        }
    r.trim();
    return r;
}

LSeries LSeries::operator*(const RatFunc& s) const {
    LSeries r(dir, var, bound);
    if (s.is_zero()) return r;
    for (auto& kv : c) r.c.emplace(kv.first, kv.second * s);
    r.trim();
    return r;
}

LSeries LSeries::shift_u(int k) const {
    int d = dir == Dir::AtInf ? -k : k;
    LSeries r(dir, var, bound > kInfBound / 2 ? bound : bound + d);
    for (auto& kv : c) r.c.emplace(kv.first + d, kv.second);
    return r;
}

bool LSeries::agrees_with(const LSeries& o) const {
    if (dir != o.dir || var != o.var) return false;
    int b = std::min(bound, o.bound);
    for (auto& kv : c)
        if (kv.first <= b && !(o.coeff(kv.first) == kv.second)) return false;
    for (auto& kv : o.c)
        if (kv.first <= b && !(coeff(kv.first) == kv.second)) return false;
    return true;
}

std::string LSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& kv : c) {
        if (!first) os << " + ";
        first = false;
        int e = dir == Dir::AtInf ? -kv.first : kv.first;
        os << "(" << kv.second.str() << ")";
        if (e != 0) os << "*" << var_name(var) << "^" << e;
    }
    if (first) os << "0";
    os << " [O(" << (dir == Dir::AtInf ? -(bound + 1) : bound + 1) << ")]";
    return os.str();
}

LSeries expand(const RatFunc& f, int var, Dir dir, int order) {
    if (order < 0) throw std::runtime_error("expand: negative order");
    if (f.is_zero()) return LSeries::zero(dir, var);
    auto nc = f.num.coeffs_in(var);
    auto dc = f.den().coeffs_in(var);
    if (dc.empty()) throw std::runtime_error("expand: NotExpandable");
    // leading exponent of the denominator in the chosen direction
    int elead = dir == Dir::AtInf ? dc.rbegin()->first : dc.begin()->first;
    LaurentPoly dlead = dc.at(elead);
    // mode of a monomial u^e is -e (AtInf) or +e (AtZero)
    auto mode_of = [&](int e) { return dir == Dir::AtInf ? -e : e; };

    // numerator as a series (finite)
    int nlead_mode = 0;
    {
        bool first = true;
        for (auto& kv : nc) {
            int m = mode_of(kv.first);
            if (first || m < nlead_mode) nlead_mode = m;
            first = false;
        }
    }
    int dlead_mode = mode_of(elead);
    int lead = nlead_mode - dlead_mode;
    int b = lead + order;

    // t = 1 - den/(dlead * u^elead); strictly positive modes
    std::map<int, RatFunc> t;
    for (auto& kv : dc) {
        if (kv.first == elead) continue;
        int m = mode_of(kv.first) - dlead_mode;
        t[m] = -(RatFunc(kv.second) / RatFunc(dlead));
    }
    // inv = 1/(1-t) via the convolution recurrence inv_m = sum_k t_k inv_{m-k}
    std::map<int, RatFunc> inv;
    inv[0] = RatFunc::one();
    for (int m = 1; m <= order; ++m) {
        RatFunc s;
        for (auto& kv : t) {
            if (kv.first > m) break;
            auto it = inv.find(m - kv.first);
            if (it != inv.end()) s += kv.second * it->second;
        }
        if (!s.is_zero()) inv[m] = s;
    }

    LSeries r(dir, var, b);
    RatFunc dl_inv = RatFunc(dlead).inverse();
    for (auto& kv : nc) {
        int nm = mode_of(kv.first);
        RatFunc base = RatFunc(kv.second) * dl_inv;
        for (auto& iv : inv) {
            int m = nm - dlead_mode + iv.first;
            if (m > b) continue;
            RatFunc v = base * iv.second;
            auto it = r.c.find(m);
            if (it == r.c.end())
                r.c.emplace(m, v);
            else
                it->second += v;
        }
    }
    r.trim();
    return r;
}

LSeries series_exp(const LSeries& x) {
    if (!x.is_zero() && x.leading_mode() <= 0)
        throw std::runtime_error("series_exp: nonpositive leading mode");
    LSeries r(x.dir, x.var, x.bound);
    r.c[0] = RatFunc::one();
    LSeries pw = r;  // x^0
    BigRat fact(1);
    int lead = x.is_zero() ? x.bound + 1 : x.leading_mode();
    for (int k = 1; static_cast<long>(k) * lead <= x.bound; ++k) {
        pw = pw * x;
        fact *= k;
        BigRat inv_f = 1;
        inv_f /= fact;
        LSeries term = pw * RatFunc(inv_f);
        r = r + term;
    }
    r.bound = x.bound;
    r.trim();
    return r;
}

LSeries series_log1p(const LSeries& x) {
    if (!x.is_zero() && x.leading_mode() <= 0)
        throw std::runtime_error("series_log1p: nonpositive leading mode");
    LSeries r(x.dir, x.var, x.bound);
    LSeries pw = x;
    int lead = x.is_zero() ? x.bound + 1 : x.leading_mode();
    for (int k = 1; static_cast<long>(k) * lead <= x.bound; ++k) {
        if (k > 1) pw = pw * x;
        BigRat coef(k % 2 == 1 ? 1 : -1, k);
        LSeries term = pw * RatFunc(coef);
        r = r + term;
    }
    r.bound = x.bound;
    r.trim();
    return r;
}

}  // namespace qloop
