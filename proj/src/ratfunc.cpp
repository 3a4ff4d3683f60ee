#include "qloop/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace qloop {

int poly_cmp(const LaurentPoly& a, const LaurentPoly& b) {
    size_t n = std::min(a.t.size(), b.t.size());
    for (size_t i = 0; i < n; ++i) {
        int c = mono_cmp(a.t[i].first, b.t[i].first);
        if (c != 0) return c;
        if (a.t[i].second != b.t[i].second) return a.t[i].second < b.t[i].second ? -1 : 1;
    }
    if (a.t.size() != b.t.size()) return a.t.size() < b.t.size() ? -1 : 1;
    return 0;
}

namespace {

constexpr long kDivPrime = 2147483647L;

long dp_pow(long b, long e, long p) {
    long r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((__int128)r * b % p);
        b = static_cast<long>((__int128)b * b % p);
        e >>= 1;
    }
    return r;
}

/// Specialize all variables except `keep` at a pseudo-random point mod p.
/// Empty result signals an unusable point (vanishing denominator).
std::vector<long> specialize_poly(const LaurentPoly& a, int keep, unsigned long seed, long p) {
    std::map<int, long> pt;
    for (int v : a.vars()) {
        if (v == keep) continue;
        unsigned long h = seed ^ (0x9e3779b97f4a7c15UL * static_cast<unsigned long>(v + 17));
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9UL;
        pt[v] = static_cast<long>(2 + (h >> 15) % 1000003);
    }
    std::map<int, long> acc;
    for (auto& term : a.t) {
        BigInt numi = boost::multiprecision::numerator(term.second);
        BigInt deni = boost::multiprecision::denominator(term.second);
        long nm = static_cast<long>(numi % p);
        long dm = static_cast<long>(deni % p);
        if (dm == 0) return {};
        long c = static_cast<long>((__int128)((nm % p + p) % p) * dp_pow(dm, p - 2, p) % p);
        int ke = 0;
        for (auto& ve : term.first.e) {
            if (ve.first == keep) {
                ke = ve.second;
                continue;
            }
            long base = pt.count(ve.first) ? pt[ve.first] : 2;
            long val = ve.second >= 0 ? dp_pow(base, ve.second, p)
                                      : dp_pow(dp_pow(base, p - 2, p), -ve.second, p);
            c = static_cast<long>((__int128)c * val % p);
        }
        acc[ke] = (acc[ke] + c) % p;
    }
    if (acc.empty()) return {0};
    int lo = acc.begin()->first;
    int hi = acc.rbegin()->first;
    std::vector<long> out(static_cast<size_t>(hi - lo) + 1, 0);
    for (auto& kv : acc) out[static_cast<size_t>(kv.first - lo)] = kv.second;
    return out;
}

/// Sound rejector: if b | a then the specialization of b divides that of a
/// (ring homomorphism), so a failed modular division proves non-divisibility.
bool divides_maybe(const LaurentPoly& a, const LaurentPoly& b) {
    int keep = b.vars().empty() ? -1 : b.vars()[0];
    if (keep < 0) return true;
    auto fa = specialize_poly(a, keep, 0xabcdef1234567UL, kDivPrime);
    auto fb = specialize_poly(b, keep, 0xabcdef1234567UL, kDivPrime);
    if (fa.empty() || fb.empty()) return true;  // unusable point: stay undecided
    while (!fb.empty() && fb.back() == 0) fb.pop_back();
    while (!fa.empty() && fa.back() == 0) fa.pop_back();
    if (fb.empty()) return true;  // b specialized to zero: undecided
    if (fa.empty()) return true;  // a specialized to zero: cannot reject
    if (fa.size() < fb.size()) return false;
    long p = kDivPrime;
    long inv = dp_pow(fb.back(), p - 2, p);
    std::vector<long> r = fa;
    while (r.size() >= fb.size()) {
        long f = static_cast<long>((__int128)r.back() * inv % p);
        size_t off = r.size() - fb.size();
        for (size_t i = 0; i < fb.size(); ++i) {
            long& x = r[off + i];
            x = static_cast<long>(((x - (__int128)f * fb[i]) % p + p) % p);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.size() <= off && r.size() + fb.size() > off + 1) break;  // degree dropped past off
        if (r.empty()) break;
        if (r.size() - 1 < fb.size() - 1) break;
    }
    return r.empty() || r.size() < fb.size();
}

}  // namespace

std::optional<LaurentPoly> poly_try_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::runtime_error("poly_try_divide: zero divisor");
    if (a.is_zero()) return a;
    if (b.t.size() == 1) {
        BigRat ic = 1;
        ic /= b.t[0].second;
        return a.mul_mono(b.t[0].first.inverse(), ic);
    }
    if (!divides_maybe(a, b)) return std::nullopt;
    LaurentPoly rem = a, quot;
    const Monomial& lb = b.leading_mono();
    const BigRat& cb = b.leading_coeff();
    // in an exact division every quotient monomial is >= trail(a)/trail(b)
    Monomial mbound = a.t.back().first * b.t.back().first.inverse();
    size_t cap = 16 * (a.t.size() + b.t.size()) + 256;
    while (!rem.is_zero()) {
        Monomial m = rem.leading_mono() * lb.inverse();
        if (mono_cmp(m, mbound) < 0) return std::nullopt;
        if (quot.t.size() > cap) return std::nullopt;  // give up; caller keeps the fraction unreduced
        BigRat c = rem.leading_coeff() / cb;
        quot += LaurentPoly::mono(m, c);
        rem = poly_add_scaled(rem, b.mul_mono(m), -c);
        if (!rem.is_zero() && mono_cmp(rem.leading_mono(), m * lb) >= 0) return std::nullopt;
    }
    return quot;
}

RatFunc::RatFunc(const LaurentPoly& n, const LaurentPoly& d) : num(n) {
    if (d.is_zero()) throw std::runtime_error("RatFunc: zero denominator");
    push_factor(d, 1);
    cancel();
}

void RatFunc::push_factor(const LaurentPoly& f, int e) {
    if (e == 0) return;
    if (f.is_zero()) throw std::runtime_error("RatFunc: zero factor");
    // split off the unit (rational multiple of a monomial): factors are kept
    // monic and monomial-free, the unit moves into the numerator
    std::map<int, int> mins;
    for (auto& term : f.t)
        for (auto& ve : term.first.e) {
            auto it = mins.find(ve.first);
            if (it == mins.end())
                mins[ve.first] = ve.second;
            else
                it->second = std::min(it->second, ve.second);
        }
    for (auto& kv : mins) {
        bool everywhere = true;
        for (auto& term : f.t)
            if (term.first.exp(kv.first) == 0) {
                everywhere = false;
                break;
            }
        if (!everywhere) kv.second = std::min(kv.second, 0);
    }
    Monomial shift;
    for (auto& kv : mins)
        if (kv.second != 0) shift.e.emplace_back(kv.first, -kv.second);
    LaurentPoly g = shift.is_one() ? f : f.mul_mono(shift);
    BigRat lc = g.leading_coeff();
    BigRat ilc = 1;
    ilc /= lc;
    if (lc != 1) g = g * ilc;
    // unit = f / g = shift^{-1} * lc ; numerator gets unit^{-e}
    Monomial ishift = shift;  // g = f * shift  =>  f = g * shift^{-1}
    BigRat unit_c = lc;
    Monomial unit_m = shift.inverse();
    // num *= unit^-e
    BigRat cpow = 1;
    BigRat base = unit_c;
    int ae = std::abs(e);
    for (int i = 0; i < ae; ++i) cpow *= base;
    if (e > 0) {
        BigRat icp = 1;
        icp /= cpow;
        num = num.mul_mono(unit_m.pow(-e), icp);
    } else {
        num = num.mul_mono(unit_m.pow(-e), cpow);
    }
    if (g.is_constant()) return;  // pure unit
    if (e < 0) {
        // numerator factor: multiply into num
        for (int i = 0; i < -e; ++i) num *= g;
        return;
    }
    auto it = std::lower_bound(fac_.begin(), fac_.end(), g,
                               [](const std::pair<LaurentPoly, int>& a, const LaurentPoly& b) {
                                   return poly_cmp(a.first, b) < 0;
                               });
    if (it != fac_.end() && poly_cmp(it->first, g) == 0)
        it->second += e;
    else
        fac_.insert(it, {g, e});
}

void RatFunc::cancel() {
    if (num.is_zero()) {
        fac_.clear();
        return;
    }
    for (auto it = fac_.begin(); it != fac_.end();) {
        while (it->second > 0 && num.t.size() >= it->first.t.size()) {
            auto q = poly_try_divide(num, it->first);
            if (!q) break;
            num = std::move(*q);
            --it->second;
            if (num.is_zero()) {
                fac_.clear();
                return;
            }
        }
        it = it->second == 0 ? fac_.erase(it) : std::next(it);
    }
}

bool RatFunc::is_one() const { return fac_.empty() && num == LaurentPoly::one(); }

LaurentPoly RatFunc::den() const {
    LaurentPoly d = LaurentPoly::one();
    for (auto& f : fac_)
        for (int i = 0; i < f.second; ++i) d *= f.first;
    return d;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // common denominator via the factor multiset union
    RatFunc r;
    LaurentPoly cof_a = LaurentPoly::one(), cof_b = LaurentPoly::one();
    size_t i = 0, j = 0;
    while (i < fac_.size() || j < o.fac_.size()) {
        int c;
        if (i == fac_.size())
            c = 1;
        else if (j == o.fac_.size())
            c = -1;
        else
            c = poly_cmp(fac_[i].first, o.fac_[j].first);
        if (c < 0) {
            r.fac_.push_back(fac_[i]);
            for (int k = 0; k < fac_[i].second; ++k) cof_b *= fac_[i].first;
            ++i;
        } else if (c > 0) {
            r.fac_.push_back(o.fac_[j]);
            for (int k = 0; k < o.fac_[j].second; ++k) cof_a *= o.fac_[j].first;
            ++j;
        } else {
            int e = std::max(fac_[i].second, o.fac_[j].second);
            r.fac_.emplace_back(fac_[i].first, e);
            for (int k = 0; k < e - fac_[i].second; ++k) cof_a *= fac_[i].first;
            for (int k = 0; k < e - o.fac_[j].second; ++k) cof_b *= o.fac_[j].first;
            ++i, ++j;
        }
    }
    r.num = num * cof_a + o.num * cof_b;
    r.cancel();
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    RatFunc r;
    r.num = num * o.num;
    r.fac_ = fac_;
    for (auto& f : o.fac_) {
        auto it = std::lower_bound(r.fac_.begin(), r.fac_.end(), f.first,
                                   [](const std::pair<LaurentPoly, int>& a, const LaurentPoly& b) {
                                       return poly_cmp(a.first, b) < 0;
                                   });
        if (it != r.fac_.end() && poly_cmp(it->first, f.first) == 0)
            it->second += f.second;
        else
            r.fac_.insert(it, f);
    }
    r.cancel();
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::runtime_error("RatFunc: inverse of zero");
    RatFunc r;
    r.num = den();
    r.push_factor(num, 1);
    r.cancel();
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (is_zero()) return RatFunc();
    RatFunc r = *this;
    r.num *= o.den();
    r.push_factor(o.num, 1);
    r.cancel();
    return r;
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r = one();
    RatFunc base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        base = k > 1 ? base * base : base;
        k >>= 1;
    }
    return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
    if (num.is_zero()) return o.num.is_zero();
    if (o.num.is_zero()) return false;
    if (fac_ == o.fac_) return num == o.num;
    // cross-multiply over the factor union (cofactors as in operator+)
    return (*this - o).is_zero();
}

std::pair<LaurentPoly, LaurentPoly> RatFunc::canonical() const {
    LaurentPoly n = num, d = den();
    if (n.is_zero()) return {n, LaurentPoly::one()};
    LaurentPoly g = poly_gcd(n, d);
    if (!(g == LaurentPoly::one())) {
        n = poly_divexact(n, g);
        d = poly_divexact(d, g);
    }
    // denominator monic, monomial-free
    std::map<int, int> mins;
    for (auto& term : d.t)
        for (auto& ve : term.first.e) {
            auto it = mins.find(ve.first);
            if (it == mins.end())
                mins[ve.first] = ve.second;
            else
                it->second = std::min(it->second, ve.second);
        }
    for (auto& kv : mins) {
        bool everywhere = true;
        for (auto& term : d.t)
            if (term.first.exp(kv.first) == 0) {
                everywhere = false;
                break;
            }
        if (!everywhere) kv.second = std::min(kv.second, 0);
    }
    Monomial shift;
    for (auto& kv : mins)
        if (kv.second != 0) shift.e.emplace_back(kv.first, -kv.second);
    if (!shift.is_one()) {
        n = n.mul_mono(shift);
        d = d.mul_mono(shift);
    }
    BigRat lc = d.leading_coeff();
    if (lc != 1) {
        BigRat ic = 1;
        ic /= lc;
        n = n * ic;
        d = d * ic;
    }
    return {n, d};
}

RatFunc RatFunc::subst(const std::map<int, LaurentPoly>& m) const {
    RatFunc r(num.subst(m));
    for (auto& f : fac_) r.push_factor(f.first.subst(m), f.second);
    r.cancel();
    return r;
}

namespace {
RatFunc eval_poly_at(const LaurentPoly& p, int var, const RatFunc& value) {
    auto c = p.coeffs_in(var);
    RatFunc r;
    for (auto& kv : c) r += RatFunc(kv.second) * value.pow(kv.first);
    return r;
}
}  // namespace

RatFunc RatFunc::eval_at(int var, const RatFunc& value) const {
    RatFunc d = RatFunc::one();
    for (auto& f : fac_) d *= eval_poly_at(f.first, var, value).pow(f.second);
    if (d.is_zero()) throw std::runtime_error("RatFunc::eval_at: pole at evaluation point");
    return eval_poly_at(num, var, value) / d;
}

RatFunc RatFunc::residue_at_simple_pole(int var, const RatFunc& a) const {
    // den = (var - a) * rest; divide the denominator by a.den*var - a.num,
    // which clears a's denominator, then evaluate the cofactor at a.
    LaurentPoly aden = a.den();
    LaurentPoly lin = LaurentPoly::var(var_name(var)) * aden - a.num;
    LaurentPoly d = den();
    auto dc = d.coeffs_in(var);
    int deg = dc.empty() ? 0 : dc.rbegin()->first;
    int low = dc.empty() ? 0 : dc.begin()->first;
    if (low < 0) {
        d = d.mul_mono(Monomial::var(var, -low));
        return RatFunc(num.mul_mono(Monomial::var(var, -low)), d).residue_at_simple_pole(var, a);
    }
    std::vector<RatFunc> dv(static_cast<size_t>(deg) + 1);
    for (auto& kv : dc) dv[static_cast<size_t>(kv.first)] = RatFunc(kv.second);
    auto lc = lin.coeffs_in(var);
    RatFunc l1 = RatFunc(lc.count(1) ? lc[1] : LaurentPoly::zero());
    RatFunc l0 = RatFunc(lc.count(0) ? lc[0] : LaurentPoly::zero());
    std::vector<RatFunc> q(static_cast<size_t>(std::max(deg, 1)));
    RatFunc carry;
    for (int i = deg; i >= 1; --i) {
        RatFunc coef = dv[static_cast<size_t>(i)] + carry;
        RatFunc qi = coef / l1;
        q[static_cast<size_t>(i - 1)] = qi;
        carry = -(qi * l0);
    }
    RatFunc rem = dv[0] + carry;
    if (!rem.is_zero()) throw std::runtime_error("residue_at_simple_pole: point is not a pole");
    RatFunc qa;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) qa = qa * a + q[static_cast<size_t>(i)];
    RatFunc na = eval_poly_at(num, var, a);
    RatFunc denom = l1 * qa;
    if (denom.is_zero()) throw std::runtime_error("residue_at_simple_pole: pole is not simple");
    return na / denom;
}

RatFunc RatFunc::residue_via_derivative(int var, const RatFunc& a) const {
    RatFunc dd = RatFunc(den().derivative(var)).eval_at(var, a);
    if (dd.is_zero()) throw std::runtime_error("residue_via_derivative: pole is not simple");
    return eval_poly_at(num, var, a) / dd;
}

std::string RatFunc::str() const {
    auto [n, d] = canonical();
    if (d == LaurentPoly::one()) return n.str();
    std::ostringstream os;
    os << "(" << n.str() << ")/(" << d.str() << ")";
    return os.str();
}

RatFunc operator*(const BigRat& c, const RatFunc& f) {
    if (c == 0) return RatFunc();
    RatFunc r = f;
    r.num = r.num * c;
    return r;
}

}  // namespace qloop
