#include "qloop/laurent.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qloop {

namespace {
std::mutex g_var_mutex;
std::vector<std::string> g_var_names;
std::unordered_map<std::string, int> g_var_ids;
}  // namespace

int var_id(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_var_mutex);
    auto it = g_var_ids.find(name);
    if (it != g_var_ids.end()) return it->second;
    int id = static_cast<int>(g_var_names.size());
    g_var_names.push_back(name);
    g_var_ids.emplace(name, id);
    return id;
}

const std::string& var_name(int id) {
    std::lock_guard<std::mutex> lock(g_var_mutex);
    return g_var_names.at(static_cast<size_t>(id));
}

Monomial Monomial::var(int id, int exp) {
    Monomial m;
    if (exp != 0) m.e.emplace_back(id, exp);
    return m;
}

int Monomial::exp(int id) const {
    for (auto& p : e)
        if (p.first == id) return p.second;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e.reserve(e.size() + o.e.size());
    size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
            r.e.push_back(e[i++]);
        } else if (i == e.size() || o.e[j].first < e[i].first) {
            r.e.push_back(o.e[j++]);
        } else {
            int s = e[i].second + o.e[j].second;
            if (s != 0) r.e.emplace_back(e[i].first, s);
            ++i, ++j;
        }
    }
    return r;
}

Monomial Monomial::pow(int k) const {
    Monomial r;
    if (k == 0) return r;
    r.e = e;
    for (auto& p : r.e) p.second *= k;
    return r;
}

std::string Monomial::str() const {
    if (e.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& p : e) {
        if (!first) os << "*";
        first = false;
        os << var_name(p.first);
        if (p.second != 1) os << "^" << p.second;
    }
    return os.str();
}

int mono_cmp(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        int va = i < a.e.size() ? a.e[i].first : INT32_MAX;
        int vb = j < b.e.size() ? b.e[j].first : INT32_MAX;
        int ea = 0, eb = 0;
        if (va <= vb) ea = a.e[i].second;
        if (vb <= va) eb = b.e[j].second;
        if (ea != eb) return ea > eb ? 1 : -1;
        if (va <= vb) ++i;
        if (vb <= va) ++j;
    }
    return 0;
}

LaurentPoly::LaurentPoly(const BigRat& c) {
    if (c != 0) t.emplace_back(Monomial::one(), c);
}

LaurentPoly LaurentPoly::var(const std::string& name, int exp) {
    return mono(Monomial::var(var_id(name), exp));
}

LaurentPoly LaurentPoly::mono(const Monomial& m, const BigRat& c) {
    LaurentPoly p;
    if (c != 0) p.t.emplace_back(m, c);
    return p;
}

BigRat LaurentPoly::constant_value() const {
    if (t.empty()) return BigRat(0);
    if (!is_constant()) throw std::runtime_error("LaurentPoly: not a constant");
    return t[0].second;
}

const Monomial& LaurentPoly::leading_mono() const {
    if (t.empty()) throw std::runtime_error("LaurentPoly: leading term of zero");
    return t[0].first;
}

const BigRat& LaurentPoly::leading_coeff() const {
    if (t.empty()) throw std::runtime_error("LaurentPoly: leading term of zero");
    return t[0].second;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(*this);
    for (auto& p : r.t) p.second = -p.second;
    return r;
}

LaurentPoly poly_add_scaled(const LaurentPoly& a, const LaurentPoly& b, const BigRat& s) {
    LaurentPoly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() || j < b.t.size()) {
        int c = 0;
        if (i == a.t.size())
            c = -1;
        else if (j == b.t.size())
            c = 1;
        else
            c = mono_cmp(a.t[i].first, b.t[j].first);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            BigRat v = b.t[j].second * s;
            if (v != 0) r.t.emplace_back(b.t[j].first, v);
            ++j;
        } else {
            BigRat v = a.t[i].second + b.t[j].second * s;
            if (v != 0) r.t.emplace_back(a.t[i].first, v);
            ++i, ++j;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const { return poly_add_scaled(*this, o, BigRat(1)); }
LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return poly_add_scaled(*this, o, BigRat(-1)); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return LaurentPoly();
    if (o.t.size() == 1) return mul_mono(o.t[0].first, o.t[0].second);
    if (t.size() == 1) return o.mul_mono(t[0].first, t[0].second);
    std::map<Monomial, BigRat, MonoLess> acc;
    for (auto& p : t)
        for (auto& q : o.t) {
            Monomial m = p.first * q.first;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), p.second * q.second);
            else
                it->second += p.second * q.second;
        }
    LaurentPoly r;
    r.t.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0) r.t.emplace_back(it->first, it->second);
    return r;
}

LaurentPoly LaurentPoly::operator*(const BigRat& c) const {
    if (c == 0) return LaurentPoly();
    LaurentPoly r(*this);
    for (auto& p : r.t) p.second *= c;
    return r;
}

LaurentPoly LaurentPoly::mul_mono(const Monomial& m, const BigRat& c) const {
    if (c == 0) return LaurentPoly();
    LaurentPoly r;
    r.t.reserve(t.size());
    for (auto& p : t) r.t.emplace_back(p.first * m, p.second * c);
    // multiplying by a fixed monomial preserves the term order
    return r;
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (k < 0) throw std::runtime_error("LaurentPoly::pow: negative exponent");
    LaurentPoly r = one();
    LaurentPoly base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        base = k > 1 ? base * base : base;
        k >>= 1;
    }
    return r;
}

std::pair<int, int> LaurentPoly::var_range(int id) const {
    bool seen = false;
    int lo = 0, hi = 0;
    for (auto& p : t) {
        int e = p.first.exp(id);
        if (!seen) {
            lo = hi = e;
            seen = true;
        } else {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    }
    return {lo, hi};
}

bool LaurentPoly::depends_on(int id) const {
    for (auto& p : t)
        if (p.first.exp(id) != 0) return true;
    return false;
}

std::vector<int> LaurentPoly::vars() const {
    std::vector<int> v;
    for (auto& p : t)
        for (auto& q : p.first.e)
            if (std::find(v.begin(), v.end(), q.first) == v.end()) v.push_back(q.first);
    std::sort(v.begin(), v.end());
    return v;
}

std::map<int, LaurentPoly> LaurentPoly::coeffs_in(int id) const {
    std::map<int, LaurentPoly> r;
    for (auto& p : t) {
        int e = p.first.exp(id);
        Monomial rest;
        for (auto& q : p.first.e)
            if (q.first != id) rest.e.push_back(q);
        r[e].t.emplace_back(rest, p.second);
    }
    for (auto& kv : r) {
        std::sort(kv.second.t.begin(), kv.second.t.end(),
                  [](auto& a, auto& b) { return mono_cmp(a.first, b.first) > 0; });
    }
    return r;
}

LaurentPoly LaurentPoly::assemble(int id, const std::map<int, LaurentPoly>& c) {
    LaurentPoly r;
    for (auto& kv : c) r += kv.second.mul_mono(Monomial::var(id, kv.first));
    return r;
}

LaurentPoly LaurentPoly::subst(const std::map<int, LaurentPoly>& m) const {
    LaurentPoly r;
    for (auto& p : t) {
        LaurentPoly term = LaurentPoly(p.second);
        for (auto& q : p.first.e) {
            auto it = m.find(q.first);
            if (it == m.end()) {
                term = term.mul_mono(Monomial::var(q.first, q.second));
            } else {
                const LaurentPoly& s = it->second;
                if (q.second >= 0) {
                    term *= s.pow(q.second);
                } else {
                    if (s.t.size() != 1)
                        throw std::runtime_error("LaurentPoly::subst: negative power of non-monomial");
                    Monomial im = s.t[0].first.pow(q.second);
                    BigRat ic = 1;
                    ic /= s.t[0].second;  // 1/c
                    BigRat cc = 1;
                    for (int k = 0; k < -q.second; ++k) cc *= ic;
                    term = term.mul_mono(im, cc);
                }
            }
        }
        r += term;
    }
    return r;
}

LaurentPoly LaurentPoly::derivative(int id) const {
    LaurentPoly r;
    for (auto& p : t) {
        int e = p.first.exp(id);
        if (e == 0) continue;
        r += mono(p.first * Monomial::var(id, -1), p.second * e);
    }
    return r;
}

BigRat LaurentPoly::content() const {
    if (t.empty()) return BigRat(0);
    BigInt gn = 0, gd = 1;
    bool first = true;
    for (auto& p : t) {
        BigInt n = boost::multiprecision::numerator(p.second);
        BigInt d = boost::multiprecision::denominator(p.second);
        if (n < 0) n = -n;
        if (first) {
            gn = n;
            gd = d;
            first = false;
        } else {
            gn = boost::multiprecision::gcd(gn, n);
            gd = boost::multiprecision::lcm(gd, d);
        }
    }
    return BigRat(gn, gd);
}

std::string LaurentPoly::str() const {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& p : t) {
        BigRat c = p.second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (p.first.is_one()) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << p.first.str();
        }
    }
    return os.str();
}

void LaurentPoly::normalize() {
    std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return mono_cmp(a.first, b.first) > 0; });
    std::vector<std::pair<Monomial, BigRat>> out;
    for (auto& p : t) {
        if (!out.empty() && out.back().first == p.first)
            out.back().second += p.second;
        else
            out.push_back(p);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& p) { return p.second == 0; }), out.end());
    t = std::move(out);
}

// ---------------------------------------------------------------------------
// gcd machinery
// ---------------------------------------------------------------------------

namespace {

// Strip per-variable minimal exponents; returns the stripped polynomial and
// records the monomial shift.
LaurentPoly strip_monomial(const LaurentPoly& a, Monomial& shift) {
    shift = Monomial::one();
    if (a.is_zero()) return a;
    std::map<int, int> mins;
    for (auto& p : a.t)
        for (auto& q : p.first.e) {
            auto it = mins.find(q.first);
            if (it == mins.end())
                mins[q.first] = q.second;
            else
                it->second = std::min(it->second, q.second);
        }
    // variables absent from some term have implicit exponent 0
    for (auto& kv : mins) {
        bool everywhere = true;
        for (auto& p : a.t)
            if (p.first.exp(kv.first) == 0) {
                everywhere = false;
                break;
            }
        if (!everywhere) kv.second = std::min(kv.second, 0);
    }
    Monomial m;
    for (auto& kv : mins)
        if (kv.second != 0) m.e.emplace_back(kv.first, kv.second);
    shift = m;
    return a.mul_mono(m.inverse());
}

// Pick the variable of least maximal degree among those common to both.
int pick_main_var(const LaurentPoly& a, const LaurentPoly& b) {
    std::vector<int> va = a.vars(), vb = b.vars();
    int best = -1, bestdeg = 0;
    for (int v : va) {
        if (std::find(vb.begin(), vb.end(), v) == vb.end()) continue;
        int deg = std::max(a.var_range(v).second, b.var_range(v).second);
        if (best == -1 || deg < bestdeg) {
            best = v;
            bestdeg = deg;
        }
    }
    return best;
}

using Uni = std::vector<LaurentPoly>;  // dense in the main variable, degree = index

Uni to_uni(const LaurentPoly& a, int v) {
    auto c = a.coeffs_in(v);
    int deg = c.empty() ? 0 : c.rbegin()->first;
    Uni u(static_cast<size_t>(deg) + 1);
    for (auto& kv : c) u[static_cast<size_t>(kv.first)] = kv.second;
    return u;
}

LaurentPoly from_uni(const Uni& u, int v) {
    LaurentPoly r;
    for (size_t i = 0; i < u.size(); ++i) r += u[i].mul_mono(Monomial::var(v, static_cast<int>(i)));
    return r;
}

int uni_deg(const Uni& u) {
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        if (!u[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

// Pseudo-remainder of a by b in the main variable.
Uni pseudo_rem(Uni a, const Uni& b) {
    int db = uni_deg(b);
    const LaurentPoly& lb = b[static_cast<size_t>(db)];
    int da = uni_deg(a);
    while (da >= db && da >= 0) {
        LaurentPoly la = a[static_cast<size_t>(da)];
        // a = lb*a - la * x^(da-db) * b
        for (auto& c : a) c = c * lb;
        for (int i = 0; i <= db; ++i) {
            a[static_cast<size_t>(da - db + i)] -= la * b[static_cast<size_t>(i)];
        }
        int nda = uni_deg(a);
        if (nda == da) throw std::runtime_error("pseudo_rem: degree did not drop");
        da = nda;
    }
    a.resize(static_cast<size_t>(std::max(da, 0)) + 1);
    return a;
}

// ---- sound coprimality fast path: specialize all variables but one mod p ----

constexpr long kFpPrime = 2147483647L;  // 2^31 - 1

long fp_pow(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((__int128)r * b % p);
        b = static_cast<long>((__int128)b * b % p);
        e >>= 1;
    }
    return r;
}

// Evaluate stripped-ordinary poly at point (var -> value) keeping main var x;
// returns dense coefficient vector mod p, or nullopt if a rational coefficient
// has a denominator divisible by p (cannot happen for integers < p).
std::vector<long> fp_specialize(const LaurentPoly& a, int x, const std::map<int, long>& pt, long p) {
    std::map<int, long> acc;
    for (auto& term : a.t) {
        long c;
        {
            BigInt num = boost::multiprecision::numerator(term.second);
            BigInt den = boost::multiprecision::denominator(term.second);
            long nm = static_cast<long>(num % p);
            long dm = static_cast<long>(den % p);
            if (dm == 0) return {};  // unusable point
            c = static_cast<long>((__int128)((nm % p + p) % p) * fp_pow(dm, p - 2, p) % p);
        }
        int xe = 0;
        for (auto& ve : term.first.e) {
            if (ve.first == x) {
                xe = ve.second;
                continue;
            }
            auto it = pt.find(ve.first);
            if (it == pt.end()) throw std::runtime_error("fp_specialize: missing point coordinate");
            long e = ve.second;
            long val = e >= 0 ? fp_pow(it->second, e, p) : fp_pow(fp_pow(it->second, p - 2, p), -e, p);
            c = static_cast<long>((__int128)c * val % p);
        }
        acc[xe] = (acc[xe] + c) % p;
    }
    if (acc.empty()) return {};
    int deg = acc.rbegin()->first;
    std::vector<long> out(static_cast<size_t>(deg) + 1, 0);
    for (auto& kv : acc) out[static_cast<size_t>(kv.first)] = kv.second;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

int fp_uni_gcd_degree(std::vector<long> a, std::vector<long> b, long p) {
    auto deg = [](const std::vector<long>& v) { return static_cast<int>(v.size()) - 1; };
    while (!b.empty()) {
        // a mod b
        long inv = fp_pow(b.back(), p - 2, p);
        while (deg(a) >= deg(b) && !a.empty()) {
            long f = static_cast<long>((__int128)a.back() * inv % p);
            int off = deg(a) - deg(b);
            for (int i = 0; i <= deg(b); ++i) {
                long& x = a[static_cast<size_t>(off + i)];
                x = (x - (__int128)f * b[static_cast<size_t>(i)] % p + p) % p;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return deg(a);
}

// True when the primitive parts are certainly coprime in the main variable:
// a random specialization keeping the leading coefficients nonzero has a
// constant gcd mod p. Specialization can only enlarge the gcd degree, so a
// constant specialized gcd is a proof. Returns false when undecided.
bool certainly_coprime(const LaurentPoly& a, const LaurentPoly& b, int x) {
    std::vector<int> vars;
    for (int v : a.vars())
        if (v != x) vars.push_back(v);
    for (int v : b.vars())
        if (v != x && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    unsigned long seed = 0x9e3779b97f4a7c15UL;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::map<int, long> pt;
        for (int v : vars) {
            seed = seed * 6364136223846793005UL + 1442695040888963407UL;
            pt[v] = static_cast<long>(2 + (seed >> 17) % 1000003);
        }
        auto fa = fp_specialize(a, x, pt, kFpPrime);
        auto fb = fp_specialize(b, x, pt, kFpPrime);
        if (fa.empty() || fb.empty()) continue;
        auto arange = a.var_range(x), brange = b.var_range(x);
        if (static_cast<int>(fa.size()) - 1 != arange.second ||
            static_cast<int>(fb.size()) - 1 != brange.second)
            continue;  // leading coefficient vanished at the point; retry
        if (fp_uni_gcd_degree(fa, fb, kFpPrime) == 0) return true;
        return false;  // nontrivial specialized gcd: run the full PRS
    }
    return false;
}

LaurentPoly content_of_uni(const Uni& u);

// gcd of ordinary (non-Laurent) polynomials, both nonzero.
LaurentPoly gcd_ordinary(LaurentPoly a, LaurentPoly b) {
    if (a.is_constant() || b.is_constant()) return LaurentPoly::one();
    int v = pick_main_var(a, b);
    if (v < 0) return LaurentPoly::one();  // disjoint variable sets
    Uni ua = to_uni(a, v), ub = to_uni(b, v);
    LaurentPoly ca = content_of_uni(ua), cb = content_of_uni(ub);
    for (auto& c : ua) c = poly_divexact(c, ca);
    for (auto& c : ub) c = poly_divexact(c, cb);
    LaurentPoly cont = poly_gcd(ca, cb);
    if (certainly_coprime(from_uni(ua, v), from_uni(ub, v), v)) return cont;
    // subresultant polynomial remainder sequence on the primitive parts
    if (uni_deg(ua) < uni_deg(ub)) std::swap(ua, ub);
    LaurentPoly g = LaurentPoly::one(), h = LaurentPoly::one();
    while (true) {
        int da = uni_deg(ua), db = uni_deg(ub);
        int delta = da - db;
        Uni r = pseudo_rem(ua, ub);
        if (uni_deg(r) < 0) {
            LaurentPoly cr = content_of_uni(ub);
            for (auto& c : ub) c = poly_divexact(c, cr);
            return cont * from_uni(ub, v);
        }
        if (uni_deg(r) == 0) return cont;  // coprime primitive parts
        // divisor g * h^delta of the subresultant scheme (exact)
        LaurentPoly div = g;
        for (int i = 0; i < delta; ++i) div = div * h;
        ua = std::move(ub);
        ub = std::move(r);
        for (auto& c : ub) c = poly_divexact(c, div);
        g = ua[static_cast<size_t>(uni_deg(ua))];
        if (delta > 0) {
            // h = g^delta / h^{delta-1}, exact in the subresultant scheme
            LaurentPoly num = LaurentPoly::one();
            for (int i = 0; i < delta; ++i) num = num * g;
            LaurentPoly den = LaurentPoly::one();
            for (int i = 0; i + 1 < delta; ++i) den = den * h;
            h = poly_divexact(num, den);
        }
    }
}

LaurentPoly content_of_uni(const Uni& u) {
    LaurentPoly g;
    for (auto& c : u) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant()) return LaurentPoly::one();
    }
    if (g.is_zero()) throw std::runtime_error("content_of_uni: zero polynomial");
    return g;
}

LaurentPoly unit_normalize(LaurentPoly g) {
    if (g.is_zero()) return g;
    BigRat c = g.content();
    if (g.leading_coeff() < 0) c = -c;
    BigRat ic = 1;
    ic /= c;
    return g * ic;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return unit_normalize(b);
    if (b.is_zero()) return unit_normalize(a);
    Monomial sa, sb;
    LaurentPoly pa = strip_monomial(a, sa);
    LaurentPoly pb = strip_monomial(b, sb);
    // common monomial part: per-variable min of the two shifts (only matters
    // for honest Laurent inputs; ordinary inputs have zero shifts)
    Monomial common;
    {
        std::map<int, int> ea, eb;
        for (auto& p : sa.e) ea[p.first] = p.second;
        for (auto& p : sb.e) eb[p.first] = p.second;
        for (auto& kv : ea) {
            auto it = eb.find(kv.first);
            int m = std::min(kv.second, it == eb.end() ? 0 : it->second);
            if (m != 0) common.e.emplace_back(kv.first, m);
        }
        for (auto& kv : eb) {
            if (ea.count(kv.first)) continue;
            int m = std::min(0, kv.second);
            if (m != 0) common.e.emplace_back(kv.first, m);
        }
        std::sort(common.e.begin(), common.e.end());
    }
    LaurentPoly g = gcd_ordinary(pa, pb);
    return unit_normalize(g.mul_mono(common));
}

LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::runtime_error("poly_divexact: division by zero");
    if (a.is_zero()) return a;
    if (b.t.size() == 1) {
        BigRat ic = 1;
        ic /= b.t[0].second;
        return a.mul_mono(b.t[0].first.inverse(), ic);
    }
    // long division along the joint leading order
    LaurentPoly rem = a, quot;
    const Monomial& lb = b.leading_mono();
    const BigRat& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        Monomial m = rem.leading_mono() * lb.inverse();
        BigRat c = rem.leading_coeff() / cb;
        LaurentPoly term = LaurentPoly::mono(m, c);
        quot += term;
        rem = poly_add_scaled(rem, b.mul_mono(m), -c);
        if (!rem.is_zero() && mono_cmp(rem.leading_mono(), m * lb) >= 0)
            throw std::runtime_error("poly_divexact: not divisible (no progress)");
    }
    return quot;
}

}  // namespace qloop
