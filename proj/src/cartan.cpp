#include "qloop/cartan.hpp"

#include <algorithm>
#include <sstream>

namespace qloop {

std::vector<int> CartanData::neighbors(int i) const {
    std::vector<int> r;
    for (int j = 0; j < n; ++j)
        if (j != i && cij(i, j) < 0) r.push_back(j);
    return r;
}

CartanData validate_cartan(const std::vector<std::vector<int>>& c, const std::vector<int>& d,
                           const std::vector<std::pair<int, int>>& orientation) {
    size_t n = c.size();
    if (n == 0) throw NotCartan("empty matrix");
    for (auto& row : c)
        if (row.size() != n) throw NotCartan("matrix is not square");
    for (size_t i = 0; i < n; ++i) {
        if (c[i][i] != 2) throw NotCartan("diagonal entry != 2");
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (c[i][j] > 0) throw NotCartan("positive off-diagonal entry");
            if ((c[i][j] == 0) != (c[j][i] == 0)) throw NotCartan("zero pattern not symmetric");
        }
    }
    if (d.size() != n) throw NotSymmetrizable("symmetrizer size mismatch");
    for (int di : d)
        if (di <= 0) throw NotSymmetrizable("symmetrizer entries must be positive");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (d[i] * c[i][j] != d[j] * c[j][i]) throw NotSymmetrizable("d_i c_ij != d_j c_ji");
    // per-edge invariant b_ij = -max(d_i, d_j)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (c[i][j] < 0 && d[i] * c[i][j] != -std::max(d[i], d[j]))
                throw NotSymmetrizable("b_ij != -max(d_i,d_j) on an edge");
    int t = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) t = std::max(t, -c[i][j]);
    if (t > 3) throw NotCartan("lacing number exceeds 3");

    CartanData cd;
    cd.n = static_cast<int>(n);
    cd.c = c;
    cd.d = d;
    cd.t = t;
    cd.o.assign(n, std::vector<int>(n, 0));
    for (auto& pr : orientation) {
        int i = pr.first, j = pr.second;
        if (i < 0 || j < 0 || i >= cd.n || j >= cd.n || i == j) throw BadOrientation("pair out of range");
        if (c[static_cast<size_t>(i)][static_cast<size_t>(j)] >= 0)
            throw BadOrientation("oriented pair is not an edge");
        if (cd.o[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
            throw BadOrientation("edge oriented twice");
        cd.o[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
        cd.o[static_cast<size_t>(j)][static_cast<size_t>(i)] = -1;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if ((cd.o[i][j] != 0) != (c[i][j] < 0)) throw BadOrientation("orientation does not cover the edges");
    return cd;
}

CartanData cartan_preset(const std::string& name) {
    if (name.size() < 2) throw NotCartan("unknown preset '" + name + "'");
    char fam = name[0];
    int n = 0;
    try {
        n = std::stoi(name.substr(1));
    } catch (...) {
        throw NotCartan("unknown preset '" + name + "'");
    }
    auto simply = [](int m) {
        std::vector<std::vector<int>> c(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), 0));
        for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
        return c;
    };
    std::vector<std::vector<int>> c;
    std::vector<int> d;
    if (fam == 'A' && n >= 1) {
        c = simply(n);
        for (int i = 0; i + 1 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
        d.assign(static_cast<size_t>(n), 1);
    } else if (fam == 'B' && n >= 2) {
        c = simply(n);
        for (int i = 0; i + 1 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
        c[n - 1][n - 2] = -2;  // last simple root short
        d.assign(static_cast<size_t>(n), 2);
        d[static_cast<size_t>(n - 1)] = 1;
    } else if (fam == 'C' && n >= 2) {
        c = simply(n);
        for (int i = 0; i + 1 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
        c[n - 2][n - 1] = -2;  // last simple root long
        d.assign(static_cast<size_t>(n), 1);
        d[static_cast<size_t>(n - 1)] = 2;
    } else if (fam == 'D' && n >= 4) {
        c = simply(n);
        for (int i = 0; i + 2 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1;
        d.assign(static_cast<size_t>(n), 1);
    } else if (fam == 'G' && n == 2) {
        c = {{2, -1}, {-3, 2}};
        d = {3, 1};
    } else {
        throw NotCartan("unknown preset '" + name + "'");
    }
    std::vector<std::pair<int, int>> orient;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (c[static_cast<size_t>(i)][static_cast<size_t>(j)] < 0) orient.emplace_back(i, j);
    return validate_cartan(c, d, orient);
}

GradedDimVector GradedDimVector::delta(int i, int k, long v) {
    GradedDimVector g;
    g.add(i, k, v);
    return g;
}

long GradedDimVector::at(int i, int k) const {
    auto it = m.find({i, k});
    return it == m.end() ? 0 : it->second;
}

void GradedDimVector::add(int i, int k, long v) {
    if (v == 0) return;
    auto key = std::make_pair(i, k);
    auto it = m.find(key);
    if (it == m.end())
        m.emplace(key, v);
    else {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

GradedDimVector GradedDimVector::operator+(const GradedDimVector& o) const {
    GradedDimVector r = *this;
    for (auto& kv : o.m) r.add(kv.first.first, kv.first.second, kv.second);
    return r;
}

GradedDimVector GradedDimVector::operator-(const GradedDimVector& o) const {
    GradedDimVector r = *this;
    for (auto& kv : o.m) r.add(kv.first.first, kv.first.second, -kv.second);
    return r;
}

bool GradedDimVector::operator<(const GradedDimVector& o) const {
    long a = total(), b = o.total();
    if (a != b) return a < b;
    return m < o.m;
}

long GradedDimVector::total() const {
    long s = 0;
    for (auto& kv : m) s += kv.second;
    return s;
}

std::string GradedDimVector::str() const {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& kv : m) {
        if (!first) os << "+";
        first = false;
        os << "(" << kv.first.first + 1 << "," << kv.first.second << ")";
        if (kv.second != 1) os << "^" << kv.second;
    }
    return os.str();
}

GradedDimVector weight_shift(const GradedDimVector& w, const GradedDimVector& v, const CartanData& cd) {
    GradedDimVector r = w;
    for (auto& kv : v.m) {
        int j = kv.first.first, k = kv.first.second;
        long x = kv.second;
        int dj = cd.di(j);
        // contribution of v_{j,k} to the i = j entries
        r.add(j, k + dj, -x);
        r.add(j, k - dj, -x);
        // neighbor contributions: entry (i,k') picks up v_{j,k} according to c_{ij}
        for (int i : cd.neighbors(j)) {
            switch (cd.cij(i, j)) {
                case -1:
                    r.add(i, k, x);
                    break;
                case -2:
                    r.add(i, k - 1, x);
                    r.add(i, k + 1, x);
                    break;
                case -3:
                    r.add(i, k - 2, x);
                    r.add(i, k, x);
                    r.add(i, k + 2, x);
                    break;
                default:
                    throw NotCartan("unsupported off-diagonal entry in weight_shift");
            }
        }
    }
    return r;
}

GradedQuiver build_triple_quiver(const CartanData& cd, bool framed) {
    GradedQuiver q;
    q.framed = framed;
    for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j) {
            if (i == j || cd.cij(i, j) >= 0) continue;
            GradedQuiver::Arrow a;
            a.kind = GradedQuiver::Kind::Alpha;
            a.i = i;
            a.j = j;
            a.src = j;
            a.tgt = i;
            a.deg = cd.b(i, j);
            std::ostringstream os;
            os << "alpha[" << i + 1 << "," << j + 1 << "]";
            a.name = os.str();
            q.arrows.push_back(a);
        }
    for (int i = 0; i < cd.n; ++i) {
        GradedQuiver::Arrow e;
        e.kind = GradedQuiver::Kind::Eps;
        e.i = e.j = i;
        e.src = e.tgt = i;
        e.deg = 2 * cd.di(i);
        std::ostringstream os;
        os << "eps[" << i + 1 << "]";
        e.name = os.str();
        q.arrows.push_back(e);
    }
    if (framed) {
        for (int i = 0; i < cd.n; ++i) {
            GradedQuiver::Arrow a;
            a.kind = GradedQuiver::Kind::Fr;
            a.i = a.j = i;
            a.src = i;
            a.tgt = i;  // framed vertex i' carries the same index
            a.deg = -cd.di(i);
            std::ostringstream os;
            os << "a[" << i + 1 << "]";
            a.name = os.str();
            q.arrows.push_back(a);
            GradedQuiver::Arrow b = a;
            b.kind = GradedQuiver::Kind::FrStar;
            b.name = "a*[" + std::to_string(i + 1) + "]";
            q.arrows.push_back(b);
        }
    }
    return q;
}

}  // namespace qloop
