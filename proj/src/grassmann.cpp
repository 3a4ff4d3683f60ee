#include "qloop/grassmann.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <functional>
#include <thread>

namespace qloop {

namespace {

using Piece = std::pair<int, int>;

struct ArrowEdge {
    ModArrow a;
    Piece src, tgt;
};

/// Arrows with nonzero action matrices between nonzero pieces.
std::vector<ArrowEdge> module_edges(const GradedModule& m) {
    std::vector<ArrowEdge> edges;
    for (auto& arr : m.arrows()) {
        int sv = arr.source(m.cd), deg = arr.degree(m.cd);
        for (auto& kv : m.dims) {
            if (kv.first.first != sv) continue;
            Piece tgt{arr.target(m.cd), kv.first.second + deg};
            if (!m.dims.count(tgt)) continue;
            edges.push_back({arr, kv.first, tgt});
        }
    }
    return edges;
}

std::vector<int> fp_apply(const FpMatrix& mat, const std::vector<int>& v) {
    std::vector<int> r(static_cast<size_t>(mat.rows), 0);
    for (int i = 0; i < mat.rows; ++i) {
        long s = 0;
        for (int j = 0; j < mat.cols; ++j) s += static_cast<long>(mat.at(i, j)) * v[static_cast<size_t>(j)];
        r[static_cast<size_t>(i)] = static_cast<int>(s % mat.p);
    }
    return r;
}

struct FpContext {
    int p;
    std::vector<Piece> pieces;
    std::map<Piece, int> piece_index;
    std::vector<int> dims;
    std::vector<ArrowEdge> edges;
    std::map<std::pair<ModArrow, Piece>, FpMatrix> mats;
};

FpContext make_fp_context(const GradedModule& m, int p) {
    FpContext ctx;
    ctx.p = p;
    for (auto& kv : m.dims) {
        ctx.piece_index[kv.first] = static_cast<int>(ctx.pieces.size());
        ctx.pieces.push_back(kv.first);
        ctx.dims.push_back(kv.second);
    }
    ctx.edges = module_edges(m);
    for (auto& e : ctx.edges)
        ctx.mats.emplace(std::make_pair(e.a, e.src),
                         reduce_mod(m.action(e.a, e.src.first, e.src.second), p));
    return ctx;
}

long long count_points_ctx(const FpContext& ctx, const std::vector<int>& want) {
    size_t n = ctx.pieces.size();
    // subspace of each piece as RREF basis rows; assigned in order
    std::vector<FpMatrix> chosen(n);
    std::vector<std::vector<int>> pivots(n);
    long long total = 0;

    // candidate subspaces per piece are recomputed per assignment prefix via
    // forced spans; at desk scale plain filtering is enough
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == n) {
            ++total;
            return;
        }
        int d = ctx.dims[idx];
        int r = want[idx];
        // forced vectors: images of already-assigned sources along edges into this piece
        std::vector<std::vector<int>> forced;
        for (auto& e : ctx.edges) {
            int si = ctx.piece_index.at(e.src), ti = ctx.piece_index.at(e.tgt);
            if (ti != static_cast<int>(idx) || si >= static_cast<int>(idx)) continue;
            const FpMatrix& mat = ctx.mats.at({e.a, e.src});
            for (int row = 0; row < chosen[static_cast<size_t>(si)].rows; ++row) {
                std::vector<int> vec(static_cast<size_t>(chosen[static_cast<size_t>(si)].cols));
                for (int c = 0; c < chosen[static_cast<size_t>(si)].cols; ++c)
                    vec[static_cast<size_t>(c)] = chosen[static_cast<size_t>(si)].at(row, c);
                forced.push_back(fp_apply(mat, vec));
            }
        }
        for (auto& sub : fp_subspaces(ctx.p, d, r)) {
            FpMatrix sb = sub;
            auto pv = fp_rref(sb);
            bool ok = true;
            for (auto& f : forced)
                if (!fp_in_row_space(sb, pv, f)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            // edges from this piece to already-assigned targets
            for (auto& e : ctx.edges) {
                int si = ctx.piece_index.at(e.src), ti = ctx.piece_index.at(e.tgt);
                if (si != static_cast<int>(idx) || ti > static_cast<int>(idx)) continue;
                const FpMatrix& mat = ctx.mats.at({e.a, e.src});
                const FpMatrix& tb = ti == static_cast<int>(idx) ? sb : chosen[static_cast<size_t>(ti)];
                const std::vector<int>& tp = ti == static_cast<int>(idx) ? pv : pivots[static_cast<size_t>(ti)];
                for (int row = 0; row < sb.rows && ok; ++row) {
                    std::vector<int> vec(static_cast<size_t>(sb.cols));
                    for (int c = 0; c < sb.cols; ++c) vec[static_cast<size_t>(c)] = sb.at(row, c);
                    if (!fp_in_row_space(tb, tp, fp_apply(mat, vec))) ok = false;
                }
                if (!ok) break;
            }
            if (!ok) continue;
            chosen[idx] = sb;
            pivots[idx] = pv;
            rec(idx + 1);
        }
    };
    rec(0);
    return total;
}

std::vector<int> want_vector(const FpContext& ctx, const GradedDimVector& v) {
    std::vector<int> want(ctx.pieces.size(), 0);
    for (auto& kv : v.m) {
        auto it = ctx.piece_index.find(kv.first);
        if (it == ctx.piece_index.end()) return {};  // v outside the support
        want[static_cast<size_t>(it->second)] = static_cast<int>(kv.second);
    }
    for (size_t i = 0; i < want.size(); ++i)
        if (want[i] < 0 || want[i] > ctx.dims[i]) return {};
    return want;
}

// --------------------------- exact Q enumeration ---------------------------

struct QContext {
    std::vector<Piece> pieces;
    std::map<Piece, int> piece_index;
    std::vector<int> dims;
    std::vector<ArrowEdge> edges;
    std::map<std::pair<ModArrow, Piece>, QMatrix> mats;
    std::vector<std::vector<std::vector<BigRat>>> pool;  // candidate vectors per piece
};

std::vector<BigRat> q_apply(const QMatrix& m, const std::vector<BigRat>& v) {
    std::vector<BigRat> r(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r[static_cast<size_t>(i)] += m.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

void pool_insert(std::vector<std::vector<BigRat>>& pool, std::vector<BigRat> v) {
    auto nz = std::find_if(v.begin(), v.end(), [](const BigRat& x) { return x != 0; });
    if (nz == v.end()) return;
    BigRat inv = 1;
    inv /= *nz;
    for (auto& x : v) x *= inv;
    if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(std::move(v));
}

QContext make_q_context(const GradedModule& m) {
    QContext ctx;
    for (auto& kv : m.dims) {
        ctx.piece_index[kv.first] = static_cast<int>(ctx.pieces.size());
        ctx.pieces.push_back(kv.first);
        ctx.dims.push_back(kv.second);
    }
    ctx.edges = module_edges(m);
    for (auto& e : ctx.edges)
        ctx.mats.emplace(std::make_pair(e.a, e.src), m.action(e.a, e.src.first, e.src.second));
    ctx.pool.resize(ctx.pieces.size());
    for (size_t i = 0; i < ctx.pieces.size(); ++i) {
        int d = ctx.dims[i];
        for (int b = 0; b < d; ++b) {
            std::vector<BigRat> v(static_cast<size_t>(d));
            v[static_cast<size_t>(b)] = 1;
            pool_insert(ctx.pool[i], std::move(v));
        }
    }
    // close the pool under arrow images and pairwise combinationss of small pools
    bool grew = true;
    int guard = 0;
    while (grew && guard++ < 64) {
        grew = false;
        for (auto& e : ctx.edges) {
            size_t si = static_cast<size_t>(ctx.piece_index.at(e.src));
            size_t ti = static_cast<size_t>(ctx.piece_index.at(e.tgt));
            const QMatrix& mat = ctx.mats.at({e.a, e.src});
            size_t before = ctx.pool[ti].size();
            for (auto& v : ctx.pool[si]) pool_insert(ctx.pool[ti], q_apply(mat, v));
            if (ctx.pool[ti].size() != before) grew = true;
        }
    }
    for (size_t i = 0; i < ctx.pieces.size(); ++i) {
        if (ctx.dims[i] < 2 || ctx.pool[i].size() > 8) continue;
        auto base = ctx.pool[i];
        for (size_t a = 0; a < base.size(); ++a)
            for (size_t b = a + 1; b < base.size(); ++b) {
                std::vector<BigRat> s(base[a].size()), dm(base[a].size());
                for (size_t k = 0; k < s.size(); ++k) {
                    s[k] = base[a][k] + base[b][k];
                    dm[k] = base[a][k] - base[b][k];
                }
                pool_insert(ctx.pool[i], std::move(s));
                pool_insert(ctx.pool[i], std::move(dm));
            }
    }
    return ctx;
}

/// RREF basis of the span of `vecs`, or nullopt if rank != want.
std::optional<QMatrix> span_basis(const std::vector<std::vector<BigRat>>& vecs, int cols, int want) {
    QMatrix m(static_cast<int>(vecs.size()), cols);
    for (size_t i = 0; i < vecs.size(); ++i)
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = vecs[i][static_cast<size_t>(j)];
    auto pv = rref(m);
    if (static_cast<int>(pv.size()) != want) return std::nullopt;
    QMatrix b(want, cols);
    for (int i = 0; i < want; ++i)
        for (int j = 0; j < cols; ++j) b.at(i, j) = m.at(i, j);
    return b;
}

std::vector<Submodule> enumerate_exact(const QContext& ctx, const std::vector<int>& want) {
    size_t n = ctx.pieces.size();
    std::vector<QMatrix> chosen(n);
    std::vector<std::vector<int>> pivots(n);
    std::vector<Submodule> found;

    // candidate subspaces per piece: RREF bases of spans of pool subsets
    std::vector<std::vector<QMatrix>> cands(n);
    for (size_t i = 0; i < n; ++i) {
        int r = want[i], d = ctx.dims[i];
        if (r == 0) {
            cands[i].push_back(QMatrix(0, d));
            continue;
        }
        if (r == d) {
            cands[i].push_back(QMatrix::identity(d));
            continue;
        }
        auto& pool = ctx.pool[i];
        std::vector<int> idx(static_cast<size_t>(r));
        std::function<void(int, int)> comb = [&](int start, int k) {
            if (k == r) {
                std::vector<std::vector<BigRat>> vecs;
                for (int t = 0; t < r; ++t) vecs.push_back(pool[static_cast<size_t>(idx[static_cast<size_t>(t)])]);
                auto b = span_basis(vecs, d, r);
                if (b) {
                    bool dup = false;
                    for (auto& c : cands[i])
                        if (c == *b) {
                            dup = true;
                            break;
                        }
                    if (!dup) cands[i].push_back(*b);
                }
                return;
            }
            for (int s = start; s < static_cast<int>(pool.size()); ++s) {
                idx[static_cast<size_t>(k)] = s;
                comb(s + 1, k + 1);
            }
        };
        comb(0, 0);
    }

    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == n) {
            Submodule s;
            for (size_t i = 0; i < n; ++i)
                if (chosen[i].rows > 0) s.basis[ctx.pieces[i]] = chosen[i];
            found.push_back(std::move(s));
            return;
        }
        for (auto& cand : cands[idx]) {
            QMatrix tmp = cand;
            auto pv = rref(tmp);
            bool ok = true;
            // incoming edges from assigned pieces
            for (auto& e : ctx.edges) {
                int si = ctx.piece_index.at(e.src), ti = ctx.piece_index.at(e.tgt);
                if (!ok) break;
                const QMatrix* sb = nullptr;
                const QMatrix* tb = nullptr;
                const std::vector<int>* tp = nullptr;
                if (ti == static_cast<int>(idx) && si < static_cast<int>(idx)) {
                    sb = &chosen[static_cast<size_t>(si)];
                    tb = &tmp;
                    tp = &pv;
                } else if (si == static_cast<int>(idx) && ti < static_cast<int>(idx)) {
                    sb = &tmp;
                    tb = &chosen[static_cast<size_t>(ti)];
                    tp = &pivots[static_cast<size_t>(ti)];
                } else if (si == static_cast<int>(idx) && ti == static_cast<int>(idx)) {
                    sb = &tmp;
                    tb = &tmp;
                    tp = &pv;
                } else {
                    continue;
                }
                const QMatrix& mat = ctx.mats.at({e.a, e.src});
                for (int row = 0; row < sb->rows && ok; ++row) {
                    std::vector<BigRat> vec(static_cast<size_t>(sb->cols));
                    for (int c = 0; c < sb->cols; ++c) vec[static_cast<size_t>(c)] = sb->at(row, c);
                    auto img = q_apply(mat, vec);
                    if (!in_row_space(*tb, *tp, img)) ok = false;
                }
            }
            if (!ok) continue;
            chosen[idx] = tmp;
            pivots[idx] = pv;
            rec(idx + 1);
        }
    };
    rec(0);
    return found;
}

/// All candidate graded dimension vectors 0 <= v <= dims(M), graded-lex.
std::vector<GradedDimVector> all_candidates(const GradedModule& m) {
    std::vector<Piece> pieces;
    std::vector<int> dims;
    for (auto& kv : m.dims) {
        pieces.push_back(kv.first);
        dims.push_back(kv.second);
    }
    std::vector<GradedDimVector> out;
    std::vector<int> cur(pieces.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == pieces.size()) {
            GradedDimVector v;
            for (size_t k = 0; k < pieces.size(); ++k)
                if (cur[k]) v.add(pieces[k].first, pieces[k].second, cur[k]);
            out.push_back(std::move(v));
            return;
        }
        for (cur[i] = 0; cur[i] <= dims[i]; ++cur[i]) rec(i + 1);
        cur[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BigRat> lagrange_through(const std::vector<std::pair<int, long long>>& pts) {
    size_t n = pts.size();
    std::vector<BigRat> coeffs(n, BigRat(0));
    for (size_t i = 0; i < n; ++i) {
        // basis polynomial for node i, times value
        std::vector<BigRat> basis{BigRat(1)};
        BigRat denom(1);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<BigRat> nb(basis.size() + 1, BigRat(0));
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] += basis[k];
                nb[k] -= basis[k] * pts[j].first;
            }
            basis = std::move(nb);
            denom *= BigRat(pts[i].first - pts[j].first);
        }
        BigRat f = BigRat(pts[i].second) / denom;
        for (size_t k = 0; k < basis.size(); ++k) coeffs[k] += basis[k] * f;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

long dim_bound_for(const GradedModule& m, const GradedDimVector& v) {
    long b = 0;
    for (auto& kv : v.m) {
        long d = m.dim(kv.first.first, kv.first.second);
        b += kv.second * (d - kv.second);
    }
    return b;
}

}  // namespace

const CatalogEntry* SubmoduleCatalog::find(const GradedDimVector& v) const {
    for (auto& e : entries)
        if (e.v == v) return &e;
    return nullptr;
}

long long count_points_fp(const GradedModule& m, const GradedDimVector& v, int p) {
    FpContext ctx = make_fp_context(m, p);
    auto want = want_vector(ctx, v);
    if (want.empty() && !v.is_zero()) return 0;
    if (want.empty()) want.assign(ctx.pieces.size(), 0);
    return count_points_ctx(ctx, want);
}

SubmoduleCatalog build_catalog(const GradedModule& m, const GrassmannOptions& opt) {
    for (auto& kv : m.dims)
        if (kv.second > opt.dim_bound)
            throw TooLarge("graded piece of dimension " + std::to_string(kv.second) +
                           " exceeds the bound " + std::to_string(opt.dim_bound));
    auto vs = all_candidates(m);
    std::vector<FpContext> fpctx;
    for (int p : opt.primes) fpctx.push_back(make_fp_context(m, p));
    QContext qctx = make_q_context(m);

    std::vector<CatalogEntry> entries(vs.size());
    std::atomic<size_t> next{0};
    std::exception_ptr eptr;
    std::mutex emu;
    auto worker = [&]() {
        try {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= vs.size()) break;
                CatalogEntry e;
                e.v = vs[i];
                bool any = false, all = true, constant = true;
                std::vector<std::pair<int, long long>> pts;
                for (auto& ctx : fpctx) {
                    auto want = want_vector(ctx, e.v);
                    long long c = count_points_ctx(ctx, want);
                    e.counts[ctx.p] = c;
                    pts.emplace_back(ctx.p, c);
                    any = any || c > 0;
                    all = all && c > 0;
                    if (c != pts[0].second) constant = false;
                }
                if (any != all)
                    throw std::runtime_error(
                        "graded_support: inconsistent nonemptiness across primes for v=" + e.v.str());
                if (any) {
                    if (constant) {
                        e.counting_poly = {BigRat(pts[0].second)};
                        e.chi = pts[0].second;
                    } else {
                        auto coeffs = lagrange_through(pts);
                        bool ok = static_cast<long>(coeffs.size()) - 1 <= dim_bound_for(m, e.v);
                        BigRat chi(0);
                        for (auto& c : coeffs) {
                            if (boost::multiprecision::denominator(c) != 1) ok = false;
                            chi += c;
                        }
                        if (ok) {
                            e.counting_poly = coeffs;
                            e.chi = static_cast<long long>(boost::multiprecision::numerator(chi));
                        }
                    }
                    auto want = want_vector(fpctx[0], e.v);
                    e.submodules = enumerate_exact(qctx, want);
                    e.catalog_complete = true;
                    for (auto& kv : e.counts)
                        if (kv.second != static_cast<long long>(e.submodules.size()))
                            e.catalog_complete = false;
                }
                entries[i] = std::move(e);
            }
        } catch (...) {
            std::lock_guard<std::mutex> g(emu);
            if (!eptr) eptr = std::current_exception();
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (eptr) std::rethrow_exception(eptr);

    SubmoduleCatalog cat;
    for (auto& e : entries)
        if (!e.counts.empty() && e.counts.begin()->second > 0) cat.entries.push_back(std::move(e));
    return cat;
}

std::vector<GradedDimVector> graded_support(const GradedModule& m, const GrassmannOptions& opt) {
    auto cat = build_catalog(m, opt);
    std::vector<GradedDimVector> out;
    for (auto& e : cat.entries) out.push_back(e.v);
    return out;
}

long long euler_char(const GradedModule& m, const GradedDimVector& v, const GrassmannOptions& opt) {
    for (auto& kv : m.dims)
        if (kv.second > opt.dim_bound)
            throw TooLarge("graded piece exceeds the configured dimension bound");
    std::vector<std::pair<int, long long>> pts;
    bool constant = true;
    for (int p : opt.primes) {
        long long c = count_points_fp(m, v, p);
        pts.emplace_back(p, c);
        if (c != pts[0].second) constant = false;
    }
    if (pts[0].second == 0) {
        for (auto& pc : pts)
            if (pc.second != 0)
                throw NoCountingPolynomial("empty over some primes but not others at v=" + v.str());
        return 0;
    }
    if (constant) return pts[0].second;
    auto coeffs = lagrange_through(pts);
    long bound = dim_bound_for(m, v);
    if (static_cast<long>(coeffs.size()) - 1 > bound)
        throw NoCountingPolynomial("interpolant degree exceeds the dimension bound at v=" + v.str());
    BigRat chi(0);
    for (auto& c : coeffs) {
        if (boost::multiprecision::denominator(c) != 1)
            throw NoCountingPolynomial("interpolant has non-integer coefficients at v=" + v.str());
        chi += c;
    }
    return static_cast<long long>(boost::multiprecision::numerator(chi));
}

}  // namespace qloop
