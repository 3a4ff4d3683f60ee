#include "qloop/preproj.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace qloop {

std::string ModArrow::str() const {
    std::ostringstream os;
    if (kind == 0)
        os << "alpha[" << i + 1 << "," << j + 1 << "]";
    else
        os << "eps[" << i + 1 << "]";
    return os.str();
}

int GradedModule::dim(int i, int k) const {
    auto it = dims.find({i, k});
    return it == dims.end() ? 0 : it->second;
}

long GradedModule::total_dim() const {
    long s = 0;
    for (auto& kv : dims) s += kv.second;
    return s;
}

GradedDimVector GradedModule::dim_vector() const {
    GradedDimVector v;
    for (auto& kv : dims) v.add(kv.first.first, kv.first.second, kv.second);
    return v;
}

QMatrix GradedModule::action(const ModArrow& a, int j, int k) const {
    int tgt = a.target(cd);
    int kt = k + a.degree(cd);
    auto it = act.find(a);
    if (it != act.end()) {
        auto jt = it->second.find({j, k});
        if (jt != it->second.end()) return jt->second;
    }
    return QMatrix(dim(tgt, kt), dim(j, k));
}

std::vector<ModArrow> GradedModule::arrows() const {
    std::vector<ModArrow> r;
    for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j)
            if (i != j && cd.cij(i, j) < 0) r.push_back(ModArrow::alpha(i, j));
    for (int i = 0; i < cd.n; ++i) r.push_back(ModArrow::eps(i));
    return r;
}

std::string GradedModule::dump() const {
    std::ostringstream os;
    os << "{\n  \"dims\": {";
    bool first = true;
    for (auto& kv : dims) {
        if (!first) os << ", ";
        first = false;
        os << "\"(" << kv.first.first + 1 << "," << kv.first.second << ")\": " << kv.second;
    }
    os << "},\n  \"actions\": {\n";
    bool fa = true;
    for (auto& akv : act) {
        for (auto& pkv : akv.second) {
            if (pkv.second.is_zero()) continue;
            if (!fa) os << ",\n";
            fa = false;
            os << "    \"" << akv.first.str() << " @ (" << pkv.first.first + 1 << "," << pkv.first.second
               << ")\": [";
            const QMatrix& m = pkv.second;
            for (int r = 0; r < m.rows; ++r) {
                os << (r ? ", [" : "[");
                for (int c = 0; c < m.cols; ++c) {
                    if (c) os << ", ";
                    os << "\"" << m.at(r, c) << "\"";
                }
                os << "]";
            }
            os << "]";
        }
    }
    os << "\n  }\n}";
    return os.str();
}

// ---------------------------------------------------------------------------
// closure construction
// ---------------------------------------------------------------------------

namespace {

using SparseVec = std::map<int, BigRat>;

struct RelWord {
    BigRat coef;
    std::vector<ModArrow> word;  // applied left to right (word[0] acts first)
};

struct Relation {
    int source;  // vertex where the relation starts
    std::vector<RelWord> words;
    bool only_generator = false;  // annihilator seed: applies to e_i only
};

/// Jacobian relations of the potential w_2 plus the annihilator of the left
/// ideal defining the quotient.
std::vector<Relation> jacobian_relations(const CartanData& cd) {
    std::vector<Relation> rels;
    // d/d alpha relations: eps_i^{-c_ij} alpha_{ij} = alpha_{ij} eps_j^{-c_ji}
    for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j) {
            if (i == j || cd.cij(i, j) >= 0) continue;
            Relation r;
            r.source = j;
            RelWord w1;
            w1.coef = 1;
            w1.word.push_back(ModArrow::alpha(i, j));
            for (int s = 0; s < -cd.cij(i, j); ++s) w1.word.push_back(ModArrow::eps(i));
            RelWord w2;
            w2.coef = -1;
            for (int s = 0; s < -cd.cij(j, i); ++s) w2.word.push_back(ModArrow::eps(j));
            w2.word.push_back(ModArrow::alpha(i, j));
            r.words = {w1, w2};
            rels.push_back(std::move(r));
        }
    // d/d eps relations at each vertex i:
    //   sum_j sum_{r=0}^{-c_ij-1} o_ij eps_i^r alpha_{ij} alpha_{ji} eps_i^{-c_ij-1-r} = 0
    for (int i = 0; i < cd.n; ++i) {
        Relation r;
        r.source = i;
        for (int j : cd.neighbors(i)) {
            int m = -cd.cij(i, j);
            for (int s = 0; s < m; ++s) {
                RelWord w;
                w.coef = cd.oij(i, j);
                for (int a = 0; a < m - 1 - s; ++a) w.word.push_back(ModArrow::eps(i));
                w.word.push_back(ModArrow::alpha(j, i));
                w.word.push_back(ModArrow::alpha(i, j));
                for (int a = 0; a < s; ++a) w.word.push_back(ModArrow::eps(i));
                r.words.push_back(std::move(w));
            }
        }
        if (!r.words.empty()) rels.push_back(std::move(r));
    }
    return rels;
}

struct Closure {
    const CartanData& cd;
    std::vector<Relation> rels;

    struct Elem {
        int vertex;
        int deg;
        bool reducible = false;
        SparseVec value;               // valid when reducible
        std::map<ModArrow, int> kids;  // existing extension columns
        std::vector<ModArrow> path;    // representative path (debug / determinism)
    };
    std::vector<Elem> elems;
    bool changed = false;

    explicit Closure(const CartanData& c) : cd(c) {}

    int add_elem(int vertex, int deg, std::vector<ModArrow> path) {
        elems.push_back({vertex, deg, false, {}, {}, std::move(path)});
        changed = true;
        return static_cast<int>(elems.size()) - 1;
    }

    void normalize(SparseVec& v) {
        bool again = true;
        while (again) {
            again = false;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!elems[static_cast<size_t>(it->first)].reducible) continue;
                BigRat c = it->second;
                SparseVec val = elems[static_cast<size_t>(it->first)].value;
                v.erase(it);
                for (auto& kv : val) {
                    auto jt = v.find(kv.first);
                    if (jt == v.end())
                        v.emplace(kv.first, c * kv.second);
                    else {
                        jt->second += c * kv.second;
                        if (jt->second == 0) v.erase(jt);
                    }
                }
                again = true;
                break;
            }
        }
    }

    /// nullopt when some needed extension column does not exist yet.
    std::optional<SparseVec> apply_arrow(const ModArrow& a, const SparseVec& vin) {
        SparseVec v = vin;
        normalize(v);
        SparseVec out;
        for (auto& kv : v) {
            Elem& e = elems[static_cast<size_t>(kv.first)];
            if (e.vertex != a.source(cd)) throw std::runtime_error("closure: arrow applied at wrong vertex");
            auto it = e.kids.find(a);
            if (it == e.kids.end()) return std::nullopt;
            out[it->second] += kv.second;
        }
        normalize(out);
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
        return out;
    }

    std::optional<SparseVec> eval_word(const std::vector<ModArrow>& w, int start_elem) {
        SparseVec v{{start_elem, BigRat(1)}};
        for (auto& a : w) {
            auto r = apply_arrow(a, v);
            if (!r) return std::nullopt;
            v = std::move(*r);
        }
        return v;
    }

};

}  // namespace

namespace {

/// Full closure: returns the module once stable.
GradedModule run_closure(int gen_vertex, std::vector<Relation> rels, const CartanData& cd, int cap) {
    Closure cl(cd);
    cl.rels = std::move(rels);
    cl.add_elem(gen_vertex, 0, {});

    std::vector<ModArrow> arrows;
    for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j)
            if (i != j && cd.cij(i, j) < 0) arrows.push_back(ModArrow::alpha(i, j));
    for (int i = 0; i < cd.n; ++i) arrows.push_back(ModArrow::eps(i));

    // pending pivot identities: child_elem == arrow(value_of_pivot)
    struct Pending {
        ModArrow a;
        int child;
        SparseVec parent_value;
    };
    std::vector<Pending> pending;

    int stable_rounds = 0;
    for (int round = 0; round < cap; ++round) {
        cl.changed = false;

        // 1. extend every irreducible element by every composable arrow
        size_t count = cl.elems.size();
        for (size_t id = 0; id < count; ++id) {
            if (cl.elems[id].reducible) continue;
            for (auto& a : arrows) {
                if (a.source(cd) != cl.elems[id].vertex) continue;
                if (cl.elems[id].kids.count(a)) continue;
                auto path = cl.elems[id].path;
                path.push_back(a);
                int nid = cl.add_elem(a.target(cd), cl.elems[id].deg + a.degree(cd), std::move(path));
                cl.elems[id].kids.emplace(a, nid);
            }
        }

        // 2. impose all relations on all irreducible elements where evaluable
        auto impose_vec = [&](SparseVec v) {
            cl.normalize(v);
            for (auto it = v.begin(); it != v.end();)
                it = it->second == 0 ? v.erase(it) : std::next(it);
            if (v.empty()) return;
            auto pit = std::prev(v.end());
            int pivot = pit->first;
            BigRat pc = pit->second;
            v.erase(pit);
            SparseVec value;
            for (auto& kv : v) value.emplace(kv.first, -kv.second / pc);
            Closure::Elem& e = cl.elems[static_cast<size_t>(pivot)];
            if (e.reducible) throw std::runtime_error("closure: pivot already reduced");
            e.reducible = true;
            e.value = value;
            cl.changed = true;
            for (auto& kid : e.kids) pending.push_back({kid.first, kid.second, value});
        };

        for (auto& rel : cl.rels) {
            size_t upto = cl.elems.size();
            for (size_t id = 0; id < upto; ++id) {
                if (cl.elems[id].reducible) continue;
                if (cl.elems[id].vertex != rel.source) continue;
                if (rel.only_generator && id != 0) continue;
                SparseVec total;
                bool ok = true;
                for (auto& w : rel.words) {
                    auto r = cl.eval_word(w.word, static_cast<int>(id));
                    if (!r) {
                        ok = false;
                        break;
                    }
                    for (auto& kv : *r) total[kv.first] += w.coef * kv.second;
                }
                if (!ok) continue;  // retried next round once extensions exist
                impose_vec(std::move(total));
            }
        }

        // 3. process pending pivot identities
        std::vector<Pending> defer;
        for (auto& pd : pending) {
            auto rhs = cl.apply_arrow(pd.a, pd.parent_value);
            if (!rhs) {
                defer.push_back(pd);
                continue;
            }
            SparseVec v = *rhs;
            v[pd.child] -= 1;
            impose_vec(std::move(v));
        }
        pending = std::move(defer);

        if (!cl.changed && pending.empty()) {
            if (++stable_rounds >= 1) break;
        } else {
            stable_rounds = 0;
        }
        if (round == cap - 1) throw CapExceeded("closure did not stabilize within the round cap");
    }

    // assemble the module over the irreducible basis
    GradedModule m;
    m.cd = cd;
    std::map<int, std::pair<std::pair<int, int>, int>> where;  // elem -> (piece, local index)
    for (size_t id = 0; id < cl.elems.size(); ++id) {
        if (cl.elems[id].reducible) continue;
        auto piece = std::make_pair(cl.elems[id].vertex, cl.elems[id].deg);
        int idx = m.dims[piece]++;
        where[static_cast<int>(id)] = {piece, idx};
    }
    for (auto& kv : where) {
        int id = kv.first;
        auto piece = kv.second.first;
        int col = kv.second.second;
        for (auto& kid : cl.elems[static_cast<size_t>(id)].kids) {
            const ModArrow& a = kid.first;
            SparseVec v{{kid.second, BigRat(1)}};
            cl.normalize(v);
            auto tpiece = std::make_pair(a.target(cd), piece.second + a.degree(cd));
            QMatrix& mat = m.act[a]
                               .try_emplace(piece, QMatrix(m.dims.count(tpiece) ? m.dims[tpiece] : 0,
                                                           m.dims[piece]))
                               .first->second;
            for (auto& ent : v) {
                auto wt = where.at(ent.first);
                if (wt.first != tpiece) throw std::runtime_error("closure: grading violated in assembly");
                mat.at(wt.second, col) = ent.second;
            }
        }
    }
    // drop zero pieces the map above may have created
    for (auto it = m.dims.begin(); it != m.dims.end();)
        it = it->second == 0 ? m.dims.erase(it) : std::next(it);
    return m;
}

}  // namespace

GradedModule build_cyclic_quotient(int i, int l, const CartanData& cd, int cap) {
    if (i < 0 || i >= cd.n) throw std::runtime_error("build_cyclic_quotient: bad vertex");
    if (l < 1) throw std::runtime_error("build_cyclic_quotient: l must be >= 1");
    auto rels = jacobian_relations(cd);
    Relation ann;
    ann.source = i;
    ann.only_generator = true;
    RelWord w;
    w.coef = 1;
    for (int s = 0; s < l; ++s) w.word.push_back(ModArrow::eps(i));
    ann.words.push_back(std::move(w));
    rels.push_back(std::move(ann));
    return run_closure(i, std::move(rels), cd, cap);
}

GradedModule dualize_shift(const GradedModule& m, int shift) {
    GradedModule r;
    r.cd = m.cd;
    auto newdeg = [&](int d) { return -d - shift; };
    for (auto& kv : m.dims) r.dims[{kv.first.first, newdeg(kv.first.second)}] = kv.second;
    for (auto& a : m.arrows()) {
        // new action of a = transpose of the tau-image of a on m
        ModArrow ta = a.kind == 0 ? ModArrow::alpha(a.j, a.i) : a;
        int sv = a.source(r.cd);
        int deg = a.degree(r.cd);
        for (auto& kv : r.dims) {
            if (kv.first.first != sv) continue;
            int k = kv.first.second;
            auto tpiece = std::make_pair(a.target(r.cd), k + deg);
            if (!r.dims.count(tpiece)) continue;
            // old source piece of ta whose image under ta lands where we came from
            int old_src_deg = -(k + deg) - shift;
            QMatrix old_mat = m.action(ta, ta.source(m.cd), old_src_deg);
            if (old_mat.rows == 0 || old_mat.cols == 0) continue;
            QMatrix t = old_mat.transpose();
            if (!t.is_zero()) r.act[a][kv.first] = t;
        }
    }
    return r;
}

GradedModule build_kirillov_module(int i, int k, int l, const CartanData& cd, int cap) {
    return dualize_shift(build_cyclic_quotient(i, l, cd, cap), -k - l * cd.di(i));
}

GradedModule build_injective_trunc(int i, int k, int depth, const CartanData& cd, int cap) {
    if (depth < 1) throw std::runtime_error("build_injective_trunc: depth must be >= 1");
    if (cd.t % cd.di(i) != 0)
        throw std::runtime_error("build_injective_trunc: t_i is not an integer for this symmetrizer");
    int ti = cd.t / cd.di(i);
    return dualize_shift(build_cyclic_quotient(i, ti * depth, cd, cap), -k - cd.di(i));
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
    GradedModule r;
    r.cd = a.cd;
    std::map<std::pair<int, int>, int> offs;  // offset of b's block per piece
    for (auto& kv : a.dims) r.dims[kv.first] += kv.second;
    for (auto& kv : b.dims) {
        offs[kv.first] = r.dims.count(kv.first) ? r.dims[kv.first] : 0;
        r.dims[kv.first] += kv.second;
    }
    for (auto& arr : r.arrows()) {
        int sv = arr.source(r.cd);
        int deg = arr.degree(r.cd);
        for (auto& kv : r.dims) {
            if (kv.first.first != sv) continue;
            int k = kv.first.second;
            auto tpiece = std::make_pair(arr.target(r.cd), k + deg);
            auto it = r.dims.find(tpiece);
            if (it == r.dims.end()) continue;
            QMatrix ma = a.action(arr, sv, k);
            QMatrix mb = b.action(arr, sv, k);
            if (ma.is_zero() && mb.is_zero()) continue;
            QMatrix mm(it->second, kv.second);
            for (int rr = 0; rr < ma.rows; ++rr)
                for (int cc = 0; cc < ma.cols; ++cc) mm.at(rr, cc) = ma.at(rr, cc);
            int ro = offs.count(tpiece) ? offs[tpiece] : (it->second - mb.rows);
            int co = offs.count(kv.first) ? offs[kv.first] : (kv.second - mb.cols);
            for (int rr = 0; rr < mb.rows; ++rr)
                for (int cc = 0; cc < mb.cols; ++cc) mm.at(ro + rr, co + cc) = mb.at(rr, cc);
            r.act[arr][kv.first] = mm;
        }
    }
    return r;
}

ModuleReport verify_module(const GradedModule& m) {
    ModuleReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    // grading: every stored matrix has the shape dictated by the degrees
    for (auto& akv : m.act) {
        const ModArrow& a = akv.first;
        for (auto& pkv : akv.second) {
            int j = pkv.first.first, k = pkv.first.second;
            if (j != a.source(m.cd)) fail(a.str() + ": stored at wrong source vertex");
            int tj = a.target(m.cd), tk = k + a.degree(m.cd);
            if (pkv.second.cols != m.dim(j, k) || pkv.second.rows != m.dim(tj, tk))
                fail(a.str() + " at (" + std::to_string(j + 1) + "," + std::to_string(k) +
                     "): matrix shape violates the grading");
        }
    }
    if (!rep.ok) return rep;
    // relations
    auto rels = jacobian_relations(m.cd);
    for (auto& rel : rels) {
        for (auto& pc : m.dims) {
            if (pc.first.first != rel.source) continue;
            int k0 = pc.first.second;
            QMatrix sum;
            bool started = false;
            for (auto& w : rel.words) {
                int k = k0, v = rel.source;
                QMatrix prod = QMatrix::identity(m.dim(v, k));
                for (auto& a : w.word) {
                    prod = m.action(a, v, k) * prod;
                    k += a.degree(m.cd);
                    v = a.target(m.cd);
                }
                QMatrix term = prod * BigRat(w.coef);
                if (!started) {
                    sum = term;
                    started = true;
                } else {
                    sum = sum + term;
                }
            }
            if (started && !sum.is_zero()) {
                std::ostringstream os;
                os << "relation at vertex " << rel.source + 1 << " fails on piece ("
                   << pc.first.first + 1 << "," << k0 << ")";
                fail(os.str());
            }
        }
    }
    // eps nilpotency (automatic for graded modules with finite support, but
    // asserted so a malformed module cannot slip through)
    for (int i = 0; i < m.cd.n; ++i) {
        for (auto& pc : m.dims) {
            if (pc.first.first != i) continue;
            int k = pc.first.second, steps = 0;
            while (m.dim(i, k) > 0 && steps <= static_cast<int>(m.total_dim())) {
                k += 2 * m.cd.di(i);
                ++steps;
            }
            if (m.dim(i, k) > 0) fail("eps chain does not terminate at vertex " + std::to_string(i + 1));
        }
    }
    return rep;
}

}  // namespace qloop
