#pragma once

#include "qloop/cartan.hpp"
#include "qloop/scalars.hpp"

#include <mutex>

namespace qloop {

struct PoleCollision : std::runtime_error {
    explicit PoleCollision(const std::string& m) : std::runtime_error("PoleCollision: " + m) {}
};

/// Rank-one framing data: w framing lines with formal equivariant parameters
/// chi_1..chi_w, quantum parameter q_i = q^d, in the shifted or unshifted
/// convention.
struct FramingData {
    int w;
    int d = 1;
    bool shifted = true;
    int qv, uv;
    std::vector<int> chiv;

    explicit FramingData(int w_, int d_ = 1, bool shifted_ = true);
    Monomial qpow(int e) const { return Monomial::var(qv, d * e); }
    Monomial chi(int s) const { return Monomial::var(chiv[static_cast<size_t>(s)]); }
};

using FpTuple = std::vector<int>;

/// All tuples in N^w of weight v, lexicographically sorted.
std::vector<FpTuple> fp_basis(int w, int v);

/// Character multiset V_lambda = { chi_s q^{d(1-2r)} : 0 <= r < lambda_s }.
VirtualCharacter taut_class(const FpTuple& lam, const FramingData& f);

/// Operator between weight blocks; dense matrix of rational functions,
/// rows indexed by the target basis, columns by the source basis.
struct FpOperator {
    int v_src = 0, v_tgt = 0;
    int rows = 0, cols = 0;
    std::vector<RatFunc> a;

    FpOperator() = default;
    FpOperator(int vs, int vt, int r, int c)
        : v_src(vs), v_tgt(vt), rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    RatFunc& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const RatFunc& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    bool is_zero() const;
    FpOperator operator+(const FpOperator& o) const;
    FpOperator operator-(const FpOperator& o) const;
    FpOperator scaled(const RatFunc& s) const;
    bool operator==(const FpOperator& o) const;
    /// this o other (apply other first).
    FpOperator compose(const FpOperator& o) const;
    static FpOperator zero_like(int v_src, int v_tgt, int rows, int cols) {
        return FpOperator(v_src, v_tgt, rows, cols);
    }
};

/// The type-A1 fixed-point representation: basis of framing tuples, exact
/// sparse operators, memoized per weight block. Thread-safe.
class FockRep {
public:
    explicit FockRep(FramingData f) : f_(std::move(f)) {}
    const FramingData& framing() const { return f_; }

    const std::vector<FpTuple>& basis(int v) const;

    /// A^-_n : block v+1 -> block v.
    FpOperator a_minus(int n, int v) const;
    /// A^+_m : block v -> block v+1.
    FpOperator a_plus(int m, int v) const;
    /// Current operators with the convention twists.
    FpOperator x_minus(int n, int v) const;
    FpOperator x_plus(int n, int v) const;

    /// Closed rational form of psi_lambda(u) (shifted convention).
    RatFunc psi_rational(const FpTuple& lam) const;
    /// Expansion of the lambda-entry of the psi series in either direction.
    /// In the unshifted convention this is produced from the H-class series.
    LSeries psi_entry(const FpTuple& lam, Dir dir, int order) const;
    /// Diagonal operator of the u^{-k} coefficient of psi^+ / psi^-.
    FpOperator psi_plus_mode(int v, int k, int order_hint) const;
    FpOperator psi_minus_mode(int v, int k, int order_hint) const;
    /// h_{m} diagonal entry (m != 0), extracted from log psi per the series
    /// normalization of the integral form.
    RatFunc h_entry(const FpTuple& lam, int m, int order_hint) const;

private:
    FramingData f_;
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<FpTuple>> basis_;
    mutable std::map<std::pair<int, int>, FpOperator> aplus_, aminus_;
    // per (dir, v): expansion order and per-basis-element series
    mutable std::map<std::pair<int, int>, std::pair<int, std::vector<LSeries>>> psi_cache_;
    mutable std::map<std::pair<int, int>, std::pair<int, std::vector<LSeries>>> h_cache_;

    const LSeries& psi_block(int v, int idx, Dir dir, int order) const;
    const LSeries& h_block(int v, int idx, Dir dir, int order) const;
};

struct RelationCheckReport {
    bool ok = true;
    std::vector<std::string> lines;  // "relation<TAB>context<TAB>pass|fail[<TAB>detail]"
    void add(const std::string& rel, const std::string& ctx, bool pass, const std::string& detail = "");
};

/// Exact verification of (A.3), (A.4a), (A.4b), (A.5) in denominator-cleared
/// mode form, (A.6) mode-by-mode; the unshifted convention additionally
/// checks psi^+_0 psi^-_0 = 1, the shifted one the psi^- degree bound.
RelationCheckReport check_relations(const FramingData& f, int v_max, int mode_bound, int jobs = 1);

/// Thm on the central element: psi^+_0 psi^-_{-w} = (-1)^w q_i^{-w} prod chi_s^{-1}
/// on every weight block (shifted convention).
RelationCheckReport central_element(const FramingData& f, int v_max);

}  // namespace qloop
