#pragma once

#include "qloop/cartan.hpp"
#include "qloop/linalg.hpp"

#include <string>

namespace qloop {

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& m) : std::runtime_error("CapExceeded: " + m) {}
};

/// Arrow of the unframed triple quiver: alpha_{ij} (kind 0, j -> i, degree
/// b_ij) or the loop eps_i (kind 1, degree 2 d_i).
struct ModArrow {
    int kind;  // 0 = alpha, 1 = eps
    int i, j;
    bool operator<(const ModArrow& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
    bool operator==(const ModArrow& o) const { return kind == o.kind && i == o.i && j == o.j; }
    static ModArrow alpha(int i, int j) { return {0, i, j}; }
    static ModArrow eps(int i) { return {1, i, i}; }
    int source(const CartanData&) const { return kind == 0 ? j : i; }
    int target(const CartanData&) const { return i; }
    int degree(const CartanData& cd) const { return kind == 0 ? cd.b(i, j) : 2 * cd.di(i); }
    std::string str() const;
};

/// Finite-dimensional graded module over the generalized preprojective
/// algebra, as explicit arrow-action matrices between graded pieces.
/// action(a)[piece (j,k)] maps piece (j,k) into piece (target, k + deg a).
struct GradedModule {
    CartanData cd;
    std::map<std::pair<int, int>, int> dims;
    std::map<ModArrow, std::map<std::pair<int, int>, QMatrix>> act;

    int dim(int i, int k) const;
    long total_dim() const;
    GradedDimVector dim_vector() const;
    /// Action matrix with the correct shape (zero if untouched pieces).
    QMatrix action(const ModArrow& a, int j, int k) const;
    std::vector<ModArrow> arrows() const;  // all arrows of the underlying quiver

    std::string dump() const;  // JSON listing of dims and matrices
};

/// The cyclic module Pi~ e_i / Pi~ eps_i^l, graded with generator in degree
/// (i, 0), built by breadth-first closure with exact row reduction.
GradedModule build_cyclic_quotient(int i, int l, const CartanData& cd, int cap = 64);

/// Dual with the tau twist (alpha_{ij} <-> alpha_{ji}, transposed actions,
/// degrees negated) followed by a degree shift: a piece in degree d lands in
/// degree -d - shift.
GradedModule dualize_shift(const GradedModule& m, int shift);

/// K_{i,k,l} = (Pi~ e_i / Pi~ eps_i^l)^dual [-k - l d_i].
GradedModule build_kirillov_module(int i, int k, int l, const CartanData& cd, int cap = 64);

/// Truncation of the shifted injective I_{i,k}: the dual of Pi~ e_i / Pi~
/// omega^depth placed so that its socle sits in degree (i, k + d_i), matching
/// the Kirillov-Reshetikhin limit K_{i,k-(l-1)d_i,l} as l grows.
GradedModule build_injective_trunc(int i, int k, int depth, const CartanData& cd, int cap = 64);

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

struct ModuleReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks grading compatibility and both Jacobian relation families.
ModuleReport verify_module(const GradedModule& m);

}  // namespace qloop
