#pragma once

#include "qloop/preproj.hpp"

#include <optional>

namespace qloop {

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& m) : std::runtime_error("TooLarge: " + m) {}
};
struct NoCountingPolynomial : std::runtime_error {
    explicit NoCountingPolynomial(const std::string& m)
        : std::runtime_error("NoCountingPolynomial: " + m) {}
};

struct GrassmannOptions {
    std::vector<int> primes{2, 3, 5, 7, 11};
    int dim_bound = 6;  // per graded piece
    int jobs = 1;
};

/// One explicit submodule over Q: a rational basis per graded piece.
struct Submodule {
    std::map<std::pair<int, int>, QMatrix> basis;  // rows span the subspace
};

struct CatalogEntry {
    GradedDimVector v;
    std::map<int, long long> counts;          // prime -> |Gr_v(M)(F_p)|
    std::vector<BigRat> counting_poly;        // coefficients, low to high, when consistent
    std::optional<long long> chi;             // counting_poly evaluated at 1
    std::vector<Submodule> submodules;        // explicit catalog over Q
    bool catalog_complete = false;            // |submodules| matches every F_p count
};

struct SubmoduleCatalog {
    std::vector<CatalogEntry> entries;  // graded-lex order in v
    const CatalogEntry* find(const GradedDimVector& v) const;
};

/// Number of graded submodules of dimension v over F_p, by exhaustive
/// enumeration of arrow-stable graded subspace families.
long long count_points_fp(const GradedModule& m, const GradedDimVector& v, int p);

/// Exhaustive catalog over all v with nonzero count for some prime.
/// The explicit Q-submodule lists are built from a finite candidate pool and
/// marked complete only when the F_p counts confirm them.
SubmoduleCatalog build_catalog(const GradedModule& m, const GrassmannOptions& opt = {});

/// The set { v : Gr_v(M) is nonempty }, in graded-lex order. Consistency of
/// the five prime counts is enforced (all zero or all positive).
std::vector<GradedDimVector> graded_support(const GradedModule& m, const GrassmannOptions& opt = {});

/// Euler characteristic via point-count interpolation: the unique polynomial
/// of degree <= #primes-1 through the counts, checked for integrality and for
/// the a-priori dimension bound, evaluated at 1.
long long euler_char(const GradedModule& m, const GradedDimVector& v, const GrassmannOptions& opt = {});

}  // namespace qloop
