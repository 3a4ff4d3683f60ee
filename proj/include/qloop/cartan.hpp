#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qloop {

struct CartanError : std::runtime_error {
    explicit CartanError(const std::string& m) : std::runtime_error(m) {}
};
struct NotCartan : CartanError {
    explicit NotCartan(const std::string& m) : CartanError("NotCartan: " + m) {}
};
struct NotSymmetrizable : CartanError {
    explicit NotSymmetrizable(const std::string& m) : CartanError("NotSymmetrizable: " + m) {}
};
struct BadOrientation : CartanError {
    explicit BadOrientation(const std::string& m) : CartanError("BadOrientation: " + m) {}
};

/// Cartan matrix with symmetrizer and orientation. Vertices are 0-based here;
/// all external formats use 1-based labels. Immutable after construction.
struct CartanData {
    int n = 0;
    std::vector<std::vector<int>> c;  // Cartan matrix
    std::vector<int> d;               // symmetrizer
    int t = 1;                        // lacing number
    std::vector<std::vector<int>> o;  // orientation signs, antisymmetric

    int b(int i, int j) const { return d[static_cast<size_t>(i)] * c[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int cij(int i, int j) const { return c[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int di(int i) const { return d[static_cast<size_t>(i)]; }
    int oij(int i, int j) const { return o[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    std::vector<int> neighbors(int i) const;
};

/// Validates the full invariant set and computes the lacing number.
CartanData validate_cartan(const std::vector<std::vector<int>>& c, const std::vector<int>& d,
                           const std::vector<std::pair<int, int>>& orientation);

/// Named presets: A1, A2, ..., Bn (n>=2), Cn (n>=2), Dn (n>=4), G2.
/// Default orientation: (i,j) in O for every edge with i<j.
CartanData cartan_preset(const std::string& name);

/// Graded dimension vector (i,k) -> multiplicity, sparse with finite support.
/// The signed variant simply allows negative entries.
struct GradedDimVector {
    std::map<std::pair<int, int>, long> m;

    static GradedDimVector delta(int i, int k, long v = 1);
    long at(int i, int k) const;
    void add(int i, int k, long v);
    GradedDimVector operator+(const GradedDimVector& o) const;
    GradedDimVector operator-(const GradedDimVector& o) const;
    bool operator==(const GradedDimVector& o) const { return m == o.m; }
    bool operator!=(const GradedDimVector& o) const { return m != o.m; }
    bool operator<(const GradedDimVector& o) const;  // graded-lex (by |v|, then entries)
    bool is_zero() const { return m.empty(); }
    long total() const;
    std::string str() const;  // canonical rendering, 1-based vertices
};

/// w - c v on the graded grid: entry (i,k) receives
///   w_{i,k} - v_{i,k+d_i} - v_{i,k-d_i} + sum over neighbors j per c_{ji}.
GradedDimVector weight_shift(const GradedDimVector& w, const GradedDimVector& v, const CartanData& cd);

/// Arrow of the (optionally framed) triple quiver, with its degree.
struct GradedQuiver {
    enum class Kind { Alpha, Eps, Fr, FrStar };
    struct Arrow {
        Kind kind;
        int i, j;  // Alpha: alpha_{ij} is j -> i; others use i only
        int src, tgt;
        int deg;
        std::string name;
    };
    bool framed = false;
    std::vector<Arrow> arrows;
};

GradedQuiver build_triple_quiver(const CartanData& cd, bool framed);

}  // namespace qloop
