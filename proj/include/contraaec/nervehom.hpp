#pragma once

// Truncated nerves, integer chain complexes, Smith normal form, and homology.
// All arithmetic over the integers is exact (boost cpp_int).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "contraaec/error.hpp"
#include "contraaec/fincat.hpp"

namespace contraaec {

using bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Truncated simplicial sets

// Nondegenerate simplices per dimension with face maps; a face entry of -1
// marks a degenerate face (it contributes nothing to the boundary).
struct TruncatedSSet {
  int max_dim = 0;
  std::vector<int> counts;                          // counts[d]
  std::vector<std::vector<std::vector<int>>> faces; // faces[d][i][j], d >= 1

  int dim_count(int d) const {
    return (d >= 0 && d < static_cast<int>(counts.size())) ? counts[d] : 0;
  }
};

namespace detail {
// d_j d_m = d_{m-1} d_j for j < m, wherever both routes are nondegenerate.
inline void check_simplicial_identities(const TruncatedSSet& X) {
  for (int d = 2; d <= X.max_dim; ++d)
    for (int i = 0; i < X.dim_count(d); ++i)
      for (int m = 1; m <= d; ++m)
        for (int j = 0; j < m; ++j) {
          int fm = X.faces[d][i][m];
          int fj = X.faces[d][i][j];
          int lhs = fm >= 0 ? X.faces[d - 1][fm][j] : -2;
          int rhs = fj >= 0 ? X.faces[d - 1][fj][m - 1] : -2;
          if (lhs >= 0 && rhs >= 0 && lhs != rhs)
            throw error(errc::dangling_reference, "simplicial identity d_j d_m failed");
        }
}
}  // namespace detail

// Normalized nerve: nondegenerate d-simplices are composable chains of
// nonidentity morphisms. Inner faces whose composite is an identity are
// marked degenerate.
inline TruncatedSSet nerve(const FinCat& C, int max_dim) {
  TruncatedSSet X;
  X.max_dim = max_dim;
  X.counts.assign(max_dim + 1, 0);
  X.faces.assign(max_dim + 1, {});

  X.counts[0] = C.num_objects();
  std::vector<std::vector<MorId>> prev;  // chains of the previous dimension
  std::map<std::vector<MorId>, int> prev_ix;
  if (max_dim >= 1) {
    std::vector<std::vector<MorId>> cur;
    for (MorId m = 0; m < C.num_morphisms(); ++m)
      if (!C.is_identity(m)) cur.push_back({m});
    X.counts[1] = static_cast<int>(cur.size());
    X.faces[1].resize(cur.size());
    for (size_t i = 0; i < cur.size(); ++i)
      X.faces[1][i] = {C.cod(cur[i][0]), C.dom(cur[i][0])};  // d_0 drops the source vertex
    prev = cur;
  }
  for (int d = 2; d <= max_dim; ++d) {
    prev_ix.clear();
    for (size_t i = 0; i < prev.size(); ++i) prev_ix[prev[i]] = static_cast<int>(i);
    std::vector<std::vector<MorId>> cur;
    for (const auto& ch : prev)
      for (MorId m = 0; m < C.num_morphisms(); ++m) {
        if (C.is_identity(m)) continue;
        if (C.dom(m) != C.cod(ch.back())) continue;
        auto ext = ch;
        ext.push_back(m);
        cur.push_back(std::move(ext));
      }
    std::sort(cur.begin(), cur.end());
    X.counts[d] = static_cast<int>(cur.size());
    X.faces[d].resize(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      const auto& ch = cur[i];
      std::vector<int> fs(d + 1, -1);
      {  // d_0 drops the first morphism, d_d the last
        std::vector<MorId> a(ch.begin() + 1, ch.end());
        fs[0] = prev_ix.at(a);
        std::vector<MorId> b(ch.begin(), ch.end() - 1);
        fs[d] = prev_ix.at(b);
      }
      for (int j = 1; j < d; ++j) {
        MorId comp = C.compose2(ch[j], ch[j - 1]);
        if (C.is_identity(comp)) continue;  // degenerate face
        std::vector<MorId> a;
        for (int t = 0; t < d; ++t) {
          if (t == j - 1) {
            a.push_back(comp);
            ++t;  // skip ch[j]
          } else {
            a.push_back(ch[t]);
          }
        }
        fs[j] = prev_ix.at(a);
      }
      X.faces[d][i] = std::move(fs);
    }
    prev = std::move(cur);
  }
  if (max_dim <= 4) detail::check_simplicial_identities(X);
  return X;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<bigint> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  bigint& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const bigint& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

struct SmithResult {
  int rank = 0;
  std::vector<bigint> factors;  // nonzero invariant factors, d_1 | d_2 | ...
};

// Diagonalization by unimodular row/column operations. Pivot choice: smallest
// absolute value, row-then-column order on ties.
inline SmithResult smith_normal_form(IntMat M) {
  using boost::multiprecision::abs;
  using boost::multiprecision::gcd;
  int t = 0;
  const int n = std::min(M.rows, M.cols);
  while (t < n) {
    // pick pivot
    int pi = -1, pj = -1;
    bigint best = 0;
    for (int i = t; i < M.rows; ++i)
      for (int j = t; j < M.cols; ++j) {
        const bigint& v = M.at(i, j);
        if (v == 0) continue;
        if (pi < 0 || abs(v) < best) {
          pi = i;
          pj = j;
          best = abs(v);
        }
      }
    if (pi < 0) break;  // all remaining entries zero
    if (pi != t)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(t, j), M.at(pi, j));
    if (pj != t)
      for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, t), M.at(i, pj));

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < M.rows; ++i) {
        if (M.at(i, t) == 0) continue;
        bigint q = M.at(i, t) / M.at(t, t);
        for (int j = t; j < M.cols; ++j) M.at(i, j) -= q * M.at(t, j);
        if (M.at(i, t) != 0) {
          for (int j = 0; j < M.cols; ++j) std::swap(M.at(t, j), M.at(i, j));
          clean = false;
        }
      }
      for (int j = t + 1; j < M.cols; ++j) {
        if (M.at(t, j) == 0) continue;
        bigint q = M.at(t, j) / M.at(t, t);
        for (int i = t; i < M.rows; ++i) M.at(i, j) -= q * M.at(i, t);
        if (M.at(t, j) != 0) {
          for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, t), M.at(i, j));
          clean = false;
        }
      }
    }
    ++t;
  }
  // enforce divisibility d_i | d_{i+1}
  std::vector<bigint> d;
  for (int i = 0; i < t; ++i) d.push_back(abs(M.at(i, i)));
  for (size_t i = 0; i + 1 < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j)
      if (d[j] % d[i] != 0) {
        bigint g = gcd(d[i], d[j]);
        bigint l = d[i] / g * d[j];
        d[i] = g;
        d[j] = l;
      }
  std::sort(d.begin(), d.end());
  return {t, std::move(d)};
}

// ---------------------------------------------------------------------------
// Chain complexes and homology

struct ChainComplex {
  int max_dim = 0;
  std::vector<int> ranks;        // chain group ranks, 0..max_dim
  std::vector<IntMat> boundary;  // boundary[d]: C_d -> C_{d-1}, d >= 1
};

// Normalized chain complex of a truncated simplicial set; asserts dd = 0.
inline ChainComplex chain_complex(const TruncatedSSet& X) {
  ChainComplex C;
  C.max_dim = X.max_dim;
  C.ranks.resize(X.max_dim + 1);
  for (int d = 0; d <= X.max_dim; ++d) C.ranks[d] = X.dim_count(d);
  C.boundary.resize(X.max_dim + 1);
  for (int d = 1; d <= X.max_dim; ++d) {
    IntMat B(C.ranks[d - 1], C.ranks[d]);
    for (int i = 0; i < C.ranks[d]; ++i)
      for (int j = 0; j <= d; ++j) {
        int f = X.faces[d][i][j];
        if (f >= 0) B.at(f, i) += (j % 2 == 0) ? 1 : -1;
      }
    C.boundary[d] = std::move(B);
  }
  for (int d = 1; d + 1 <= X.max_dim; ++d) {
    const IntMat& A = C.boundary[d];
    const IntMat& B = C.boundary[d + 1];
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < B.cols; ++j) {
        bigint s = 0;
        for (int k = 0; k < A.cols; ++k) s += A.at(i, k) * B.at(k, j);
        if (s != 0) throw error(errc::dangling_reference, "dd != 0 in chain complex");
      }
  }
  return C;
}

struct HomologyGroup {
  int betti = 0;
  std::vector<bigint> torsion;  // invariant factors >= 2, successive divisibility

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool is_Z() const { return betti == 1 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return betti == o.betti && torsion == o.torsion;
  }
};

inline std::string format_homology(const HomologyGroup& h) {
  if (h.is_zero()) return "0";
  std::string out;
  if (h.betti > 0) out = "Z^" + std::to_string(h.betti);
  for (const auto& t : h.torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + t.str();
  }
  return out;
}

// H_d = ker d_d / im d_{d+1} for d = 0..d_max, as betti number plus invariant
// factors. Needs chains one dimension above d_max.
inline std::vector<HomologyGroup> homology(const TruncatedSSet& X, int d_max) {
  if (d_max + 1 > X.max_dim)
    throw error(errc::truncation_too_shallow,
                "homology up to degree " + std::to_string(d_max) + " needs simplices in dimension " +
                    std::to_string(d_max + 1));
  ChainComplex C = chain_complex(X);
  std::vector<SmithResult> snf(X.max_dim + 1);
  for (int d = 1; d <= d_max + 1; ++d) snf[d] = smith_normal_form(C.boundary[d]);
  std::vector<HomologyGroup> H(d_max + 1);
  for (int d = 0; d <= d_max; ++d) {
    int r_d = (d >= 1) ? snf[d].rank : 0;
    int r_up = snf[d + 1].rank;
    HomologyGroup h;
    h.betti = C.ranks[d] - r_d - r_up;
    for (const auto& f : snf[d + 1].factors)
      if (f >= 2) h.torsion.push_back(f);
    H[d] = std::move(h);
  }
  return H;
}

// Necessary-condition proxy for weak contractibility: reduced homology
// vanishes in degrees 0..D (H_0 = Z and H_d = 0 for 1 <= d <= D). This is
// necessary, not sufficient.
inline bool is_acyclic_up_to(const FinCat& C, int D) {
  TruncatedSSet X = nerve(C, D + 1);
  auto H = homology(X, D);
  if (!H[0].is_Z()) return false;
  for (int d = 1; d <= D; ++d)
    if (!H[d].is_zero()) return false;
  return true;
}

/// Exact weak-contractibility decision when the nerve is 1-dimensional: the
// underlying graph must be a tree.
inline bool one_dim_contractibility(const FinCat& C) {
  TruncatedSSet X = nerve(C, 2);
  if (X.dim_count(2) > 0)
    throw error(errc::not_one_dimensional, "nerve has nondegenerate 2-simplices");
  int nv = X.dim_count(0), ne = X.dim_count(1);
  if (nv == 0) return false;
  if (ne != nv - 1) return false;
  // connectivity
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < ne; ++e) {
    int a = find(X.faces[1][e][0]), b = find(X.faces[1][e][1]);
    if (a != b) parent[a] = b;
  }
  int root = find(0);
  for (int i = 1; i < nv; ++i)
    if (find(i) != root) return false;
  return true;
}

inline long long euler_characteristic(const TruncatedSSet& X) {
  long long chi = 0;
  for (int d = 0; d <= X.max_dim; ++d) chi += (d % 2 == 0 ? 1 : -1) * X.dim_count(d);
  return chi;
}

}  // namespace contraaec
