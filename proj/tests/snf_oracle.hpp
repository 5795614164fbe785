#pragma once

// Independent Smith-normal-form oracle via determinant divisors: the k-th
// invariant factor is gcd(k x k minors) / gcd((k-1) x (k-1) minors).

#include <functional>
#include <vector>

#include "contraaec/nervehom.hpp"

namespace contraaec::testutil {

inline bigint minor_det(const IntMat& M, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  size_t n = rows.size();
  if (n == 0) return 1;
  bigint d = 0;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    std::vector<int> sub_cols;
    for (size_t jj = 0; jj < n; ++jj)
      if (jj != j) sub_cols.push_back(cols[jj]);
    bigint a = M.at(rows[0], cols[j]);
    if (a != 0) d += sign * a * minor_det(M, sub_rows, sub_cols);
    sign = -sign;
  }
  return d;
}

inline void subsets(int n, int k, int from, std::vector<int>& cur,
                    const std::function<void(const std::vector<int>&)>& cb) {
  if (static_cast<int>(cur.size()) == k) {
    cb(cur);
    return;
  }
  for (int i = from; i <= n - (k - static_cast<int>(cur.size())); ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, cb);
    cur.pop_back();
  }
}

inline SmithResult snf_oracle(const IntMat& M) {
  using boost::multiprecision::gcd;
  int maxk = std::min(M.rows, M.cols);
  std::vector<bigint> d(maxk + 1);
  d[0] = 1;
  int rank = 0;
  for (int k = 1; k <= maxk; ++k) {
    bigint g = 0;
    std::vector<int> cur;
    subsets(M.rows, k, 0, cur, [&](const std::vector<int>& rows) {
      std::vector<int> cc;
      subsets(M.cols, k, 0, cc, [&](const std::vector<int>& cols) {
        bigint m = minor_det(M, rows, cols);
        if (m < 0) m = -m;
        g = gcd(g, m);
      });
    });
    d[k] = g;
    if (g != 0) rank = k;
  }
  SmithResult R;
  R.rank = rank;
  for (int k = 1; k <= rank; ++k) R.factors.push_back(d[k] / d[k - 1]);
  return R;
}

}  // namespace contraaec::testutil
