#pragma once

// Dense reference evaluator used only by the tests. It shares no code with
// the library beyond reading a Dga's structure constants: tuples are
// enumerated by an odometer, operators are evaluated straight from their
// defining formulas into dense matrices, and ranks come from a plain
// fraction Gaussian elimination.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

#include "dgcyc/dga.hpp"

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;  // rows x cols

struct Alg {
  int n = 0;
  int unit = 0;
  std::vector<int> deg;
  std::vector<std::vector<std::vector<Q>>> mult;  // mult[i][j][k]: coefficient of e_k in e_i e_j
  std::vector<std::vector<Q>> diff;               // diff[i][k]: coefficient of e_k in d(e_i)
};

inline Alg from_dga(const dgcyc::Dga& a) {
  Alg o;
  o.n = static_cast<int>(a.dim());
  o.unit = static_cast<int>(a.unit());
  for (int i = 0; i < o.n; ++i) o.deg.push_back(a.degree(i));
  o.mult.assign(o.n, std::vector<std::vector<Q>>(o.n, std::vector<Q>(o.n)));
  o.diff.assign(o.n, std::vector<Q>(o.n));
  for (int i = 0; i < o.n; ++i) {
    for (int j = 0; j < o.n; ++j)
      for (const auto& e : a.product(i, j)) o.mult[i][j][e.index] = e.value;
    for (const auto& e : a.differential(i)) o.diff[i][e.index] = e.value;
  }
  return o;
}

inline int sgn_pow(long long e) { return e % 2 == 0 ? 1 : -1; }

/// All tuples of length len over {0..n-1} with degree sum q.
inline std::vector<std::vector<int>> tuples(const Alg& a, int len, int q) {
  std::vector<std::vector<int>> out;
  if (len <= 0 || q < 0) return out;
  std::vector<int> t(len, 0);
  for (;;) {
    int s = 0;
    for (int x : t) s += a.deg[x];
    if (s == q) out.push_back(t);
    int k = len - 1;
    while (k >= 0 && t[k] == a.n - 1) t[k--] = 0;
    if (k < 0) break;
    ++t[k];
  }
  return out;
}

struct Space {
  std::vector<std::vector<int>> list;
  std::map<std::vector<int>, int> pos;
};

inline Space space(const Alg& a, int p, int q) {
  Space s;
  s.list = tuples(a, p + 1, q);
  for (int i = 0; i < static_cast<int>(s.list.size()); ++i) s.pos[s.list[i]] = i;
  return s;
}

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Q>(c)); }

inline Dense mul(const Dense& x, const Dense& y, std::size_t inner) {
  const std::size_t r = x.size();
  const std::size_t c = y.empty() ? 0 : y[0].size();
  Dense z = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) z[i][j] += x[i][k] * y[k][j];
    }
  return z;
}

inline std::size_t rank(Dense m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// b : C^p_q -> C^{p+1}_q, evaluated on each target tuple.
inline Dense b(const Alg& a, int p, int q, bool primed = false) {
  Space src = space(a, p, q), tgt = space(a, p + 1, q);
  Dense m = zeros(tgt.list.size(), src.list.size());
  for (std::size_t r = 0; r < tgt.list.size(); ++r) {
    const auto& t = tgt.list[r];
    for (int i = 0; i <= p; ++i)
      for (int k = 0; k < a.n; ++k) {
        if (a.mult[t[i]][t[i + 1]][k] == 0) continue;
        std::vector<int> s;
        for (int j = 0; j < i; ++j) s.push_back(t[j]);
        s.push_back(k);
        for (int j = i + 2; j <= p + 1; ++j) s.push_back(t[j]);
        m[r][src.pos.at(s)] += sgn_pow(i) * a.mult[t[i]][t[i + 1]][k];
      }
    if (primed) continue;
    long long before = 0;
    for (int j = 0; j <= p; ++j) before += a.deg[t[j]];
    for (int k = 0; k < a.n; ++k) {
      if (a.mult[t[p + 1]][t[0]][k] == 0) continue;
      std::vector<int> s{k};
      for (int j = 1; j <= p; ++j) s.push_back(t[j]);
      m[r][src.pos.at(s)] += sgn_pow(p + 1) * sgn_pow(before * a.deg[t[p + 1]]) * a.mult[t[p + 1]][t[0]][k];
    }
  }
  return m;
}

/// delta : C^p_q -> C^p_{q+1}
inline Dense delta(const Alg& a, int p, int q) {
  Space src = space(a, p, q), tgt = space(a, p, q + 1);
  Dense m = zeros(tgt.list.size(), src.list.size());
  for (std::size_t r = 0; r < tgt.list.size(); ++r) {
    const auto& t = tgt.list[r];
    long long w = 0;
    for (int i = 0; i <= p; ++i) {
      for (int k = 0; k < a.n; ++k) {
        if (a.diff[t[i]][k] == 0) continue;
        auto s = t;
        s[i] = k;
        m[r][src.pos.at(s)] += sgn_pow(q) * sgn_pow(w) * a.diff[t[i]][k];
      }
      w += a.deg[t[i]];
    }
  }
  return m;
}

/// Lambda on C^p_q
inline Dense lambda(const Alg& a, int p, int q) {
  Space sp = space(a, p, q);
  Dense m = zeros(sp.list.size(), sp.list.size());
  for (std::size_t r = 0; r < sp.list.size(); ++r) {
    const auto& t = sp.list[r];
    long long before = 0;
    for (int j = 0; j < p; ++j) before += a.deg[t[j]];
    std::vector<int> s{t[p]};
    for (int j = 0; j < p; ++j) s.push_back(t[j]);
    m[r][sp.pos.at(s)] += sgn_pow(before * a.deg[t[p]] + p);
  }
  return m;
}

/// B : C^p_q -> C^{p-1}_q as Nabla s (1 - Lambda), evaluated pointwise:
/// (B f)(a_0..a_{p-1}) = sum_i (Lambda^i g)(a_0..a_{p-1}),  g(x) = (-1)^{p-1} ((1-Lambda) f)(x, 1).
inline Dense connes_B(const Alg& a, int p, int q) {
  Space src = space(a, p, q), tgt = space(a, p - 1, q);
  Dense l = lambda(a, p, q);
  Dense oml = zeros(src.list.size(), src.list.size());
  for (std::size_t i = 0; i < src.list.size(); ++i)
    for (std::size_t j = 0; j < src.list.size(); ++j) oml[i][j] = (i == j ? 1 : 0) - l[i][j];
  Dense s = zeros(tgt.list.size(), src.list.size());
  for (std::size_t r = 0; r < tgt.list.size(); ++r) {
    auto t = tgt.list[r];
    t.push_back(a.unit);
    s[r][src.pos.at(t)] = sgn_pow(p - 1);
  }
  Dense lt = lambda(a, p - 1, q);
  Dense nab = zeros(tgt.list.size(), tgt.list.size());
  Dense pw = zeros(tgt.list.size(), tgt.list.size());
  for (std::size_t i = 0; i < tgt.list.size(); ++i) pw[i][i] = 1;
  for (int i = 0; i < p; ++i) {
    for (std::size_t x = 0; x < tgt.list.size(); ++x)
      for (std::size_t y = 0; y < tgt.list.size(); ++y) nab[x][y] += pw[x][y];
    pw = mul(lt, pw, tgt.list.size());
  }
  return mul(nab, mul(s, oml, src.list.size()), tgt.list.size());
}

inline std::size_t dim(const Alg& a, int p, int q) { return tuples(a, p + 1, q).size(); }


/// H^n of 𝒯(EH): cells (p, n-p), d = b + (-1)^p delta.
inline std::size_t hh(const Alg& a, int n) {
  auto total = [&](int m) {
    std::vector<std::pair<int, int>> cells;
    for (int p = 0; p <= m; ++p) cells.emplace_back(p, m - p);
    return cells;
  };
  auto d = [&](int m) {
    auto src = total(m), tgt = total(m + 1);
    std::vector<std::size_t> so, to;
    std::size_t cols = 0, rows = 0;
    for (auto [p, q] : src) so.push_back(cols), cols += dim(a, p, q);
    for (auto [p, q] : tgt) to.push_back(rows), rows += dim(a, p, q);
    Dense m_ = zeros(rows, cols);
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto [p, q] = src[c];
      Dense bb = b(a, p, q);
      Dense dd = delta(a, p, q);
      for (std::size_t r = 0; r < bb.size(); ++r)
        for (std::size_t k = 0; k < bb[r].size(); ++k) m_[to[c + 1] + r][so[c] + k] += bb[r][k];
      for (std::size_t r = 0; r < dd.size(); ++r)
        for (std::size_t k = 0; k < dd[r].size(); ++k) m_[to[c] + r][so[c] + k] += sgn_pow(p) * dd[r][k];
    }
    return std::make_pair(m_, cols);
  };
  if (n < 0) return 0;
  auto [dn, cn] = d(n);
  std::size_t in = 0;
  if (n >= 1) in = rank(d(n - 1).first);
  return cn - rank(dn) - in;
}

/// H^n of 𝒯(EC): cells (k, a, r) with 2k + a + r = n; b, B, (-1)^a delta.
inline std::size_t hc(const Alg& A, int n) {
  struct Cell {
    int k, a, r;
  };
  auto total = [&](int m) {
    std::vector<Cell> cells;
    for (int k = 0; 2 * k <= m; ++k)
      for (int a = 0; 2 * k + a <= m; ++a) cells.push_back({k, a, m - 2 * k - a});
    return cells;
  };
  auto d = [&](int m) {
    auto src = total(m), tgt = total(m + 1);
    std::vector<std::size_t> so, to;
    std::size_t cols = 0, rows = 0;
    for (auto c : src) so.push_back(cols), cols += dim(A, c.a, c.r);
    for (auto c : tgt) to.push_back(rows), rows += dim(A, c.a, c.r);
    auto find = [&](int k, int a, int r) {
      for (std::size_t i = 0; i < tgt.size(); ++i)
        if (tgt[i].k == k && tgt[i].a == a && tgt[i].r == r) return to[i];
      return rows;
    };
    Dense m_ = zeros(rows, cols);
    auto put = [&](std::size_t ro, std::size_t co, const Dense& blk, int sign) {
      for (std::size_t r = 0; r < blk.size(); ++r)
        for (std::size_t k = 0; k < blk[r].size(); ++k) m_[ro + r][co + k] += sign * blk[r][k];
    };
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto c = src[i];
      if (dim(A, c.a, c.r) == 0) continue;
      if (dim(A, c.a + 1, c.r)) put(find(c.k, c.a + 1, c.r), so[i], b(A, c.a, c.r), 1);
      if (c.a >= 1 && dim(A, c.a - 1, c.r)) put(find(c.k + 1, c.a - 1, c.r), so[i], connes_B(A, c.a, c.r), 1);
      if (dim(A, c.a, c.r + 1)) put(find(c.k, c.a, c.r + 1), so[i], delta(A, c.a, c.r), sgn_pow(c.a));
    }
    return std::make_pair(m_, cols);
  };
  if (n < 0) return 0;
  auto [dn, cn] = d(n);
  std::size_t in = 0;
  if (n >= 1) in = rank(d(n - 1).first);
  return cn - rank(dn) - in;
}

}  // namespace oracle
