#pragma once

// Morphisms of the simplicial category: non-decreasing maps [n] -> [m],
// [n] = {0, ..., n}, with the epi-mono factorization into cofaces and
// codegeneracies.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgcyc {

struct DeltaMorphism {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> values;  // f(0), ..., f(n)

  DeltaMorphism() = default;
  DeltaMorphism(std::size_t n_, std::size_t m_, std::vector<std::size_t> v) : n(n_), m(m_), values(std::move(v)) {
    if (values.size() != n + 1) throw std::invalid_argument("DeltaMorphism: expected n+1 values");
    for (std::size_t i = 0; i <= n; ++i) {
      if (values[i] > m) throw std::invalid_argument("DeltaMorphism: value out of range");
      if (i > 0 && values[i] < values[i - 1]) throw std::invalid_argument("DeltaMorphism: not non-decreasing");
    }
  }

  static DeltaMorphism identity(std::size_t n) {
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = i;
    return {n, n, v};
  }

  /// epsilon^i : [m-1] -> [m], skips i.
  static DeltaMorphism coface(std::size_t i, std::size_t m) {
    if (m == 0 || i > m) throw std::invalid_argument("coface: index out of range");
    std::vector<std::size_t> v(m);
    for (std::size_t x = 0; x < m; ++x) v[x] = x < i ? x : x + 1;
    return {m - 1, m, v};
  }

  /// eta^j : [n+1] -> [n], hits j twice.
  static DeltaMorphism codegeneracy(std::size_t j, std::size_t n) {
    if (j > n) throw std::invalid_argument("codegeneracy: index out of range");
    std::vector<std::size_t> v(n + 2);
    for (std::size_t x = 0; x < n + 2; ++x) v[x] = x <= j ? x : x - 1;
    return {n + 1, n, v};
  }

  /// (*this) o g
  DeltaMorphism after(const DeltaMorphism& g) const {
    if (g.m != n) throw std::invalid_argument("DeltaMorphism: composition mismatch");
    std::vector<std::size_t> v(g.n + 1);
    for (std::size_t x = 0; x <= g.n; ++x) v[x] = values[g.values[x]];
    return {g.n, m, v};
  }

  friend bool operator==(const DeltaMorphism&, const DeltaMorphism&) = default;
};

struct DeltaFactorization {
  std::vector<std::size_t> eps;  // i_1 > i_2 > ... > i_k
  std::vector<std::size_t> eta;  // j_1 < j_2 < ... < j_s
};

/// f = eps^{i_1} ... eps^{i_k} eta^{j_1} ... eta^{j_s}.
/// The i's are the points missed by f, the j's the points with f(j) = f(j+1).
inline DeltaFactorization factorize_delta_morphism(const DeltaMorphism& f) {
  DeltaFactorization out;
  std::vector<char> hit(f.m + 1, 0);
  for (std::size_t v : f.values) hit[v] = 1;
  for (std::size_t i = f.m + 1; i-- > 0;)
    if (!hit[i]) out.eps.push_back(i);
  for (std::size_t j = 0; j < f.n; ++j)
    if (f.values[j] == f.values[j + 1]) out.eta.push_back(j);
  return out;
}

/// Rebuilds the morphism [n] -> [m] from a factorization.
inline DeltaMorphism recompose(const DeltaFactorization& fac, std::size_t n) {
  DeltaMorphism acc = DeltaMorphism::identity(n);
  for (std::size_t k = fac.eta.size(); k-- > 0;) {
    acc = DeltaMorphism::codegeneracy(fac.eta[k], acc.m - 1).after(acc);
  }
  for (std::size_t k = fac.eps.size(); k-- > 0;) {
    acc = DeltaMorphism::coface(fac.eps[k], acc.m + 1).after(acc);
  }
  return acc;
}

}  // namespace dgcyc
