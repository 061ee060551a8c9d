#pragma once

// Finite-dimensional non-negatively graded dgas and dg-bimodules.
//
// Grading: a basis element of degree j lives in A_j (homological), and the
// differential phi lowers degree by one. Leibniz reads
//   phi(ab) = phi(a) b + (-1)^{|a|} a phi(b).
// Bimodule degrees are cohomological integers; for the regular bimodule the
// element of A_j sits in degree -j.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "exact_linalg.hpp"

namespace dgcyc {

struct Diagnostic {
  std::string family;  // degree, unit, associativity, leibniz, differential_square, parse, ...
  std::string message;
  int line = 0;
  int column = 0;
};

template <class T>
struct Validated {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return value.has_value(); }
};

inline int koszul(long long exponent) { return (exponent & 1) ? -1 : 1; }

inline void add_scaled(SparseVec& acc, const Rat& c, const SparseVec& v) { acc = detail::axpy(acc, c, v); }

inline SparseVec scaled(const Rat& c, const SparseVec& v) {
  SparseVec out;
  if (sgn(c) == 0) return out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({e.index, c * e.value});
  return out;
}

inline SparseVec unit_vector(std::size_t i) { return SparseVec{{i, Rat(1)}}; }

/// Raw presentation as written by a user; indices follow declaration order.
struct DgaPresentation {
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::optional<std::size_t> unit;
  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> products;
  std::vector<std::pair<std::size_t, SparseVec>> differential;
};

class Dga {
 public:
  Dga() = default;

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t unit() const { return unit_; }
  int max_degree() const { return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end()); }

  const SparseVec& product(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }
  const SparseVec& differential(std::size_t i) const { return diff_.at(i); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::vector<std::size_t> dims_by_degree() const {
    std::vector<std::size_t> d(static_cast<std::size_t>(max_degree()) + 1, 0);
    for (int g : degrees_) ++d[static_cast<std::size_t>(g)];
    return d;
  }

  SparseVec multiply(const SparseVec& u, const SparseVec& v) const {
    SparseVec acc;
    for (const auto& a : u)
      for (const auto& b : v) add_scaled(acc, a.value * b.value, product(a.index, b.index));
    return acc;
  }

  SparseVec apply_diff(const SparseVec& u) const {
    SparseVec acc;
    for (const auto& a : u) add_scaled(acc, a.value, differential(a.index));
    return acc;
  }

  /// Column i holds phi(e_i).
  RatMatrix diff_matrix() const {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& e : diff_[i]) t.emplace_back(e.index, i, e.value);
    return RatMatrix::from_triplets(dim(), dim(), std::move(t));
  }

  /// Builds a Dga from already ordered tables without checking any axiom.
  static Dga unchecked(std::string name, std::vector<std::string> labels, std::vector<int> degrees, std::size_t unit,
                       std::vector<SparseVec> table, std::vector<SparseVec> diff) {
    Dga a;
    a.name_ = std::move(name);
    a.labels_ = std::move(labels);
    a.degrees_ = std::move(degrees);
    a.unit_ = unit;
    a.table_ = std::move(table);
    a.diff_ = std::move(diff);
    return a;
  }

  DgaPresentation to_presentation() const {
    DgaPresentation p;
    p.name = name_;
    p.labels = labels_;
    p.degrees = degrees_;
    p.unit = unit_;
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        if (i == unit_ || j == unit_) continue;
        if (!product(i, j).empty()) p.products.emplace_back(i, j, product(i, j));
      }
      if (!diff_[i].empty()) p.differential.emplace_back(i, diff_[i]);
    }
    return p;
  }

  friend bool operator==(const Dga& a, const Dga& b) {
    if (a.labels_ != b.labels_ || a.degrees_ != b.degrees_ || a.unit_ != b.unit_) return false;
    for (std::size_t i = 0; i < a.table_.size(); ++i)
      if (!detail::sparse_equal(a.table_[i], b.table_[i])) return false;
    for (std::size_t i = 0; i < a.diff_.size(); ++i)
      if (!detail::sparse_equal(a.diff_[i], b.diff_[i])) return false;
    return a.name_ == b.name_;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::size_t unit_ = 0;
  std::vector<SparseVec> table_;
  std::vector<SparseVec> diff_;
};

namespace detail {

inline std::string vec_to_string(const SparseVec& v, const std::vector<std::string>& labels) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& e : v) {
    if (!s.empty()) s += " + ";
    if (e.value != 1) s += e.value.get_str() + " ";
    s += labels[e.index];
  }
  return s;
}

}  // namespace detail

/// Checks the dga axioms. Structural problems (degrees, unit placement,
/// duplicates) stop validation early; algebraic axioms are all reported.
inline Validated<Dga> validate_dga(const DgaPresentation& in) {
  Validated<Dga> out;
  auto diag = [&](std::string fam, std::string msg) { out.diagnostics.push_back({std::move(fam), std::move(msg)}); };
  const std::size_t n = in.labels.size();

  if (n == 0) {
    diag("structure", "empty basis");
    return out;
  }
  if (in.degrees.size() != n) {
    diag("structure", "labels and degrees differ in length");
    return out;
  }
  {
    std::set<std::string> seen;
    for (const auto& l : in.labels)
      if (!seen.insert(l).second) diag("duplicate", "basis label '" + l + "' declared twice");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (in.degrees[i] < 0) diag("degree", "basis element '" + in.labels[i] + "' has negative degree");
  if (!in.unit) {
    diag("unit", "no unit declared");
  } else if (*in.unit >= n) {
    diag("unit", "unit index out of range");
  } else if (in.degrees[*in.unit] != 0) {
    diag("unit", "unit '" + in.labels[*in.unit] + "' is not in degree 0");
  }
  if (!out.diagnostics.empty()) return out;

  // Degree-major order, declaration order within a degree.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return in.degrees[a] < in.degrees[b]; });
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  std::vector<std::string> labels(n);
  std::vector<int> degrees(n);
  for (std::size_t k = 0; k < n; ++k) {
    labels[k] = in.labels[order[k]];
    degrees[k] = in.degrees[order[k]];
  }
  const std::size_t unit = pos[*in.unit];

  auto remap = [&](const SparseVec& v, bool& bad) {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (const auto& e : v) {
      if (e.index >= n) {
        bad = true;
        continue;
      }
      t.emplace_back(0, pos[e.index], e.value);
    }
    auto m = RatMatrix::from_triplets(1, n, std::move(t));
    return m.row(0);
  };

  std::vector<SparseVec> table(n * n);
  std::vector<char> given(n * n, 0);
  for (const auto& [i0, j0, v0] : in.products) {
    if (i0 >= n || j0 >= n) {
      diag("structure", "product references an unknown basis index");
      continue;
    }
    bool bad = false;
    SparseVec v = remap(v0, bad);
    if (bad) diag("structure", "product value references an unknown basis index");
    const std::size_t i = pos[i0];
    const std::size_t j = pos[j0];
    if (given[i * n + j]) {
      diag("duplicate", "product " + labels[i] + "*" + labels[j] + " given twice");
      continue;
    }
    given[i * n + j] = 1;
    for (const auto& e : v)
      if (degrees[e.index] != degrees[i] + degrees[j])
        diag("degree", "product " + labels[i] + "*" + labels[j] + " has a term " + labels[e.index] + " of degree " +
                           std::to_string(degrees[e.index]) + ", expected " + std::to_string(degrees[i] + degrees[j]));
    if (i == unit || j == unit) {
      const std::size_t other = i == unit ? j : i;
      if (!detail::sparse_equal(v, unit_vector(other)))
        diag("unit", "unit law fails: " + labels[i] + "*" + labels[j] + " = " + detail::vec_to_string(v, labels));
    }
    table[i * n + j] = std::move(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!given[unit * n + i]) table[unit * n + i] = unit_vector(i);
    if (!given[i * n + unit]) table[i * n + unit] = unit_vector(i);
  }

  std::vector<SparseVec> diff(n);
  std::vector<char> dgiven(n, 0);
  for (const auto& [i0, v0] : in.differential) {
    if (i0 >= n) {
      diag("structure", "differential references an unknown basis index");
      continue;
    }
    bool bad = false;
    SparseVec v = remap(v0, bad);
    if (bad) diag("structure", "differential value references an unknown basis index");
    const std::size_t i = pos[i0];
    if (dgiven[i]) {
      diag("duplicate", "differential of " + labels[i] + " given twice");
      continue;
    }
    dgiven[i] = 1;
    for (const auto& e : v)
      if (degrees[e.index] != degrees[i] - 1)
        diag("degree", "d(" + labels[i] + ") has a term " + labels[e.index] + " of degree " +
                           std::to_string(degrees[e.index]) + ", expected " + std::to_string(degrees[i] - 1));
    diff[i] = std::move(v);
  }
  if (!out.diagnostics.empty()) return out;

  Dga a = Dga::unchecked(in.name, labels, degrees, unit, std::move(table), std::move(diff));

  if (!a.differential(unit).empty()) diag("unit", "the unit is not a cycle: d(" + labels[unit] + ") != 0");

  for (std::size_t i = 0; i < n; ++i) {
    SparseVec dd = a.apply_diff(a.differential(i));
    if (!dd.empty()) diag("differential_square", "d(d(" + labels[i] + ")) = " + detail::vec_to_string(dd, labels));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec lhs = a.apply_diff(a.product(i, j));
      SparseVec rhs = a.multiply(a.differential(i), unit_vector(j));
      add_scaled(rhs, Rat(koszul(degrees[i])), a.multiply(unit_vector(i), a.differential(j)));
      if (!detail::sparse_equal(lhs, rhs))
        diag("leibniz", "Leibniz rule fails at (" + labels[i] + ", " + labels[j] + ")");
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec l = a.multiply(a.product(i, j), unit_vector(k));
        SparseVec r = a.multiply(unit_vector(i), a.product(j, k));
        if (!detail::sparse_equal(l, r))
          diag("associativity", "associativity fails at (" + labels[i] + ", " + labels[j] + ", " + labels[k] + ")");
      }

  if (out.diagnostics.empty()) out.value = std::move(a);
  return out;
}

/// Throws std::invalid_argument carrying the first diagnostic.
inline Dga make_dga(const DgaPresentation& p) {
  auto v = validate_dga(p);
  if (!v.ok()) throw std::invalid_argument("invalid dga '" + p.name + "': " + v.diagnostics.front().message);
  return std::move(*v.value);
}

/// The degree-0 part A^0, a dga with zero differential.
inline Dga degree_zero_subalgebra(const Dga& a) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.degree(i) == 0) keep.push_back(i);
  std::vector<std::size_t> pos(a.dim(), npos);
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
  const std::size_t m = keep.size();
  std::vector<SparseVec> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& e : a.product(keep[i], keep[j])) table[i * m + j].push_back({pos[e.index], e.value});
  std::vector<std::string> labels;
  for (std::size_t i : keep) labels.push_back(a.label(i));
  return Dga::unchecked(a.name() + "_deg0", std::move(labels), std::vector<int>(m, 0), pos[a.unit()], std::move(table),
                        std::vector<SparseVec>(m));
}

/// New basis e'_i = sum_j g(j, i) e_j, where g is block-diagonal by degree,
/// invertible, and fixes the unit. Returns nullopt if g is unsuitable.
inline std::optional<Dga> change_basis(const Dga& a, const RatMatrix& g) {
  const std::size_t n = a.dim();
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("change_basis: shape mismatch");
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& e : g.row(r))
      if (a.degree(r) != a.degree(e.index)) return std::nullopt;
  if (!detail::sparse_equal(g.column(a.unit()), unit_vector(a.unit()))) return std::nullopt;
  auto ginv = solve(g, RatMatrix::identity(n));
  if (!ginv || !(g * *ginv == RatMatrix::identity(n))) return std::nullopt;
  auto col = [&](const RatMatrix& m, std::size_t i) { return m.column(i); };
  auto to_new = [&](const SparseVec& old) {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (const auto& e : old) t.emplace_back(e.index, 0, e.value);
    RatMatrix c = *ginv * RatMatrix::from_triplets(n, 1, std::move(t));
    return c.column(0);
  };
  std::vector<SparseVec> table(n * n);
  std::vector<SparseVec> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SparseVec ei = col(g, i);
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = to_new(a.multiply(ei, col(g, j)));
    diff[i] = to_new(a.apply_diff(ei));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(a.label(i) + "'");
  labels[a.unit()] = a.label(a.unit());
  return Dga::unchecked(a.name() + "_rebased", std::move(labels), a.degrees(), a.unit(), std::move(table),
                        std::move(diff));
}

/// dg-bimodule over a dga, on a finite basis with cohomological degrees.
/// left(a, m) = a.m has degree |m| - |a|; right(m, a) likewise.
/// Leibniz: d(am) = phi(a) m + (-1)^{|a|} a d(m),  d(ma) = d(m) a + (-1)^{|m|} m phi(a).
class DgBimodule {
 public:
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::size_t algebra_dim = 0;
  std::vector<SparseVec> left;   // [a * dim + m]
  std::vector<SparseVec> right;  // [m * algebra_dim + a]
  std::vector<SparseVec> diff;   // degree +1

  std::size_t dim() const { return labels.size(); }
  const SparseVec& act_left(std::size_t a, std::size_t m) const { return left.at(a * dim() + m); }
  const SparseVec& act_right(std::size_t m, std::size_t a) const { return right.at(m * algebra_dim + a); }

  std::map<int, std::size_t> dims_by_degree() const {
    std::map<int, std::size_t> d;
    for (int g : degrees) ++d[g];
    return d;
  }

  SparseVec apply_diff(const SparseVec& v) const {
    SparseVec acc;
    for (const auto& e : v) add_scaled(acc, e.value, diff.at(e.index));
    return acc;
  }
};

inline DgBimodule regular_bimodule(const Dga& a) {
  DgBimodule m;
  m.name = a.name();
  m.algebra_dim = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    m.labels.push_back(a.label(i));
    m.degrees.push_back(-a.degree(i));
    m.diff.push_back(a.differential(i));
  }
  m.left.resize(a.dim() * a.dim());
  m.right.resize(a.dim() * a.dim());
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) {
      m.left[x * a.dim() + y] = a.product(x, y);
      m.right[y * a.dim() + x] = a.product(y, x);
    }
  return m;
}

/// Degreewise dual M* with (a.xi)(x) = (-1)^{|a|(|xi|+|x|)} xi(x.a),
/// (xi.a)(x) = xi(a.x), d(xi) = -(-1)^{|xi|} xi o d.
inline DgBimodule dual_bimodule(const DgBimodule& m) {
  DgBimodule d;
  d.name = m.name + "*";
  d.algebra_dim = m.algebra_dim;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    d.labels.push_back(m.labels[i] + "*");
    d.degrees.push_back(-m.degrees[i]);
  }
  d.left.resize(m.algebra_dim * n);
  d.right.resize(n * m.algebra_dim);
  d.diff.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < m.algebra_dim; ++a) {
      for (const auto& e : m.act_right(x, a)) {
        // |a| = |x| - |x.a|
        const long long adeg = m.degrees[x] - m.degrees[e.index];
        const int sign = koszul(adeg * (d.degrees[e.index] + m.degrees[x]));
        d.left[a * n + e.index].push_back({x, Rat(sign) * e.value});
      }
      for (const auto& e : m.act_left(a, x)) d.right[e.index * m.algebra_dim + a].push_back({x, e.value});
    }
    for (const auto& e : m.diff[x]) {
      d.diff[e.index].push_back({x, Rat(-koszul(d.degrees[e.index])) * e.value});
    }
  }
  auto sort_all = [](std::vector<SparseVec>& vs) {
    for (auto& v : vs) std::sort(v.begin(), v.end(), [](const Entry& p, const Entry& q) { return p.index < q.index; });
  };
  sort_all(d.left);
  sort_all(d.right);
  sort_all(d.diff);
  return d;
}

inline DgBimodule dual_bimodule(const Dga& a) { return dual_bimodule(regular_bimodule(a)); }

/// Checks the bimodule axioms against the algebra; empty result means valid.
inline std::vector<Diagnostic> validate_bimodule(const Dga& a, const DgBimodule& m) {
  std::vector<Diagnostic> out;
  const std::size_t n = m.dim();
  if (m.algebra_dim != a.dim() || m.left.size() != a.dim() * n || m.right.size() != a.dim() * n ||
      m.diff.size() != n || m.degrees.size() != n) {
    out.push_back({"structure", "bimodule tables do not match the algebra"});
    return out;
  }
  auto left = [&](const SparseVec& av, const SparseVec& mv) {
    SparseVec acc;
    for (const auto& x : av)
      for (const auto& y : mv) add_scaled(acc, x.value * y.value, m.act_left(x.index, y.index));
    return acc;
  };
  auto right = [&](const SparseVec& mv, const SparseVec& av) {
    SparseVec acc;
    for (const auto& y : mv)
      for (const auto& x : av) add_scaled(acc, x.value * y.value, m.act_right(y.index, x.index));
    return acc;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& e : m.diff[x])
      if (m.degrees[e.index] != m.degrees[x] + 1) out.push_back({"degree", "d(" + m.labels[x] + ") has wrong degree"});
    if (!m.apply_diff(m.diff[x]).empty()) out.push_back({"differential_square", "d(d(" + m.labels[x] + ")) != 0"});
    if (!detail::sparse_equal(m.act_left(a.unit(), x), unit_vector(x)) ||
        !detail::sparse_equal(m.act_right(x, a.unit()), unit_vector(x)))
      out.push_back({"unit", "unit does not act trivially on " + m.labels[x]});
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (const auto& e : m.act_left(i, x))
        if (m.degrees[e.index] != m.degrees[x] - a.degree(i))
          out.push_back({"degree", "left action " + a.label(i) + "." + m.labels[x] + " has wrong degree"});
      for (const auto& e : m.act_right(x, i))
        if (m.degrees[e.index] != m.degrees[x] - a.degree(i))
          out.push_back({"degree", "right action " + m.labels[x] + "." + a.label(i) + " has wrong degree"});
      const SparseVec ei = unit_vector(i);
      const SparseVec mx = unit_vector(x);
      // d(a m)
      SparseVec l = m.apply_diff(m.act_left(i, x));
      SparseVec r = left(a.differential(i), mx);
      add_scaled(r, Rat(koszul(a.degree(i))), left(ei, m.diff[x]));
      if (!detail::sparse_equal(l, r)) out.push_back({"leibniz", "left Leibniz fails at (" + a.label(i) + ", " + m.labels[x] + ")"});
      l = m.apply_diff(m.act_right(x, i));
      r = right(m.diff[x], ei);
      add_scaled(r, Rat(koszul(m.degrees[x])), right(mx, a.differential(i)));
      if (!detail::sparse_equal(l, r)) out.push_back({"leibniz", "right Leibniz fails at (" + m.labels[x] + ", " + a.label(i) + ")"});
      for (std::size_t j = 0; j < a.dim(); ++j) {
        const SparseVec ej = unit_vector(j);
        if (!detail::sparse_equal(left(a.product(i, j), mx), left(ei, m.act_left(j, x))))
          out.push_back({"associativity", "(ab)m != a(bm) at (" + a.label(i) + ", " + a.label(j) + ", " + m.labels[x] + ")"});
        if (!detail::sparse_equal(right(mx, a.product(i, j)), right(m.act_right(x, i), ej)))
          out.push_back({"associativity", "m(ab) != (ma)b at (" + m.labels[x] + ", " + a.label(i) + ", " + a.label(j) + ")"});
        if (!detail::sparse_equal(right(m.act_left(i, x), ej), left(ei, m.act_right(x, j))))
          out.push_back({"associativity", "(am)b != a(mb) at (" + a.label(i) + ", " + m.labels[x] + ", " + a.label(j) + ")"});
      }
    }
  }
  return out;
}

}  // namespace dgcyc
