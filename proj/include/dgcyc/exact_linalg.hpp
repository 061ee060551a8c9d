#pragma once

// Exact sparse linear algebra over the rationals.
//
// Every cohomology dimension in the library is a quotient dimension
// ker/im computed here. Scalars are GMP rationals (always canonical:
// gcd(num, den) = 1, den > 0), so no result ever depends on rounding.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dgcyc {

using Rat = mpq_class;

struct Entry {
  std::size_t index;
  Rat value;
};

/// Sorted by index, never stores a zero.
using SparseVec = std::vector<Entry>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

namespace detail {

inline bool sparse_equal(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || a[i].value != b[i].value) return false;
  }
  return true;
}

// y + factor * x
inline SparseVec axpy(const SparseVec& y, const Rat& factor, const SparseVec& x) {
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      Rat v = factor * x[j].value;
      out.push_back({x[j].index, std::move(v)});
      ++j;
    } else {
      Rat v = y[i].value + factor * x[j].value;
      if (sgn(v) != 0) out.push_back({y[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

inline const Rat* find_entry(const SparseVec& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const Entry& e, std::size_t k) { return e.index < k; });
  if (it == v.end() || it->index != index) return nullptr;
  return &it->value;
}

}  // namespace detail

/// Sparse rational matrix, stored row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Rat(1)});
    return m;
  }

  /// Duplicate (row, col) pairs are summed; zero sums are dropped.
  static RatMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<std::tuple<std::size_t, std::size_t, Rat>> t) {
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    RatMatrix m(rows, cols);
    for (std::size_t k = 0; k < t.size();) {
      auto [r, c, v] = t[k];
      if (r >= rows || c >= cols) throw std::out_of_range("RatMatrix: triplet index out of range");
      std::size_t l = k + 1;
      while (l < t.size() && std::get<0>(t[l]) == r && std::get<1>(t[l]) == c) v += std::get<2>(t[l++]);
      if (sgn(v) != 0) m.data_[r].push_back({c, std::move(v)});
      k = l;
    }
    return m;
  }

  static RatMatrix from_dense(const std::vector<std::vector<Rat>>& d) {
    const std::size_t r = d.size();
    const std::size_t c = r == 0 ? 0 : d[0].size();
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (d[i].size() != c) throw DimensionMismatch("from_dense: ragged rows");
      for (std::size_t j = 0; j < c; ++j)
        if (sgn(d[i][j]) != 0) m.data_[i].push_back({j, d[i][j]});
    }
    return m;
  }

  static RatMatrix from_rows(std::size_t cols, std::vector<SparseVec> rows) {
    RatMatrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    m.data_ = std::move(rows);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVec& row(std::size_t r) const { return data_.at(r); }

  Rat at(std::size_t r, std::size_t c) const {
    const Rat* v = detail::find_entry(data_.at(r), c);
    return v ? *v : Rat(0);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& e : data_[i]) t.data_[e.index].push_back({i, e.value});
    return t;
  }

  SparseVec column(std::size_t c) const {
    SparseVec out;
    for (std::size_t i = 0; i < rows_; ++i)
      if (const Rat* v = detail::find_entry(data_[i], c)) out.push_back({i, *v});
    return out;
  }

  std::vector<std::vector<Rat>> to_dense() const {
    std::vector<std::vector<Rat>> d(rows_, std::vector<Rat>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& e : data_[i]) d[i][e.index] = e.value;
    return d;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                              " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    RatMatrix c(a.rows_, b.cols_);
    std::vector<Rat> acc(b.cols_);
    std::vector<char> touched(b.cols_, 0);
    std::vector<std::size_t> list;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      list.clear();
      for (const auto& ea : a.data_[i]) {
        for (const auto& eb : b.data_[ea.index]) {
          if (!touched[eb.index]) {
            touched[eb.index] = 1;
            list.push_back(eb.index);
            acc[eb.index] = ea.value * eb.value;
          } else {
            acc[eb.index] += ea.value * eb.value;
          }
        }
      }
      std::sort(list.begin(), list.end());
      auto& out = c.data_[i];
      for (std::size_t k : list) {
        if (sgn(acc[k]) != 0) out.push_back({k, acc[k]});
        touched[k] = 0;
      }
    }
    return c;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) { return combine(a, Rat(1), b); }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return combine(a, Rat(-1), b); }
  friend RatMatrix operator-(const RatMatrix& a) { return Rat(-1) * a; }

  friend RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix m(a.rows_, a.cols_);
    if (sgn(s) == 0) return m;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      m.data_[i].reserve(a.data_[i].size());
      for (const auto& e : a.data_[i]) m.data_[i].push_back({e.index, s * e.value});
    }
    return m;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.rows_; ++i)
      if (!detail::sparse_equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

  /// Columns side by side; all blocks must share the row count.
  static RatMatrix hstack(std::span<const RatMatrix> blocks, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& b : blocks) {
      if (b.rows_ != rows) throw DimensionMismatch("hstack: row count mismatch");
      cols += b.cols_;
    }
    RatMatrix m(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < rows; ++i)
        for (const auto& e : b.data_[i]) m.data_[i].push_back({e.index + off, e.value});
      off += b.cols_;
    }
    return m;
  }

  static RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    const RatMatrix blocks[] = {a, b};
    return hstack(blocks, a.rows_);
  }

  RatMatrix select_rows(std::span<const std::size_t> idx) const {
    RatMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) m.data_[i] = data_.at(idx[i]);
    return m;
  }

  /// Keeps the listed columns (renumbered in the order given).
  RatMatrix select_cols(std::span<const std::size_t> idx) const {
    std::vector<std::size_t> remap(cols_, npos);
    for (std::size_t k = 0; k < idx.size(); ++k) remap.at(idx[k]) = k;
    RatMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& e : data_[i])
        if (remap[e.index] != npos) m.data_[i].push_back({remap[e.index], e.value});
      std::sort(m.data_[i].begin(), m.data_[i].end(),
                [](const Entry& x, const Entry& y) { return x.index < y.index; });
    }
    return m;
  }

 private:
  static RatMatrix combine(const RatMatrix& a, const Rat& f, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
    RatMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = detail::axpy(a.data_[i], f, b.data_[i]);
    return m;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Reduced row echelon form. Pivot rows are sorted by pivot column and
/// carry a 1 at their pivot; no other pivot row has an entry there.
struct Echelon {
  std::size_t cols = 0;
  std::vector<SparseVec> rows;
  std::vector<std::size_t> pivots;
  // Nonzero rows left with no eligible pivot column (only with a pivot limit).
  std::vector<SparseVec> residual;

  std::size_t rank() const { return pivots.size(); }
};

/// Sparse Gauss-Jordan elimination. Pivots are restricted to columns
/// < pivot_limit. The pivot row is the active row with the fewest
/// nonzeros; within it the pivot column is the one touching the fewest
/// active rows. Ties go to the lowest index, so the output is reproducible.
inline Echelon rref(const RatMatrix& m, std::size_t pivot_limit = npos) {
  const std::size_t limit = std::min(pivot_limit, m.cols());
  std::vector<SparseVec> active;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) active.push_back(m.row(i));

  std::vector<std::size_t> colcount(limit, 0);
  auto count = [&](const SparseVec& r, long delta) {
    for (const auto& e : r) {
      if (e.index >= limit) break;
      colcount[e.index] = static_cast<std::size_t>(static_cast<long>(colcount[e.index]) + delta);
    }
  };
  for (const auto& r : active) count(r, +1);

  std::vector<char> alive(active.size(), 1);
  Echelon out;
  out.cols = m.cols();

  for (;;) {
    std::size_t best = npos;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (!alive[i]) continue;
      if (active[i].empty()) {
        alive[i] = 0;
        continue;
      }
      if (active[i].front().index >= limit) {
        out.residual.push_back(active[i]);
        alive[i] = 0;
        continue;
      }
      if (best == npos || active[i].size() < active[best].size()) best = i;
    }
    if (best == npos) break;

    SparseVec piv = std::move(active[best]);
    alive[best] = 0;
    count(piv, -1);
    std::size_t pc = npos;
    for (const auto& e : piv) {
      if (e.index >= limit) break;
      if (pc == npos || colcount[e.index] < colcount[pc]) pc = e.index;
    }
    const Rat inv = 1 / *detail::find_entry(piv, pc);
    for (auto& e : piv) e.value *= inv;

    for (std::size_t i = 0; i < active.size(); ++i) {
      if (!alive[i]) continue;
      const Rat* v = detail::find_entry(active[i], pc);
      if (!v) continue;
      const Rat f = -*v;
      count(active[i], -1);
      active[i] = detail::axpy(active[i], f, piv);
      count(active[i], +1);
    }
    for (auto& r : out.rows) {
      const Rat* v = detail::find_entry(r, pc);
      if (!v) continue;
      const Rat f = -*v;
      r = detail::axpy(r, f, piv);
    }
    out.rows.push_back(std::move(piv));
    out.pivots.push_back(pc);
  }

  std::vector<std::size_t> order(out.pivots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.pivots[a] < out.pivots[b]; });
  Echelon sorted;
  sorted.cols = out.cols;
  sorted.residual = std::move(out.residual);
  for (std::size_t k : order) {
    sorted.rows.push_back(std::move(out.rows[k]));
    sorted.pivots.push_back(out.pivots[k]);
  }
  return sorted;
}

inline std::size_t rank(const RatMatrix& m) {
  // Eliminating along the shorter side is cheaper and gives the same rank.
  if (m.cols() > m.rows()) return rref(m.transpose()).rank();
  return rref(m).rank();
}

/// Linear subspace of Q^ambient, held as a matrix whose columns form a basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : basis_(ambient, 0) {}

  static Subspace full(std::size_t n) { return Subspace(RatMatrix::identity(n), Trusted{}); }

  /// Column span of an arbitrary matrix, in canonical (reduced) form.
  static Subspace span(const RatMatrix& columns) {
    Echelon e = rref(columns.transpose());
    return Subspace(RatMatrix::from_rows(columns.rows(), std::move(e.rows)).transpose(), Trusted{});
  }

  /// Columns must already be independent; not re-checked.
  static Subspace from_independent(RatMatrix basis) { return Subspace(std::move(basis), Trusted{}); }

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }

  bool contains(const Subspace& w) const {
    if (w.ambient_dim() != ambient_dim()) throw DimensionMismatch("contains: ambient dimension mismatch");
    if (w.dim() == 0) return true;
    return rank(RatMatrix::hstack(basis_, w.basis_)) == dim();
  }

  friend bool operator==(const Subspace& u, const Subspace& v) {
    return u.ambient_dim() == v.ambient_dim() && u.dim() == v.dim() && u.contains(v);
  }

 private:
  struct Trusted {};
  Subspace(RatMatrix b, Trusted) : basis_(std::move(b)) {}
  RatMatrix basis_;
};

/// Basis of ker(m); dim = cols(m) - rank(m).
inline Subspace kernel_basis(const RatMatrix& m) {
  const Echelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : e.pivots) is_pivot[p] = 1;
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  std::size_t k = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    t.emplace_back(j, k, Rat(1));
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      if (const Rat* v = detail::find_entry(e.rows[r], j)) t.emplace_back(e.pivots[r], k, -*v);
    ++k;
  }
  return Subspace::from_independent(RatMatrix::from_triplets(m.cols(), k, std::move(t)));
}

inline Subspace image(const RatMatrix& m) { return Subspace::span(m); }

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("subspace_sum: ambient dimension mismatch");
  return Subspace::span(RatMatrix::hstack(u.basis(), v.basis()));
}

/// Solves [U | -V] x = 0 and maps the U-part of the kernel back.
inline Subspace subspace_intersection(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw DimensionMismatch("subspace_intersection: ambient dimension mismatch");
  if (u.dim() == 0 || v.dim() == 0) return Subspace(u.ambient_dim());
  const Subspace k = kernel_basis(RatMatrix::hstack(u.basis(), -v.basis()));
  std::vector<std::size_t> head(u.dim());
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
  return Subspace::span(u.basis() * k.basis().select_rows(head));
}

/// dim v - dim w, after checking w is inside v.
inline std::size_t quotient_dim(const Subspace& v, const Subspace& w) {
  if (!v.contains(w)) throw ContainmentError("quotient_dim: subspace is not contained in the ambient subspace");
  return v.dim() - w.dim();
}

/// { x : m x in w }
inline Subspace preimage(const RatMatrix& m, const Subspace& w) {
  if (m.rows() != w.ambient_dim()) throw DimensionMismatch("preimage: target dimension mismatch");
  const Subspace k = kernel_basis(RatMatrix::hstack(m, -w.basis()));
  std::vector<std::size_t> head(m.cols());
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
  return Subspace::span(k.basis().select_rows(head));
}

/// m applied to a subspace: span(m * basis).
inline Subspace apply(const RatMatrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw DimensionMismatch("apply: source dimension mismatch");
  return Subspace::span(m * s.basis());
}

/// Some X with a X = b, or nullopt when the system is inconsistent.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row count mismatch");
  const Echelon e = rref(RatMatrix::hstack(a, b), a.cols());
  if (!e.residual.empty()) return std::nullopt;
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  for (std::size_t r = 0; r < e.rows.size(); ++r)
    for (const auto& en : e.rows[r])
      if (en.index >= a.cols()) t.emplace_back(e.pivots[r], en.index - a.cols(), en.value);
  return RatMatrix::from_triplets(a.cols(), b.cols(), std::move(t));
}

/// Block-diagonal matrix from square or rectangular blocks.
inline RatMatrix block_diagonal(std::span<const RatMatrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  std::size_t ro = 0;
  std::size_t co = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (const auto& e : b.row(i)) t.emplace_back(ro + i, co + e.index, e.value);
    ro += b.rows();
    co += b.cols();
  }
  return RatMatrix::from_triplets(rows, cols, std::move(t));
}

}  // namespace dgcyc
