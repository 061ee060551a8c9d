#pragma once

// Total complexes of multicomplexes with finite-dimensional cells.
// A concrete complex lists its cells in each total degree and the blocks
// of the differential leaving each cell; slices and ranks are cached.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <exception>
#include <tuple>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "exact_linalg.hpp"

namespace dgcyc {

using CellKey = std::array<int, 3>;

/// One pass/fail entry of a verification report.
struct Check {
  std::string family;
  std::string name;
  std::string where;
  bool pass = true;
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

inline std::string key_string(const CellKey& k) {
  return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
}

struct CellBlock {
  CellKey key;
  std::size_t dim = 0;
  std::size_t offset = 0;
};

struct Arrow {
  CellKey to;
  RatMatrix map;  // rows: target cell, cols: source cell
};

/// One total degree: cell layout plus the differential to degree + 1.
struct ComplexSlice {
  int degree = 0;
  std::vector<CellBlock> cells;
  std::size_t dim = 0;
  RatMatrix d_out;

  const CellBlock* find(const CellKey& k) const {
    for (const auto& c : cells)
      if (c.key == k) return &c;
    return nullptr;
  }
};

/// Default worker count: DGCYC_JOBS if set, else 1.
inline unsigned default_jobs() {
  if (const char* e = std::getenv("DGCYC_JOBS")) {
    const long v = std::strtol(e, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is
/// handled exactly once; callers write results into per-index slots.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

class TotalComplex {
 public:
  virtual ~TotalComplex() = default;

  /// Cells of total degree n, in layout order. Empty for n < 0.
  virtual std::vector<CellKey> cells(int n) const = 0;
  virtual std::size_t cell_dim(const CellKey& k) const = 0;
  /// Differential blocks leaving k; every target lies in degree n + 1.
  virtual std::vector<Arrow> arrows(const CellKey& k) const = 0;

  void set_jobs(unsigned j) { jobs_ = std::max(1u, j); }
  unsigned jobs() const { return jobs_; }

  std::vector<CellBlock> layout(int n) const {
    std::lock_guard lock(mu_);
    return layout_locked(n);
  }

  std::size_t dim(int n) const {
    std::size_t d = 0;
    for (const auto& c : layout(n)) d += c.dim;
    return d;
  }

  /// d^n : C^n -> C^{n+1}
  const RatMatrix& differential(int n) const {
    {
      std::lock_guard lock(mu_);
      auto it = diffs_.find(n);
      if (it != diffs_.end()) return it->second;
    }
    const auto src = layout(n);
    const auto tgt = layout(n + 1);
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto& c : tgt) rows += c.dim;
    for (const auto& c : src) cols += c.dim;
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rat>>> parts(src.size());
    parallel_for(src.size(), jobs_, [&](std::size_t i) {
      if (src[i].dim == 0) return;
      for (auto& a : arrows(src[i].key)) {
        const CellBlock* t = nullptr;
        for (const auto& c : tgt)
          if (c.key == a.to) t = &c;
        if (!t) {
          if (a.map.rows() == 0) continue;
          throw std::logic_error("differential arrow leaves the next total degree");
        }
        if (a.map.rows() != t->dim || a.map.cols() != src[i].dim)
          throw DimensionMismatch("differential block has the wrong shape");
        for (std::size_t r = 0; r < a.map.rows(); ++r)
          for (const auto& e : a.map.row(r)) parts[i].emplace_back(t->offset + r, src[i].offset + e.index, e.value);
      }
    });
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> all;
    for (auto& p : parts) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    RatMatrix d = RatMatrix::from_triplets(rows, cols, std::move(all));
    std::lock_guard lock(mu_);
    return diffs_.emplace(n, std::move(d)).first->second;
  }

  ComplexSlice slice(int n) const {
    ComplexSlice s;
    s.degree = n;
    s.cells = layout(n);
    s.dim = dim(n);
    s.d_out = differential(n);
    return s;
  }

  std::size_t rank_d(int n) const {
    {
      std::lock_guard lock(mu_);
      auto it = ranks_.find(n);
      if (it != ranks_.end()) return it->second;
    }
    const std::size_t r = rank(differential(n));
    std::lock_guard lock(mu_);
    ranks_[n] = r;
    return r;
  }

  std::size_t cohomology_dim(int n) const {
    if (n < 0) return 0;
    return dim(n) - rank_d(n) - rank_d(n - 1);
  }

  Subspace cocycles(int n) const { return kernel_basis(differential(n)); }
  Subspace coboundaries(int n) const { return image(differential(n - 1)); }

  /// Dimension of one cell key's block in degree n, with its offset.
  std::optional<CellBlock> block(int n, const CellKey& k) const {
    for (const auto& c : layout(n))
      if (c.key == k) return c;
    return std::nullopt;
  }

 private:
  const std::vector<CellBlock>& layout_locked(int n) const {
    auto it = layouts_.find(n);
    if (it != layouts_.end()) return it->second;
    std::vector<CellBlock> l;
    std::size_t off = 0;
    if (n >= 0) {
      for (const auto& k : cells(n)) {
        const std::size_t d = cell_dim(k);
        l.push_back({k, d, off});
        off += d;
      }
    }
    return layouts_.emplace(n, std::move(l)).first->second;
  }

  unsigned jobs_ = default_jobs();
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<CellBlock>> layouts_;
  mutable std::map<int, RatMatrix> diffs_;
  mutable std::map<int, std::size_t> ranks_;
};

/// A degreewise linear map between two total complexes.
struct CochainMap {
  const TotalComplex* source = nullptr;
  const TotalComplex* target = nullptr;
  std::function<RatMatrix(int)> at;  // dim target(n) x dim source(n)
};

/// f d = d' f in degree n (maps C^n -> D^{n+1}).
inline bool commutes_with_d(const CochainMap& f, int n) {
  return f.target->differential(n) * f.at(n) == f.at(n + 1) * f.source->differential(n);
}

/// Rank of the map induced on H^n.
inline std::size_t induced_rank(const CochainMap& f, int n) {
  const Subspace z = f.source->cocycles(n);
  const Subspace bd = f.target->coboundaries(n);
  const Subspace img = apply(f.at(n), z);
  return subspace_sum(img, bd).dim() - bd.dim();
}

/// Block-diagonal matrix between two layouts, filled per matching cell pair.
inline RatMatrix assemble_blocks(const std::vector<CellBlock>& tgt, const std::vector<CellBlock>& src,
                                 const std::function<std::vector<std::pair<CellKey, RatMatrix>>(const CellKey&)>& blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& c : tgt) rows += c.dim;
  for (const auto& c : src) cols += c.dim;
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  for (const auto& s : src) {
    if (s.dim == 0) continue;
    for (auto& [to, m] : blocks(s.key)) {
      const CellBlock* tb = nullptr;
      for (const auto& c : tgt)
        if (c.key == to) tb = &c;
      if (!tb) {
        if (m.rows() == 0) continue;
        throw std::logic_error("map block targets a cell outside the layout");
      }
      if (m.rows() != tb->dim || m.cols() != s.dim) throw DimensionMismatch("map block has the wrong shape");
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r)) t.emplace_back(tb->offset + r, s.offset + e.index, e.value);
    }
  }
  return RatMatrix::from_triplets(rows, cols, std::move(t));
}

}  // namespace dgcyc
