#pragma once

// The Hochschild bicomplex and its total complex.
//
// Two conventions share this header:
//  * coefficients in the dual A*: cells C^p(A)_q = Hom((A^{(p+1)})_q, k),
//    handled by CochainEngine (this also covers dg-categories);
//  * general coefficients M: cells EH(A, M)^{p,q} = Hom(A^{(p)}, M)^q.
// For M = A* the two agree with the arity shifted by one.
// Total differential in both cases: d = b + (-1)^p delta.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "cochains.hpp"
#include "complex.hpp"
#include "dga.hpp"

namespace dgcyc {

template <GeneratorSource Src>
using EnginePtr = std::shared_ptr<const CochainEngine<Src>>;

template <GeneratorSource Src>
EnginePtr<Src> make_engine(Src src, EngineOptions opt = {}) {
  return std::make_shared<const CochainEngine<Src>>(std::move(src), opt);
}

inline EnginePtr<DgaSource> make_engine(const Dga& a, EngineOptions opt = {}) {
  return make_engine(DgaSource(a), opt);
}

// ---- operator wrappers (dual coefficients) --------------------------------

template <GeneratorSource Src>
const RatMatrix& coface_matrix(const CochainEngine<Src>& e, int i, int p, int q) {
  return e.coface(i, p, q);
}

template <GeneratorSource Src>
const RatMatrix& hochschild_b(const CochainEngine<Src>& e, int p, int q, bool primed = false) {
  return primed ? e.bprime(p, q) : e.b(p, q);
}

template <GeneratorSource Src>
const RatMatrix& internal_delta(const CochainEngine<Src>& e, int p, int q) {
  return e.delta(p, q);
}

/// tensor_power_basis(p, q): index tuples of length p with degree sum q.
inline std::vector<Tuple> tensor_power_basis(const Dga& a, std::size_t p, int q) {
  if (p == 0) throw std::invalid_argument("tensor_power_basis: p must be at least 1");
  CochainEngine<DgaSource> e{DgaSource(a)};
  return e.tuples(p, q);
}

/// phi^{(p)} : (A^{(p)})_q -> (A^{(p)})_{q-1}, Koszul sign (-1)^{omega_{i-1}} on slot i.
/// Columns index the degree-q tuples, rows the degree-(q-1) tuples.
inline RatMatrix tensor_diff_matrix(const Dga& a, std::size_t p, int q) {
  CochainEngine<DgaSource> e{DgaSource(a)};
  const auto& src = e.tuples(p, q);
  const std::size_t rows = q >= 1 ? e.tuples(p, q - 1).size() : 0;
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  for (std::size_t c = 0; c < src.size(); ++c) {
    long long omega = 0;
    for (std::size_t i = 0; i < p; ++i) {
      for (const auto& en : a.differential(src[c][i])) {
        Tuple s = src[c];
        s[i] = static_cast<std::uint16_t>(en.index);
        t.emplace_back(e.index_of(s, q - 1), c, Rat(koszul(omega)) * en.value);
      }
      omega += a.degree(src[c][i]);
    }
  }
  return RatMatrix::from_triplets(rows, src.size(), std::move(t));
}

// ---- total complex 𝒯(EH(A)) with dual coefficients ------------------------

/// Cells (p, q, 0) of total degree p + q, ascending p.
template <GeneratorSource Src>
class EHComplex : public TotalComplex {
 public:
  explicit EHComplex(EnginePtr<Src> e) : e_(std::move(e)) {}
  const CochainEngine<Src>& engine() const { return *e_; }

  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int p = 0; p <= n; ++p) out.push_back({p, n - p, 0});
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return e_->dim(k[0], k[1]); }
  std::vector<Arrow> arrows(const CellKey& k) const override {
    const int p = k[0];
    const int q = k[1];
    return {{{p + 1, q, 0}, e_->b(p, q)}, {{p, q + 1, 0}, Rat(koszul(p)) * e_->delta(p, q)}};
  }

 private:
  EnginePtr<Src> e_;
};

/// One row of the bicomplex: C^*(A)_s with b only, cells (m, s, 0) in degree m.
template <GeneratorSource Src>
class HochschildRow : public TotalComplex {
 public:
  HochschildRow(EnginePtr<Src> e, int s) : e_(std::move(e)), s_(s) {}
  std::vector<CellKey> cells(int n) const override { return {{n, s_, 0}}; }
  std::size_t cell_dim(const CellKey& k) const override { return e_->dim(k[0], k[1]); }
  std::vector<Arrow> arrows(const CellKey& k) const override { return {{{k[0] + 1, s_, 0}, e_->b(k[0], s_)}}; }

 private:
  EnginePtr<Src> e_;
  int s_;
};

template <GeneratorSource Src>
std::size_t hh_dim(const EnginePtr<Src>& e, int n) {
  return EHComplex<Src>(e).cohomology_dim(n);
}

/// HHP^m_s: cohomology at arity m of the internal-degree-s row.
template <GeneratorSource Src>
std::size_t hhp_dim(const CochainEngine<Src>& e, int m, int s) {
  if (m < 0 || s < 0) return 0;
  const std::size_t d = e.dim(m, s);
  const std::size_t out = rank(e.b(m, s));
  const std::size_t in = m >= 1 ? rank(e.b(m - 1, s)) : 0;
  return d - out - in;
}

/// Projection of 𝒯(EH(A)) onto the internal-degree-0 row, a cochain map
/// to the Hochschild complex of A^0 (rows r >= 1 form a subcomplex).
template <GeneratorSource Src>
CochainMap row_zero_projection(const EHComplex<Src>& eh, const HochschildRow<Src>& row) {
  CochainMap f;
  f.source = &eh;
  f.target = &row;
  f.at = [&eh, &row](int n) {
    return assemble_blocks(row.layout(n), eh.layout(n), [&](const CellKey& k) {
      std::vector<std::pair<CellKey, RatMatrix>> out;
      if (k[1] == 0) out.emplace_back(k, RatMatrix::identity(eh.cell_dim(k)));
      return out;
    });
  };
  return f;
}

// ---- general coefficients --------------------------------------------------

/// EH(A, M)^{p,q}: basis pairs (T, mu), T a p-tuple of degree j, mu of degree q - j.
class BimoduleHochschild : public TotalComplex {
 public:
  BimoduleHochschild(Dga a, DgBimodule m, EngineOptions opt = {})
      : a_(std::move(a)), m_(std::move(m)), e_(DgaSource(a_), opt) {
    min_m_ = 0;
    max_m_ = 0;
    bool first = true;
    for (int d : m_.degrees) {
      min_m_ = first ? d : std::min(min_m_, d);
      max_m_ = first ? d : std::max(max_m_, d);
      first = false;
    }
  }

  struct Basis {
    std::vector<std::pair<Tuple, std::size_t>> list;
    std::map<std::pair<Tuple, std::size_t>, std::size_t> index;
  };

  const Basis& basis(int p, int q) const {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(p, q);
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    Basis b;
    const int jmax = p * a_.max_degree();
    for (int j = 0; j <= jmax; ++j) {
      std::vector<Tuple> ts;
      if (p == 0) {
        if (j == 0) ts.push_back({});
      } else {
        ts = e_.tuples(static_cast<std::size_t>(p), j);
      }
      for (const auto& t : ts)
        for (std::size_t mu = 0; mu < m_.dim(); ++mu)
          if (m_.degrees[mu] == q - j) b.list.emplace_back(t, mu);
    }
    for (std::size_t k = 0; k < b.list.size(); ++k) b.index.emplace(b.list[k], k);
    return bases_.emplace(key, std::move(b)).first->second;
  }

  std::size_t cell_dim_pq(int p, int q) const { return p < 0 ? 0 : basis(p, q).list.size(); }

  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int p = 0; n - p >= min_m_; ++p) out.push_back({p, n - p, 0});
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return cell_dim_pq(k[0], k[1]); }
  std::vector<Arrow> arrows(const CellKey& k) const override {
    const int p = k[0];
    const int q = k[1];
    return {{{p + 1, q, 0}, b(p, q)}, {{p, q + 1, 0}, Rat(koszul(p)) * delta(p, q)}};
  }

  /// d^i : EH^{p,q} -> EH^{p+1,q}, 0 <= i <= p+1
  RatMatrix coface(int i, int p, int q) const {
    if (i < 0 || i > p + 1) throw std::out_of_range("coface index out of range");
    const Basis& src = basis(p, q);
    const Basis& tgt = basis(p + 1, q);
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    // Iterate target tuples T' paired with every source value mu.
    std::map<Tuple, bool> seen;
    for (const auto& [tp, mu_t] : tgt.list) {
      if (seen.count(tp)) continue;
      seen[tp] = true;
      const int j = tuple_degree(tp);
      if (i == 0) {
        Tuple rest(tp.begin() + 1, tp.end());
        const int sign = koszul(static_cast<long long>(a_.degree(tp[0])) * q);
        for (std::size_t mu = 0; mu < m_.dim(); ++mu) {
          auto sc = src.index.find({rest, mu});
          if (sc == src.index.end()) continue;
          for (const auto& e : m_.act_left(tp[0], mu)) add(t, tgt, tp, e.index, sc->second, Rat(sign) * e.value);
        }
      } else if (i == p + 1) {
        Tuple rest(tp.begin(), tp.end() - 1);
        for (std::size_t mu = 0; mu < m_.dim(); ++mu) {
          auto sc = src.index.find({rest, mu});
          if (sc == src.index.end()) continue;
          for (const auto& e : m_.act_right(mu, tp.back())) add(t, tgt, tp, e.index, sc->second, e.value);
        }
      } else {
        for (const auto& pe : a_.product(tp[i - 1], tp[i])) {
          Tuple s(tp.begin(), tp.begin() + (i - 1));
          s.push_back(static_cast<std::uint16_t>(pe.index));
          s.insert(s.end(), tp.begin() + (i + 1), tp.end());
          for (std::size_t mu = 0; mu < m_.dim(); ++mu) {
            if (m_.degrees[mu] != q - j) continue;
            auto sc = src.index.find({s, mu});
            if (sc == src.index.end()) continue;
            add(t, tgt, tp, mu, sc->second, pe.value);
          }
        }
      }
    }
    return RatMatrix::from_triplets(tgt.list.size(), src.list.size(), std::move(t));
  }

  RatMatrix b(int p, int q) const {
    RatMatrix acc(cell_dim_pq(p + 1, q), cell_dim_pq(p, q));
    for (int i = 0; i <= p + 1; ++i) acc = acc + Rat(koszul(i)) * coface(i, p, q);
    return acc;
  }

  /// delta f = phi_M o f - (-1)^q f o phi^{(p)}
  RatMatrix delta(int p, int q) const {
    const Basis& src = basis(p, q);
    const Basis& tgt = basis(p, q + 1);
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (std::size_t c = 0; c < src.list.size(); ++c) {
      const auto& [tp, mu] = src.list[c];
      for (const auto& e : m_.diff[mu]) t.emplace_back(tgt.index.at({tp, e.index}), c, e.value);
    }
    for (std::size_t r = 0; r < tgt.list.size(); ++r) {
      const auto& [tp, mu] = tgt.list[r];
      long long omega = 0;
      for (std::size_t i = 0; i < tp.size(); ++i) {
        for (const auto& e : a_.differential(tp[i])) {
          Tuple s = tp;
          s[i] = static_cast<std::uint16_t>(e.index);
          auto sc = src.index.find({s, mu});
          if (sc == src.index.end()) continue;
          t.emplace_back(r, sc->second, Rat(-koszul(q) * koszul(omega)) * e.value);
        }
        omega += a_.degree(tp[i]);
      }
    }
    return RatMatrix::from_triplets(tgt.list.size(), src.list.size(), std::move(t));
  }

  const Dga& algebra() const { return a_; }
  const DgBimodule& bimodule() const { return m_; }

 private:
  int tuple_degree(const Tuple& t) const {
    int d = 0;
    for (auto g : t) d += a_.degree(g);
    return d;
  }

  static void add(std::vector<std::tuple<std::size_t, std::size_t, Rat>>& t, const Basis& tgt, const Tuple& tp,
                  std::size_t mu, std::size_t col, Rat v) {
    auto it = tgt.index.find({tp, mu});
    if (it == tgt.index.end()) throw std::logic_error("Hochschild coface leaves the target basis");
    t.emplace_back(it->second, col, std::move(v));
  }

  Dga a_;
  DgBimodule m_;
  CochainEngine<DgaSource> e_;
  int min_m_ = 0;
  int max_m_ = 0;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Basis> bases_;
};

inline std::size_t hh_dim(const Dga& a, const DgBimodule& m, int n) { return BimoduleHochschild(a, m).cohomology_dim(n); }

/// HHP with general coefficients: the b-cohomology of the internal-degree-s row.
inline std::size_t hhp_dim(const BimoduleHochschild& eh, int m, int s) {
  if (m < 0) return 0;
  const std::size_t d = eh.cell_dim_pq(m, s);
  const std::size_t out = rank(eh.b(m, s));
  const std::size_t in = m >= 1 ? rank(eh.b(m - 1, s)) : 0;
  return d - out - in;
}

}  // namespace dgcyc
