#pragma once

// Cochain spaces C^p(A)_q = Hom((A^{(p+1)})_q, k) and the operators acting
// on them: cofaces, codegeneracies, b, b', delta, Lambda, Nabla, s, B, H.
//
// The engine is generic over a generator source. A dga is a source whose
// tuples are all index tuples; a dg-category is a source whose tuples are
// composable loops a_0 <- a_1 <- ... <- a_p <- a_0 (the object tuple is
// implicit in the hom basis elements).
//
// Matrices follow the pullback convention: an operator T on cochains is
// stored with rows indexed by the target dual basis and columns by the
// source dual basis, (T f)(t) = sum_s T[t][s] f(s).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dga.hpp"
#include "exact_linalg.hpp"

namespace dgcyc {

using Tuple = std::vector<std::uint16_t>;

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
concept GeneratorSource = requires(const S& s, std::size_t i) {
  { s.generator_count() } -> std::convertible_to<std::size_t>;
  { s.degree(i) } -> std::convertible_to<int>;
  { s.product(i, i) } -> std::convertible_to<SparseVec>;
  { s.differential(i) } -> std::convertible_to<SparseVec>;
  { s.composable(i, i) } -> std::convertible_to<bool>;
  { s.identity_after(i) } -> std::convertible_to<std::size_t>;
  { s.max_degree() } -> std::convertible_to<int>;
};

class DgaSource {
 public:
  explicit DgaSource(Dga a) : a_(std::move(a)) {}
  const Dga& algebra() const { return a_; }
  std::size_t generator_count() const { return a_.dim(); }
  int degree(std::size_t i) const { return a_.degree(i); }
  const SparseVec& product(std::size_t i, std::size_t j) const { return a_.product(i, j); }
  const SparseVec& differential(std::size_t i) const { return a_.differential(i); }
  bool composable(std::size_t, std::size_t) const { return true; }
  std::size_t identity_after(std::size_t) const { return a_.unit(); }
  int max_degree() const { return a_.max_degree(); }
  const std::string& label(std::size_t i) const { return a_.label(i); }

 private:
  Dga a_;
};

struct EngineOptions {
  // Negative control: drops the (-1)^p factor from the cyclic operator.
  bool lambda_fault = false;
  std::size_t max_cell_dim = 20000;
};

enum class Op : int { coface, codegeneracy, b, bprime, delta, lambda, nabla, s, B, H, one_minus_lambda };

template <GeneratorSource Src>
class CochainEngine {
 public:
  explicit CochainEngine(Src src, EngineOptions opt = {}) : src_(std::move(src)), opt_(opt) {}

  const Src& source() const { return src_; }
  const EngineOptions& options() const { return opt_; }
  int max_degree() const { return src_.max_degree(); }

  /// Ordered basis of (A^{(len)})_q: composable loops of length len, lexicographic.
  const std::vector<Tuple>& tuples(std::size_t len, int q) const {
    std::lock_guard lock(mu_);
    return tuples_locked(len, q).list;
  }

  /// dim C^p(A)_q
  std::size_t dim(int p, int q) const {
    if (p < 0 || q < 0) return 0;
    return tuples(static_cast<std::size_t>(p) + 1, q).size();
  }

  /// Index of a tuple in the basis of its length and degree, or npos.
  std::size_t index_of(const Tuple& t, int q) const {
    std::lock_guard lock(mu_);
    const auto& b = tuples_locked(t.size(), q);
    auto it = b.index.find(t);
    return it == b.index.end() ? npos : it->second;
  }

  int tuple_degree(const Tuple& t) const {
    int d = 0;
    for (auto g : t) d += src_.degree(g);
    return d;
  }

  // ---- elementary operators -------------------------------------------------

  /// d^i : C^p_q -> C^{p+1}_q, 0 <= i <= p+1.
  const RatMatrix& coface(int i, int p, int q) const {
    return cached(Op::coface, i, p, q, [&] { return build_coface(i, p, q); });
  }

  /// sigma^i : C^{p+1}_q -> C^p_q, inserts the identity after a_i, 0 <= i <= p.
  const RatMatrix& codegeneracy(int i, int p, int q) const {
    return cached(Op::codegeneracy, i, p, q, [&] { return build_codegeneracy(i, p, q); });
  }

  /// b : C^p_q -> C^{p+1}_q
  const RatMatrix& b(int p, int q) const {
    return cached(Op::b, 0, p, q, [&] { return alternating(p, q, p + 1); });
  }

  /// b' : C^p_q -> C^{p+1}_q, the sum stops one coface short of b.
  const RatMatrix& bprime(int p, int q) const {
    return cached(Op::bprime, 0, p, q, [&] { return alternating(p, q, p); });
  }

  /// delta : C^p_q -> C^p_{q+1}, (delta f) = (-1)^q f o phi^{(p+1)}.
  const RatMatrix& delta(int p, int q) const {
    return cached(Op::delta, 0, p, q, [&] { return build_delta(p, q); });
  }

  /// Lambda : C^p_q -> C^p_q
  const RatMatrix& lambda(int p, int q) const {
    return cached(Op::lambda, 0, p, q, [&] { return build_lambda(p, q); });
  }

  const RatMatrix& one_minus_lambda(int p, int q) const {
    return cached(Op::one_minus_lambda, 0, p, q, [&] { return RatMatrix::identity(dim(p, q)) - lambda(p, q); });
  }

  /// Nabla = sum_{i=0}^{p} Lambda^i
  const RatMatrix& nabla(int p, int q) const {
    return cached(Op::nabla, 0, p, q, [&] {
      const RatMatrix& l = lambda(p, q);
      RatMatrix acc = RatMatrix::identity(dim(p, q));
      RatMatrix pw = acc;
      for (int i = 1; i <= p; ++i) {
        pw = l * pw;
        acc = acc + pw;
      }
      return acc;
    });
  }

  /// s : C^{p+1}_q -> C^p_q, s = (-1)^p sigma^p.
  const RatMatrix& s(int p, int q) const {
    return cached(Op::s, 0, p, q, [&] { return Rat(koszul(p)) * codegeneracy(p, p, q); });
  }

  /// B : C^p_q -> C^{p-1}_q, B = Nabla s (1 - Lambda), p >= 1.
  const RatMatrix& connes_B(int p, int q) const {
    if (p < 1) throw std::invalid_argument("B is defined on C^p only for p >= 1");
    return cached(Op::B, 0, p, q, [&] { return nabla(p - 1, q) * (s(p - 1, q) * one_minus_lambda(p, q)); });
  }

  /// H = (1/(p+1)) sum_{i=0}^{p} (i+1) Lambda^i
  const RatMatrix& homotopy_H(int p, int q) const {
    return cached(Op::H, 0, p, q, [&] {
      const RatMatrix& l = lambda(p, q);
      RatMatrix pw = RatMatrix::identity(dim(p, q));
      RatMatrix acc = pw;
      for (int i = 1; i <= p; ++i) {
        pw = l * pw;
        acc = acc + Rat(i + 1) * pw;
      }
      return Rat(1, p + 1) * acc;
    });
  }

 private:
  struct BasisCache {
    std::vector<Tuple> list;
    std::map<Tuple, std::size_t> index;
  };

  const BasisCache& tuples_locked(std::size_t len, int q) const {
    auto key = std::make_pair(len, q);
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    BasisCache bc;
    if (len > 0 && q >= 0 && q <= static_cast<int>(len) * src_.max_degree()) {
      Tuple cur;
      enumerate(len, q, cur, bc.list);
    }
    if (bc.list.size() > opt_.max_cell_dim)
      throw ResourceLimit("cochain cell of arity " + std::to_string(len - 1) + " and degree " + std::to_string(q) +
                          " has dimension " + std::to_string(bc.list.size()) + ", above the limit " +
                          std::to_string(opt_.max_cell_dim));
    for (std::size_t k = 0; k < bc.list.size(); ++k) bc.index.emplace(bc.list[k], k);
    return bases_.emplace(key, std::move(bc)).first->second;
  }

  void enumerate(std::size_t len, int q, Tuple& cur, std::vector<Tuple>& out) const {
    const int remaining_slots = static_cast<int>(len - cur.size());
    if (remaining_slots == 0) {
      if (q == 0 && src_.composable(cur.back(), cur.front())) out.push_back(cur);
      return;
    }
    if (q < 0 || q > remaining_slots * src_.max_degree()) return;
    for (std::size_t g = 0; g < src_.generator_count(); ++g) {
      const int d = src_.degree(g);
      if (d > q) continue;
      if (!cur.empty() && !src_.composable(cur.back(), g)) continue;
      cur.push_back(static_cast<std::uint16_t>(g));
      enumerate(len, q - d, cur, out);
      cur.pop_back();
    }
  }

  template <class F>
  const RatMatrix& cached(Op op, int i, int p, int q, F&& build) const {
    auto key = std::make_tuple(static_cast<int>(op), i, p, q);
    {
      std::lock_guard lock(mu_);
      auto it = ops_.find(key);
      if (it != ops_.end()) return it->second;
    }
    RatMatrix m = build();
    std::lock_guard lock(mu_);
    return ops_.emplace(key, std::move(m)).first->second;
  }

  // Row t of a pullback matrix: expresses (T f)(t) through values f(s).
  using Triplets = std::vector<std::tuple<std::size_t, std::size_t, Rat>>;

  RatMatrix build_coface(int i, int p, int q) const {
    if (p < 0 || i < 0 || i > p + 1) throw std::out_of_range("coface index out of range");
    const auto& tgt = tuples(static_cast<std::size_t>(p) + 2, q);
    const std::size_t src_dim = dim(p, q);
    Triplets t;
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      const Tuple& a = tgt[r];
      if (i <= p) {
        for (const auto& e : src_.product(a[i], a[i + 1])) {
          Tuple s(a.begin(), a.begin() + i);
          s.push_back(static_cast<std::uint16_t>(e.index));
          s.insert(s.end(), a.begin() + i + 2, a.end());
          t.emplace_back(r, index_of(s, q), e.value);
        }
      } else {
        long long before = 0;
        for (int k = 0; k <= p; ++k) before += src_.degree(a[k]);
        const int sign = koszul(before * src_.degree(a[p + 1]));
        for (const auto& e : src_.product(a[p + 1], a[0])) {
          Tuple s;
          s.push_back(static_cast<std::uint16_t>(e.index));
          s.insert(s.end(), a.begin() + 1, a.begin() + p + 1);
          t.emplace_back(r, index_of(s, q), Rat(sign) * e.value);
        }
      }
    }
    return RatMatrix::from_triplets(tgt.size(), src_dim, std::move(t));
  }

  RatMatrix build_codegeneracy(int i, int p, int q) const {
    if (p < 0 || i < 0 || i > p) throw std::out_of_range("codegeneracy index out of range");
    const auto& tgt = tuples(static_cast<std::size_t>(p) + 1, q);
    Triplets t;
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      Tuple s(tgt[r].begin(), tgt[r].begin() + i + 1);
      s.push_back(static_cast<std::uint16_t>(src_.identity_after(tgt[r][i])));
      s.insert(s.end(), tgt[r].begin() + i + 1, tgt[r].end());
      t.emplace_back(r, index_of(s, q), Rat(1));
    }
    return RatMatrix::from_triplets(tgt.size(), dim(p + 1, q), std::move(t));
  }

  RatMatrix alternating(int p, int q, int last) const {
    RatMatrix acc(dim(p + 1, q), dim(p, q));
    for (int i = 0; i <= last; ++i) acc = acc + Rat(koszul(i)) * coface(i, p, q);
    return acc;
  }

  RatMatrix build_delta(int p, int q) const {
    const auto& tgt = tuples(static_cast<std::size_t>(p) + 1, q + 1);
    Triplets t;
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      const Tuple& a = tgt[r];
      long long omega = 0;  // degrees of a_0 .. a_{i-1}
      for (std::size_t i = 0; i < a.size(); ++i) {
        const int sign = koszul(q) * koszul(omega);
        for (const auto& e : src_.differential(a[i])) {
          Tuple s = a;
          s[i] = static_cast<std::uint16_t>(e.index);
          t.emplace_back(r, index_of(s, q), Rat(sign) * e.value);
        }
        omega += src_.degree(a[i]);
      }
    }
    return RatMatrix::from_triplets(tgt.size(), dim(p, q), std::move(t));
  }

  RatMatrix build_lambda(int p, int q) const {
    const auto& tgt = tuples(static_cast<std::size_t>(p) + 1, q);
    Triplets t;
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      const Tuple& a = tgt[r];
      long long before = 0;
      for (int k = 0; k < p; ++k) before += src_.degree(a[k]);
      const long long exponent = before * src_.degree(a[p]) + (opt_.lambda_fault ? 0 : p);
      Tuple s;
      s.push_back(a[p]);
      s.insert(s.end(), a.begin(), a.begin() + p);
      t.emplace_back(r, index_of(s, q), Rat(koszul(exponent)));
    }
    return RatMatrix::from_triplets(tgt.size(), tgt.size(), std::move(t));
  }

  Src src_;
  EngineOptions opt_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, int>, BasisCache> bases_;
  mutable std::map<std::tuple<int, int, int, int>, RatMatrix> ops_;
};

}  // namespace dgcyc
