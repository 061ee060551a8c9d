#pragma once

// Small dg-categories with finitely many objects and finite-dimensional
// homs. All morphisms share one global basis; a cochain tuple is a loop
// a_0 a_1 ... a_p of composable morphisms (a_i a_{i+1} defined and a_p a_0
// defined), so cochains are functionals on loops, i.e. EH(𝒜, 𝒟) with
// 𝒟(X, Y) = 𝒜(Y, X)^*. The cyclic operator rotates the loop together with
// its object tuple.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cochains.hpp"
#include "cyclic.hpp"
#include "dga.hpp"
#include "hochschild.hpp"
#include "spectral.hpp"

namespace dgcyc {

struct CategoryPresentation {
  struct Morphism {
    std::string label;
    int degree = 0;
    std::size_t source = 0;
    std::size_t target = 0;
  };
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::optional<std::size_t>> identities;  // one per object
  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> compose;  // (g, f, g o f)
  std::vector<std::pair<std::size_t, SparseVec>> differential;
};

class DgCategory {
 public:
  using Morphism = CategoryPresentation::Morphism;

  const std::string& name() const { return name_; }
  std::size_t object_count() const { return objects_.size(); }
  const std::string& object(std::size_t i) const { return objects_[i]; }
  std::size_t dim() const { return mor_.size(); }
  const Morphism& morphism(std::size_t i) const { return mor_[i]; }
  std::size_t identity(std::size_t x) const { return ids_[x]; }
  /// g o f, empty unless source(g) = target(f).
  const SparseVec& compose(std::size_t g, std::size_t f) const { return table_[g * dim() + f]; }
  const SparseVec& differential(std::size_t i) const { return diff_[i]; }
  int max_degree() const {
    int m = 0;
    for (const auto& x : mor_) m = std::max(m, x.degree);
    return m;
  }

  /// Basis indices of 𝒜(X, Y).
  std::vector<std::size_t> hom(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mor_.size(); ++i)
      if (mor_[i].source == x && mor_[i].target == y) out.push_back(i);
    return out;
  }

  SparseVec compose_vec(const SparseVec& g, const SparseVec& f) const {
    SparseVec acc;
    for (const auto& a : g)
      for (const auto& b : f) add_scaled(acc, a.value * b.value, compose(a.index, b.index));
    return acc;
  }
  SparseVec apply_diff(const SparseVec& v) const {
    SparseVec acc;
    for (const auto& e : v) add_scaled(acc, e.value, diff_[e.index]);
    return acc;
  }

  CategoryPresentation to_presentation() const {
    CategoryPresentation p;
    p.name = name_;
    p.objects = objects_;
    p.morphisms = mor_;
    for (auto i : ids_) p.identities.emplace_back(i);
    for (std::size_t g = 0; g < dim(); ++g)
      for (std::size_t f = 0; f < dim(); ++f)
        if (!compose(g, f).empty() && !is_identity(g) && !is_identity(f)) p.compose.emplace_back(g, f, compose(g, f));
    for (std::size_t i = 0; i < dim(); ++i)
      if (!diff_[i].empty()) p.differential.emplace_back(i, diff_[i]);
    return p;
  }

  bool is_identity(std::size_t i) const { return std::find(ids_.begin(), ids_.end(), i) != ids_.end(); }

  friend bool operator==(const DgCategory& a, const DgCategory& b) {
    if (a.name_ != b.name_ || a.objects_ != b.objects_ || a.ids_ != b.ids_ || a.mor_.size() != b.mor_.size()) return false;
    for (std::size_t i = 0; i < a.mor_.size(); ++i) {
      const auto& x = a.mor_[i];
      const auto& y = b.mor_[i];
      if (x.label != y.label || x.degree != y.degree || x.source != y.source || x.target != y.target) return false;
      if (!detail::sparse_equal(a.diff_[i], b.diff_[i])) return false;
    }
    for (std::size_t k = 0; k < a.table_.size(); ++k)
      if (!detail::sparse_equal(a.table_[k], b.table_[k])) return false;
    return true;
  }

 private:
  friend Validated<DgCategory> validate_dgcat(const CategoryPresentation& in);

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> mor_;
  std::vector<std::size_t> ids_;
  std::vector<SparseVec> table_;
  std::vector<SparseVec> diff_;
};

/// Checks every axiom and reports all violations. Structural problems stop
/// validation before the algebraic axioms are evaluated.
inline Validated<DgCategory> validate_dgcat(const CategoryPresentation& in) {
  Validated<DgCategory> out;
  auto diag = [&](std::string fam, std::string msg) { out.diagnostics.push_back({std::move(fam), std::move(msg)}); };
  const std::size_t nobj = in.objects.size();
  const std::size_t n = in.morphisms.size();
  if (nobj == 0) {
    diag("structure", "no objects");
    return out;
  }
  {
    std::set<std::string> seen;
    for (const auto& o : in.objects)
      if (!seen.insert(o).second) diag("duplicate", "object '" + o + "' declared twice");
    seen.clear();
    for (const auto& m : in.morphisms)
      if (!seen.insert(m.label).second) diag("duplicate", "morphism label '" + m.label + "' declared twice");
  }
  for (const auto& m : in.morphisms) {
    if (m.source >= nobj || m.target >= nobj) diag("structure", "morphism '" + m.label + "' has an unknown object");
    if (m.degree < 0) diag("degree", "morphism '" + m.label + "' has negative degree");
  }
  if (in.identities.size() != nobj) diag("unit", "identity list does not match the objects");
  for (std::size_t x = 0; x < std::min(nobj, in.identities.size()); ++x) {
    const auto& id = in.identities[x];
    if (!id) {
      diag("unit", "object '" + in.objects[x] + "' has no identity");
    } else if (*id >= n) {
      diag("unit", "identity of '" + in.objects[x] + "' is out of range");
    } else {
      const auto& m = in.morphisms[*id];
      if (m.source != x || m.target != x) diag("unit", "identity of '" + in.objects[x] + "' is not an endomorphism");
      if (m.degree != 0) diag("unit", "identity of '" + in.objects[x] + "' is not in degree 0");
    }
  }
  if (!out.diagnostics.empty()) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return in.morphisms[a].degree < in.morphisms[b].degree; });
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;

  DgCategory c;
  c.name_ = in.name;
  c.objects_ = in.objects;
  for (std::size_t k = 0; k < n; ++k) c.mor_.push_back(in.morphisms[order[k]]);
  for (const auto& id : in.identities) c.ids_.push_back(pos[*id]);
  const auto& mor = c.mor_;
  auto lab = [&](std::size_t i) { return mor[i].label; };
  auto remap = [&](const SparseVec& v, bool& bad) {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (const auto& e : v) {
      if (e.index >= n) {
        bad = true;
        continue;
      }
      t.emplace_back(0, pos[e.index], e.value);
    }
    return RatMatrix::from_triplets(1, n, std::move(t)).row(0);
  };

  c.table_.assign(n * n, {});
  std::vector<char> given(n * n, 0);
  for (const auto& [g0, f0, v0] : in.compose) {
    if (g0 >= n || f0 >= n) {
      diag("structure", "composition references an unknown morphism");
      continue;
    }
    bool bad = false;
    SparseVec v = remap(v0, bad);
    if (bad) diag("structure", "composition value references an unknown morphism");
    const std::size_t g = pos[g0];
    const std::size_t f = pos[f0];
    if (mor[g].source != mor[f].target) {
      diag("structure", "composite " + lab(g) + "*" + lab(f) + " of non-composable morphisms");
      continue;
    }
    if (given[g * n + f]) {
      diag("duplicate", "composite " + lab(g) + "*" + lab(f) + " given twice");
      continue;
    }
    given[g * n + f] = 1;
    for (const auto& e : v) {
      if (mor[e.index].source != mor[f].source || mor[e.index].target != mor[g].target)
        diag("structure", "composite " + lab(g) + "*" + lab(f) + " has a term " + lab(e.index) + " in the wrong hom");
      if (mor[e.index].degree != mor[g].degree + mor[f].degree)
        diag("degree", "composite " + lab(g) + "*" + lab(f) + " has a term " + lab(e.index) + " of the wrong degree");
    }
    if (c.is_identity(g) || c.is_identity(f)) {
      const std::size_t other = c.is_identity(g) ? f : g;
      if (!detail::sparse_equal(v, unit_vector(other)))
        diag("unit", "identity law fails at " + lab(g) + "*" + lab(f));
    }
    c.table_[g * n + f] = std::move(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idt = c.ids_[mor[i].target];
    const std::size_t ids = c.ids_[mor[i].source];
    if (!given[idt * n + i]) c.table_[idt * n + i] = unit_vector(i);
    if (!given[i * n + ids]) c.table_[i * n + ids] = unit_vector(i);
  }

  c.diff_.assign(n, {});
  std::vector<char> dgiven(n, 0);
  for (const auto& [i0, v0] : in.differential) {
    if (i0 >= n) {
      diag("structure", "differential references an unknown morphism");
      continue;
    }
    bool bad = false;
    SparseVec v = remap(v0, bad);
    if (bad) diag("structure", "differential value references an unknown morphism");
    const std::size_t i = pos[i0];
    if (dgiven[i]) {
      diag("duplicate", "differential of " + lab(i) + " given twice");
      continue;
    }
    dgiven[i] = 1;
    for (const auto& e : v) {
      if (mor[e.index].source != mor[i].source || mor[e.index].target != mor[i].target)
        diag("structure", "d(" + lab(i) + ") has a term " + lab(e.index) + " in another hom");
      if (mor[e.index].degree != mor[i].degree - 1)
        diag("degree", "d(" + lab(i) + ") has a term " + lab(e.index) + " of the wrong degree");
    }
    c.diff_[i] = std::move(v);
  }
  if (!out.diagnostics.empty()) return out;

  for (auto id : c.ids_)
    if (!c.diff_[id].empty()) diag("unit", "identity " + lab(id) + " is not a cycle");
  for (std::size_t i = 0; i < n; ++i)
    if (!c.apply_diff(c.diff_[i]).empty()) diag("differential_square", "d(d(" + lab(i) + ")) != 0");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (mor[g].source != mor[f].target) continue;
      SparseVec lhs = c.apply_diff(c.compose(g, f));
      SparseVec rhs = c.compose_vec(c.diff_[g], unit_vector(f));
      add_scaled(rhs, Rat(koszul(mor[g].degree)), c.compose_vec(unit_vector(g), c.diff_[f]));
      if (!detail::sparse_equal(lhs, rhs)) diag("leibniz", "Leibniz rule fails at (" + lab(g) + ", " + lab(f) + ")");
    }
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g) {
      if (mor[h].source != mor[g].target) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (mor[g].source != mor[f].target) continue;
        SparseVec l = c.compose_vec(c.compose(h, g), unit_vector(f));
        SparseVec r = c.compose_vec(unit_vector(h), c.compose(g, f));
        if (!detail::sparse_equal(l, r))
          diag("associativity", "associativity fails at (" + lab(h) + ", " + lab(g) + ", " + lab(f) + ")");
      }
    }
  if (out.diagnostics.empty()) out.value = std::move(c);
  return out;
}

inline DgCategory make_dgcat(const CategoryPresentation& p) {
  auto r = validate_dgcat(p);
  if (!r.ok()) {
    std::string msg = "invalid dg-category '" + p.name + "'";
    if (!r.diagnostics.empty()) msg += ": " + r.diagnostics.front().message;
    throw std::invalid_argument(msg);
  }
  return std::move(*r.value);
}

/// The one-object category with endomorphisms A.
inline DgCategory one_object(const Dga& a) {
  CategoryPresentation p;
  p.name = a.name();
  p.objects = {"*"};
  for (std::size_t i = 0; i < a.dim(); ++i) p.morphisms.push_back({a.label(i), a.degree(i), 0, 0});
  p.identities = {a.unit()};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != a.unit() && j != a.unit() && !a.product(i, j).empty()) p.compose.emplace_back(i, j, a.product(i, j));
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!a.differential(i).empty()) p.differential.emplace_back(i, a.differential(i));
  return make_dgcat(p);
}

/// Objects of a followed by objects of b, with no morphisms between them.
inline DgCategory disjoint_union(const DgCategory& a, const DgCategory& b) {
  CategoryPresentation p;
  p.name = a.name() + "+" + b.name();
  const std::size_t oa = a.object_count();
  const std::size_t ma = a.dim();
  for (std::size_t x = 0; x < oa; ++x) p.objects.push_back(a.object(x) + "_1");
  for (std::size_t x = 0; x < b.object_count(); ++x) p.objects.push_back(b.object(x) + "_2");
  for (std::size_t i = 0; i < ma; ++i) {
    auto m = a.morphism(i);
    m.label += "_1";
    p.morphisms.push_back(m);
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    auto m = b.morphism(i);
    m.label += "_2";
    m.source += oa;
    m.target += oa;
    p.morphisms.push_back(m);
  }
  for (std::size_t x = 0; x < oa; ++x) p.identities.emplace_back(a.identity(x));
  for (std::size_t x = 0; x < b.object_count(); ++x) p.identities.emplace_back(ma + b.identity(x));
  auto shift = [](const SparseVec& v, std::size_t s) {
    SparseVec o;
    for (const auto& e : v) o.push_back({e.index + s, e.value});
    return o;
  };
  for (const auto& [g, f, v] : a.to_presentation().compose) p.compose.emplace_back(g, f, v);
  for (const auto& [g, f, v] : b.to_presentation().compose) p.compose.emplace_back(g + ma, f + ma, shift(v, ma));
  for (const auto& [i, v] : a.to_presentation().differential) p.differential.emplace_back(i, v);
  for (const auto& [i, v] : b.to_presentation().differential) p.differential.emplace_back(i + ma, shift(v, ma));
  return make_dgcat(p);
}

// ---- cochains on loops ---------------------------------------------------------

class CategorySource {
 public:
  explicit CategorySource(DgCategory c) : c_(std::move(c)) {}
  const DgCategory& category() const { return c_; }
  std::size_t generator_count() const { return c_.dim(); }
  int degree(std::size_t i) const { return c_.morphism(i).degree; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return c_.compose(i, j); }
  const SparseVec& differential(std::size_t i) const { return c_.differential(i); }
  bool composable(std::size_t i, std::size_t j) const { return c_.morphism(i).source == c_.morphism(j).target; }
  std::size_t identity_after(std::size_t i) const { return c_.identity(c_.morphism(i).source); }
  int max_degree() const { return c_.max_degree(); }
  const std::string& label(std::size_t i) const { return c_.morphism(i).label; }

 private:
  DgCategory c_;
};

inline EnginePtr<CategorySource> make_engine(const DgCategory& c, EngineOptions opt = {}) {
  return std::make_shared<const CochainEngine<CategorySource>>(CategorySource(c), opt);
}

struct CatCell {
  std::vector<Tuple> basis;                      // loops a_0 ... a_p
  std::vector<std::vector<std::size_t>> objects;  // (X_0, ..., X_p) with a_{i+1} : X_i -> X_{i+1}, a_0 : X_p -> X_0
  std::size_t dim() const { return basis.size(); }
};

/// Basis of EH(𝒜, 𝒟)^{p,q}: loops of length p + 1 and total degree q.
inline CatCell eh_cat_cell(const EnginePtr<CategorySource>& e, int p, int q) {
  CatCell cell;
  if (p < 0 || q < 0) return cell;
  const auto& c = e->source().category();
  cell.basis = e->tuples(static_cast<std::size_t>(p) + 1, q);
  for (const auto& t : cell.basis) {
    std::vector<std::size_t> obj;
    obj.push_back(c.morphism(t[0]).source);
    for (std::size_t i = 1; i < t.size(); ++i) obj.push_back(c.morphism(t[i]).target);
    cell.objects.push_back(std::move(obj));
  }
  return cell;
}

inline std::size_t hh_cat_dim(const EnginePtr<CategorySource>& e, int n) { return hh_dim(e, n); }
inline std::size_t hc_cat_dim(const EnginePtr<CategorySource>& e, int n, HcMethod m = HcMethod::tricomplex) {
  return hc_dim(e, n, m);
}

struct CatSsReport {
  std::vector<Check> checks;
  std::vector<std::vector<std::size_t>> e2;  // e2[p][q], p, q <= n_max
};

/// F1 on 𝒯(EC(𝒜)): convergence, band vanishing, low-degree formulas and the
/// edge test when the sequence degenerates at E_2.
inline CatSsReport f1_ss_cat(const EnginePtr<CategorySource>& e, int n_max) {
  CatSsReport rep;
  auto conv = convergence_check(e, Filtration::F1, n_max);
  rep.checks.insert(rep.checks.end(), conv.begin(), conv.end());
  auto e1 = e1_identification(e, Filtration::F1, n_max, n_max);
  rep.checks.insert(rep.checks.end(), e1.begin(), e1.end());
  auto low = low_degree_hc(e);
  rep.checks.insert(rep.checks.end(), low.checks.begin(), low.checks.end());
  for (int n = 1; n <= n_max; ++n) {
    auto d = degeneracy_edge_check(e, n);
    rep.checks.insert(rep.checks.end(), d.checks.begin(), d.checks.end());
  }
  FilteredEC<CategorySource> f(e, Filtration::F1);
  rep.e2.assign(static_cast<std::size_t>(n_max) + 1, std::vector<std::size_t>(static_cast<std::size_t>(n_max) + 1));
  for (int p = 0; p <= n_max; ++p)
    for (int q = 0; q <= n_max; ++q) rep.e2[p][q] = f.filtered().page(2, p, q).dim;
  return rep;
}

}  // namespace dgcyc
