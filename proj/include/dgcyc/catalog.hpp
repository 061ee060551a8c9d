#pragma once

// Builtin example algebras and a seeded generator of small random dgas.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dga.hpp"
#include "dgcat.hpp"

namespace dgcyc {

namespace detail {

inline SparseVec term(std::size_t i, long c = 1) { return SparseVec{{i, Rat(c)}}; }

}  // namespace detail

/// k itself.
inline DgaPresentation ground_field_presentation() {
  DgaPresentation p;
  p.name = "ground_field";
  p.labels = {"1"};
  p.degrees = {0};
  p.unit = 0;
  return p;
}

/// k[x]/(x^2), |x| = 0.
inline DgaPresentation dual_numbers_presentation() {
  DgaPresentation p;
  p.name = "dual_numbers";
  p.labels = {"1", "x"};
  p.degrees = {0, 0};
  p.unit = 0;
  return p;
}

/// Exterior algebra on one generator y, |y| = 1, zero differential.
inline DgaPresentation exterior_presentation() {
  DgaPresentation p;
  p.name = "exterior";
  p.labels = {"1", "y"};
  p.degrees = {0, 1};
  p.unit = 0;
  return p;
}

/// k[x]/(x^3), |x| = 2, zero differential.
inline DgaPresentation truncated_poly_presentation() {
  DgaPresentation p;
  p.name = "truncated_poly";
  p.labels = {"1", "x", "xx"};
  p.degrees = {0, 2, 4};
  p.unit = 0;
  p.products.emplace_back(1, 1, detail::term(2));
  return p;
}

/// k[x]/(x^2) tensor the exterior algebra on y: graded-commutative,
/// |x| = 0, |y| = 1, x^2 = y^2 = 0, d(y) = x.
inline DgaPresentation koszul_presentation() {
  DgaPresentation p;
  p.name = "koszul";
  p.labels = {"1", "x", "y", "xy"};
  p.degrees = {0, 0, 1, 1};
  p.unit = 0;
  p.products.emplace_back(1, 2, detail::term(3));  // x*y = xy
  p.products.emplace_back(2, 1, detail::term(3));  // y*x = xy
  p.differential.emplace_back(2, detail::term(1)); // d(y) = x
  return p;
}

inline std::vector<DgaPresentation> catalog_presentations() {
  return {ground_field_presentation(), dual_numbers_presentation(), exterior_presentation(),
          truncated_poly_presentation(), koszul_presentation()};
}

inline std::vector<Dga> catalog_dgas() {
  std::vector<Dga> out;
  for (const auto& p : catalog_presentations()) out.push_back(make_dga(p));
  return out;
}

/// Path category of the A2 quiver 1 -> 2 with one arrow of degree 0, zero differential.
inline CategoryPresentation a2_path_presentation() {
  CategoryPresentation p;
  p.name = "a2_path";
  p.objects = {"1", "2"};
  p.morphisms = {{"e1", 0, 0, 0}, {"e2", 0, 1, 1}, {"a", 0, 0, 1}};
  p.identities = {0, 1};
  return p;
}

inline std::vector<CategoryPresentation> catalog_categories() { return {a2_path_presentation()}; }

/// A = k + V + W with V.V in W and all other products among V, W zero,
/// so every triple product of positive-part elements vanishes. The
/// differential is drawn at random and kept only if the axioms hold.
/// Total dimension <= max_dim, degrees <= max_deg.
inline Dga random_dga(std::uint64_t seed, std::size_t max_dim = 4, int max_deg = 3) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int attempt = 0;; ++attempt) {
    const std::size_t extra = static_cast<std::size_t>(uni(1, static_cast<int>(max_dim) - 1));
    const std::size_t nv = static_cast<std::size_t>(uni(1, static_cast<int>(extra)));
    const std::size_t n = 1 + extra;
    DgaPresentation p;
    p.name = "random_" + std::to_string(seed);
    p.unit = 0;
    p.labels.push_back("1");
    p.degrees.push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
      p.labels.push_back((i <= nv ? "v" : "w") + std::to_string(i));
      p.degrees.push_back(uni(0, max_deg));
    }
    for (std::size_t i = 1; i <= nv; ++i)
      for (std::size_t j = 1; j <= nv; ++j) {
        SparseVec v;
        for (std::size_t k = nv + 1; k < n; ++k)
          if (p.degrees[k] == p.degrees[i] + p.degrees[j] && uni(0, 2) > 0) {
            const int c = uni(-2, 2);
            if (c != 0) v.push_back({k, Rat(c)});
          }
        if (!v.empty()) p.products.emplace_back(i, j, v);
      }
    const bool want_diff = seed % 3 != 0 && attempt < 500;
    if (want_diff) {
      for (std::size_t i = 1; i < n; ++i) {
        SparseVec v;
        for (std::size_t k = 0; k < n; ++k)
          if (p.degrees[k] == p.degrees[i] - 1 && uni(0, 1) == 0) {
            const int c = uni(-2, 2);
            if (c != 0) v.push_back({k, Rat(c)});
          }
        if (!v.empty()) p.differential.emplace_back(i, v);
      }
      if (p.differential.empty()) continue;
    }
    auto res = validate_dga(p);
    if (res.ok()) return std::move(*res.value);
  }
}

/// Degree-preserving random change of basis fixing the unit.
inline Dga random_rebase(const Dga& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (i == a.unit()) {
        t.emplace_back(i, i, Rat(1));
        continue;
      }
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (j != a.unit() && a.degree(i) == a.degree(j)) {
          const int c = i == j ? uni(1, 3) : uni(-2, 2);
          if (c != 0) t.emplace_back(i, j, Rat(c));
        }
    }
    auto g = RatMatrix::from_triplets(a.dim(), a.dim(), std::move(t));
    if (auto b = change_basis(a, g)) return *b;
  }
}

}  // namespace dgcyc
