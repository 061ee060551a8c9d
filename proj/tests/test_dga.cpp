#include <gtest/gtest.h>

#include <set>

#include "dgcyc/catalog.hpp"
#include "dgcyc/delta.hpp"
#include "dgcyc/hochschild.hpp"

using namespace dgcyc;

TEST(Dga, CatalogValidates) {
  for (const auto& p : catalog_presentations()) {
    auto v = validate_dga(p);
    EXPECT_TRUE(v.ok()) << p.name << ": " << (v.diagnostics.empty() ? "" : v.diagnostics.front().message);
  }
}

TEST(Dga, Multiply) {
  const Dga dn = make_dga(dual_numbers_presentation());
  const auto x = *dn.index_of("x");
  EXPECT_TRUE(detail::sparse_equal(dn.multiply(unit_vector(dn.unit()), unit_vector(x)), unit_vector(x)));
  EXPECT_TRUE(dn.multiply(unit_vector(x), unit_vector(x)).empty());
  const Dga k = make_dga(koszul_presentation());
  EXPECT_TRUE(detail::sparse_equal(k.multiply(unit_vector(*k.index_of("y")), unit_vector(*k.index_of("x"))),
                                   unit_vector(*k.index_of("xy"))));
}

TEST(Dga, TensorPowerBasis) {
  const Dga k1 = make_dga(ground_field_presentation());
  EXPECT_EQ(tensor_power_basis(k1, 3, 0).size(), 1u);
  const Dga ko = make_dga(koszul_presentation());
  EXPECT_TRUE(tensor_power_basis(ko, 2, -1).empty());
  // degree-major basis: 1, x | y, xy
  const auto b = tensor_power_basis(ko, 2, 1);
  ASSERT_EQ(b.size(), 8u);
  EXPECT_EQ(b[0], (Tuple{0, 2}));
  EXPECT_EQ(b[7], (Tuple{3, 1}));
  EXPECT_EQ(tensor_power_basis(ko, 2, 2).size(), 4u);
  EXPECT_TRUE(tensor_power_basis(ko, 2, 3).empty());
}

TEST(Dga, TensorDiff) {
  const Dga ko = make_dga(koszul_presentation());
  // d(y) = x, d(xy) = 0 : columns y, xy ; rows 1, x
  const auto m = tensor_diff_matrix(ko, 1, 1);
  EXPECT_EQ(m, RatMatrix::from_dense({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}));
  const Dga ex = make_dga(exterior_presentation());
  for (int q = 0; q < 4; ++q) EXPECT_TRUE(tensor_diff_matrix(ex, 2, q).is_zero());
  for (const auto& a : catalog_dgas())
    for (std::size_t p = 1; p <= 3; ++p)
      for (int q = 0; q <= static_cast<int>(p) * a.max_degree(); ++q)
        EXPECT_TRUE((tensor_diff_matrix(a, p, q - 1) * tensor_diff_matrix(a, p, q)).is_zero()) << a.name();
  // (y, y) -> (x, y) - (y, x): the second slot picks up (-1)^{|y|}.
  const auto d2 = tensor_diff_matrix(ko, 2, 2);
  const auto src = tensor_power_basis(ko, 2, 2);
  const auto tgt = tensor_power_basis(ko, 2, 1);
  const std::size_t yy = std::find(src.begin(), src.end(), Tuple{2, 2}) - src.begin();
  const std::size_t xy = std::find(tgt.begin(), tgt.end(), Tuple{1, 2}) - tgt.begin();
  const std::size_t yx = std::find(tgt.begin(), tgt.end(), Tuple{2, 1}) - tgt.begin();
  EXPECT_EQ(d2.at(xy, yy), 1);
  EXPECT_EQ(d2.at(yx, yy), -1);
}

TEST(Dga, DualBimodule) {
  for (const auto& a : catalog_dgas()) {
    const auto m = dual_bimodule(a);
    EXPECT_TRUE(validate_bimodule(a, m).empty()) << a.name() << ": " << validate_bimodule(a, m).front().message;
    EXPECT_TRUE(validate_bimodule(a, regular_bimodule(a)).empty()) << a.name();
    EXPECT_EQ(m.dim(), a.dim());
    const auto dd = dual_bimodule(m);
    EXPECT_EQ(dd.dims_by_degree(), regular_bimodule(a).dims_by_degree());
  }
  const auto g = dual_bimodule(make_dga(ground_field_presentation()));
  EXPECT_EQ(g.dim(), 1u);
}

TEST(Dga, RandomPoolIsValid) {
  int with_diff = 0;
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const Dga a = random_dga(s);
    EXPECT_LE(a.dim(), 4u);
    EXPECT_LE(a.max_degree(), 3);
    EXPECT_TRUE(validate_dga(a.to_presentation()).ok());
    if (!a.diff_matrix().is_zero()) ++with_diff;
  }
  EXPECT_GT(with_diff, 0);
  const Dga r = random_rebase(make_dga(koszul_presentation()), 5);
  EXPECT_TRUE(validate_dga(r.to_presentation()).ok());
}

namespace {

DgaPresentation broken_associativity() {
  DgaPresentation p;
  p.name = "nonassoc";
  p.labels = {"1", "a", "b"};
  p.degrees = {0, 0, 0};
  p.unit = 0;
  p.products.emplace_back(1, 1, unit_vector(2));
  p.products.emplace_back(2, 1, unit_vector(1));
  return p;
}

DgaPresentation broken_leibniz() {
  DgaPresentation p;
  p.name = "nonleibniz";
  p.labels = {"1", "u", "v"};
  p.degrees = {0, 1, 1};
  p.unit = 0;
  p.differential.emplace_back(1, unit_vector(0));
  return p;
}

DgaPresentation broken_square() {
  DgaPresentation p;
  p.name = "square";
  p.labels = {"1", "w", "v", "u"};
  p.degrees = {0, 0, 1, 2};
  p.unit = 0;
  p.differential.emplace_back(3, unit_vector(2));
  p.differential.emplace_back(2, unit_vector(1));
  return p;
}

std::set<std::string> families(const DgaPresentation& p) {
  std::set<std::string> s;
  for (const auto& d : validate_dga(p).diagnostics) s.insert(d.family);
  return s;
}

}  // namespace

TEST(Dga, MutationsFailOneFamily) {
  EXPECT_EQ(families(broken_associativity()), std::set<std::string>{"associativity"});
  EXPECT_EQ(families(broken_leibniz()), std::set<std::string>{"leibniz"});
  EXPECT_EQ(families(broken_square()), std::set<std::string>{"differential_square"});
  auto deg = koszul_presentation();
  deg.products.emplace_back(1, 1, unit_vector(2));  // x*x = y has the wrong degree
  EXPECT_EQ(families(deg), std::set<std::string>{"degree"});
  auto nounit = koszul_presentation();
  nounit.unit.reset();
  EXPECT_EQ(families(nounit), std::set<std::string>{"unit"});
}

TEST(Delta, FactorizationExample) {
  DeltaMorphism f(4, 5, {0, 2, 2, 4, 4});
  const auto fac = factorize_delta_morphism(f);
  EXPECT_EQ(fac.eps, (std::vector<std::size_t>{5, 3, 1}));
  EXPECT_EQ(fac.eta, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(recompose(fac, 4), f);
}

TEST(Delta, IdentityAndConstant) {
  const auto id = factorize_delta_morphism(DeltaMorphism::identity(3));
  EXPECT_TRUE(id.eps.empty());
  EXPECT_TRUE(id.eta.empty());
  DeltaMorphism c(2, 0, {0, 0, 0});
  const auto fc = factorize_delta_morphism(c);
  EXPECT_TRUE(fc.eps.empty());
  EXPECT_EQ(fc.eta, (std::vector<std::size_t>{0, 1}));
  for (std::size_t x = 0; x <= 2; ++x) EXPECT_EQ(recompose(fc, 2).values[x], c.values[x]);
}

namespace {

void all_monotone(std::size_t n, std::size_t m, std::vector<std::size_t>& cur, std::vector<DeltaMorphism>& out) {
  if (cur.size() == n + 1) {
    out.emplace_back(n, m, cur);
    return;
  }
  for (std::size_t v = cur.empty() ? 0 : cur.back(); v <= m; ++v) {
    cur.push_back(v);
    all_monotone(n, m, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Delta, ExhaustiveRecomposition) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t m = 0; m <= 5; ++m) {
      std::vector<DeltaMorphism> all;
      std::vector<std::size_t> cur;
      all_monotone(n, m, cur, all);
      for (const auto& f : all) {
        const auto fac = factorize_delta_morphism(f);
        EXPECT_EQ(recompose(fac, n), f);
        EXPECT_EQ(n - fac.eta.size() + fac.eps.size(), m);
        EXPECT_TRUE(std::is_sorted(fac.eta.begin(), fac.eta.end()));
        EXPECT_TRUE(std::is_sorted(fac.eps.rbegin(), fac.eps.rend()));
      }
    }
}

TEST(Delta, CosimplicialIdentities) {
  using D = DeltaMorphism;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t j = 0; j <= n && n >= 2; ++j)
      for (std::size_t i = 0; i < j; ++i)
        EXPECT_EQ(D::coface(j, n).after(D::coface(i, n - 1)), D::coface(i, n).after(D::coface(j - 1, n - 1)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        EXPECT_EQ(D::codegeneracy(j, n - 1).after(D::codegeneracy(i, n)),
                  D::codegeneracy(i, n - 1).after(D::codegeneracy(j + 1, n)));
    // eta^j eps^i : [n-1] -> [n] -> [n-1]
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i <= n; ++i) {
        const D lhs = D::codegeneracy(j, n - 1).after(D::coface(i, n));
        if (i < j) {
          EXPECT_EQ(lhs, D::coface(i, n - 1).after(D::codegeneracy(j - 1, n - 2)));
        } else if (i == j || i == j + 1) {
          EXPECT_EQ(lhs, D::identity(n - 1));
        } else {
          EXPECT_EQ(lhs, D::coface(i - 1, n - 1).after(D::codegeneracy(j, n - 2)));
        }
      }
  }
}
