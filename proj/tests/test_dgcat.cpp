#include <gtest/gtest.h>

#include "dgcyc/catalog.hpp"
#include "dgcyc/dgcat.hpp"

using namespace dgcyc;

namespace {

std::string failures(const std::vector<Check>& cs) {
  std::string out;
  for (const auto& c : cs)
    if (!c.pass) out += c.family + "/" + c.name + "@" + c.where + " " + c.detail + "\n";
  return out;
}

std::set<std::string> families(const std::vector<Diagnostic>& ds) {
  std::set<std::string> f;
  for (const auto& d : ds) f.insert(d.family);
  return f;
}

}  // namespace

TEST(DgCat, ValidCatalog) {
  for (const auto& a : catalog_dgas()) EXPECT_TRUE(validate_dgcat(one_object(a).to_presentation()).ok()) << a.name();
  EXPECT_TRUE(validate_dgcat(a2_path_presentation()).ok());
  const auto u = disjoint_union(one_object(make_dga(koszul_presentation())), make_dgcat(a2_path_presentation()));
  EXPECT_EQ(u.object_count(), 3u);
  EXPECT_EQ(u.dim(), 7u);
  EXPECT_EQ(make_dgcat(u.to_presentation()), u);
}

TEST(DgCat, Diagnostics) {
  {
    auto p = a2_path_presentation();
    p.identities[1].reset();
    EXPECT_EQ(families(validate_dgcat(p).diagnostics), std::set<std::string>{"unit"});
  }
  {
    auto p = a2_path_presentation();
    p.compose.emplace_back(2, 2, SparseVec{{2, Rat(1)}});  // a*a is not composable
    const auto r = validate_dgcat(p);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.diagnostics.front().message.find("a*a"), std::string::npos);
  }
  {
    auto p = a2_path_presentation();
    p.morphisms.push_back({"b", 1, 0, 1});
    p.differential.emplace_back(3, SparseVec{{2, Rat(1)}});
    p.differential.emplace_back(2, SparseVec{{1, Rat(1)}});  // d(a) = e2 lands in another hom
    EXPECT_EQ(families(validate_dgcat(p).diagnostics), (std::set<std::string>{"structure", "degree"}));
  }
  {
    // Cone on the arrow: d(b) = a with |b| = 1 is a valid dg-category.
    auto p = a2_path_presentation();
    p.morphisms.push_back({"b", 1, 0, 1});
    p.differential.emplace_back(3, SparseVec{{2, Rat(1)}});
    EXPECT_TRUE(validate_dgcat(p).ok());
  }
}

TEST(DgCat, OneObjectMatchesDga) {
  std::vector<Dga> pool = catalog_dgas();
  for (std::uint64_t s = 1; s <= 4; ++s) pool.push_back(random_dga(s));
  for (const auto& a : pool) {
    auto ea = make_engine(a);
    auto ec = make_engine(one_object(a));
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 2 * a.max_degree(); ++q) {
        ASSERT_EQ(ec->dim(p, q), ea->dim(p, q));
        EXPECT_EQ(ec->b(p, q), ea->b(p, q));
        EXPECT_EQ(ec->lambda(p, q), ea->lambda(p, q));
        EXPECT_EQ(ec->delta(p, q), ea->delta(p, q));
      }
    for (int n = 0; n <= 3; ++n) {
      EXPECT_EQ(hh_cat_dim(ec, n), hh_dim(ea, n)) << a.name();
      EXPECT_EQ(hc_cat_dim(ec, n), hc_dim(ea, n)) << a.name();
      for (int s = 0; s <= 2; ++s) {
        EXPECT_EQ(hcp_dim(ec, n, s), hcp_dim(ea, n, s));
        EXPECT_EQ(hhp_dim(*ec, n, s), hhp_dim(*ea, n, s));
      }
    }
    FilteredEC<DgaSource> fa(ea, Filtration::F1);
    FilteredEC<CategorySource> fc(ec, Filtration::F1);
    for (int r = 0; r <= 3; ++r)
      for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) EXPECT_EQ(fc.filtered().page(r, p, q).dim, fa.filtered().page(r, p, q).dim);
  }
}

TEST(DgCat, CellsAndCyclicIdentities) {
  const auto a2 = make_dgcat(a2_path_presentation());
  auto e = make_engine(a2);
  const auto c0 = eh_cat_cell(e, 0, 0);
  EXPECT_EQ(c0.dim(), 2u);  // endomorphisms only
  // loops of length 2 in A2: (e1,e1), (e2,e2)
  EXPECT_EQ(eh_cat_cell(e, 1, 0).dim(), 2u);
  for (const auto& obj : eh_cat_cell(e, 2, 0).objects) EXPECT_EQ(obj.size(), 3u);
  EXPECT_TRUE(all_pass(verify_cocyclic_identities(e, 3, 2)));
  auto q = quasi_iso_suite(e, 3);
  EXPECT_TRUE(all_pass(q.checks)) << failures(q.checks);
  // The path category of A2 is derived equivalent to two points: HH and HC are those of k x k.
  for (int n = 0; n <= 3; ++n) {
    EXPECT_EQ(hh_cat_dim(e, n), n == 0 ? 2u : 0u);
    EXPECT_EQ(hc_cat_dim(e, n), n % 2 == 0 ? 2u : 0u);
  }
}

TEST(DgCat, DisjointUnionIsBlockwise) {
  const auto x = one_object(make_dga(koszul_presentation()));
  const auto y = make_dgcat(a2_path_presentation());
  auto ex = make_engine(x);
  auto ey = make_engine(y);
  auto eu = make_engine(disjoint_union(x, y));
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) EXPECT_EQ(eu->dim(p, q), ex->dim(p, q) + ey->dim(p, q));
  for (int n = 0; n <= 3; ++n) {
    EXPECT_EQ(hh_cat_dim(eu, n), hh_cat_dim(ex, n) + hh_cat_dim(ey, n));
    EXPECT_EQ(hc_cat_dim(eu, n), hc_cat_dim(ex, n) + hc_cat_dim(ey, n));
  }
  const auto ru = f1_ss_cat(eu, 3);
  const auto rx = f1_ss_cat(ex, 3);
  const auto ry = f1_ss_cat(ey, 3);
  EXPECT_TRUE(all_pass(ru.checks)) << failures(ru.checks);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) EXPECT_EQ(ru.e2[p][q], rx.e2[p][q] + ry.e2[p][q]);
}

TEST(DgCat, ConeCategory) {
  auto p = a2_path_presentation();
  p.morphisms.push_back({"b", 1, 0, 1});
  p.differential.emplace_back(3, SparseVec{{2, Rat(1)}});
  auto e = make_engine(make_dgcat(p));
  EXPECT_TRUE(all_pass(verify_cocyclic_identities(e, 3, 3)));
  const auto r = f1_ss_cat(e, 3);
  EXPECT_TRUE(all_pass(r.checks)) << failures(r.checks);
  EXPECT_TRUE(all_pass(quasi_iso_suite(e, 3).checks));
}
