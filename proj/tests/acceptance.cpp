// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// (rational arithmetic, integer dimensions); the only numeric tolerance is the
// wall-time budget of the identity suite.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dgcyc/catalog.hpp"
#include "dgcyc/cyclic.hpp"
#include "dgcyc/dgcat.hpp"
#include "dgcyc/hochschild.hpp"
#include "dgcyc/presentation.hpp"
#include "dgcyc/spectral.hpp"
#include "oracle/naive.hpp"

using namespace dgcyc;

namespace {

constexpr double kIdentityBudgetSeconds = 60.0;
constexpr int kRandomCount = 24;
constexpr std::size_t kRandomMaxDim = 4;
constexpr int kRandomMaxDeg = 3;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
  void absorb(const std::vector<Check>& cs, const std::string& who) {
    for (const auto& c : cs)
      require(c.pass, who + ": " + c.family + "/" + c.name + (c.where.empty() ? "" : " " + c.where) +
                          (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
};

std::vector<Dga> random_pool() {
  std::vector<Dga> out;
  for (int s = 1; s <= kRandomCount; ++s) out.push_back(random_dga(static_cast<std::uint64_t>(s), kRandomMaxDim, kRandomMaxDeg));
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// ---- criteria --------------------------------------------------------------------

Outcome identity_suite() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Dga> pool = catalog_dgas();
  for (auto& a : random_pool()) pool.push_back(std::move(a));
  std::size_t checks = 0;
  for (const auto& a : pool) {
    o.require(a.dim() <= kRandomMaxDim && a.max_degree() <= 4, a.name() + " exceeds the size bounds");
    auto e = make_engine(a);
    auto cs = verify_cocyclic_identities(e, 4, 2 * a.max_degree());
    auto d2 = verify_total_differentials(e, 4);
    cs.insert(cs.end(), d2.begin(), d2.end());
    checks += cs.size();
    o.absorb(cs, a.name());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < kIdentityBudgetSeconds, "runtime " + std::to_string(secs) + " s over budget");
  std::ostringstream s;
  s << pool.size() << " dgas (" << kRandomCount << " random), " << checks << " exact matrix identities, p<=4, q<=2D, "
    << std::fixed;
  s.precision(1);
  s << secs << " s (budget " << kIdentityBudgetSeconds << " s)";
  o.summary = s.str();
  return o;
}

Outcome three_definitions() {
  Outcome o;
  for (const auto& a : catalog_dgas()) {
    const auto rep = quasi_iso_suite(make_engine(a), 4);
    for (const auto& c : rep.checks)
      if (c.name == "three_definitions_agree" || c.name == "lambda_subcomplex" || c.name.find("psi") == 0 ||
          c.name.find("phi") == 0 || c.name == "image_psi_equals_kernel_phi")
        o.require(c.pass, a.name() + ": " + c.name + " " + c.where + " " + c.detail);
    o.require(rep.hc_tricomplex == rep.hc_connes && rep.hc_connes == rep.hc_lambda,
              a.name() + ": " + join(rep.hc_tricomplex) + " / " + join(rep.hc_connes) + " / " + join(rep.hc_lambda));
  }
  o.summary = "dim H^n of EC, CC_dg, C_Lambda equal for n<=4 on the catalog; Psi, Phi cochain maps with im = ker";
  return o;
}

Outcome acyclicity() {
  Outcome o;
  for (const auto& a : catalog_dgas()) {
    const auto rep = quasi_iso_suite(make_engine(a), 4);
    for (const auto& c : rep.checks)
      if (c.name == "odd_part_acyclic" || c.name == "contracting_homotopy")
        o.require(c.pass, a.name() + ": " + c.name + " " + c.where);
    o.require(rep.odd_part == std::vector<std::size_t>(5, 0), a.name() + ": odd part " + join(rep.odd_part));
  }
  o.summary = "H^n(CC^O_dg) = 0 for n<=4 and the EH' homotopy identity holds exactly on the catalog";
  return o;
}

Outcome ground_field() {
  Outcome o;
  const Dga k = make_dga(ground_field_presentation());
  auto e = make_engine(k);
  const auto orc = oracle::from_dga(k);
  const std::vector<std::size_t> hc_want{1, 0, 1, 0, 1}, hh_want{1, 0, 0, 0, 0};
  std::vector<std::size_t> hc, hh, hc_o, hh_o;
  for (int n = 0; n <= 4; ++n) {
    hc.push_back(hc_dim(e, n));
    hh.push_back(hh_dim(e, n));
    hc_o.push_back(oracle::hc(orc, n));
    hh_o.push_back(oracle::hh(orc, n));
  }
  o.require(hc == hc_want, "HC " + join(hc));
  o.require(hh == hh_want, "HH " + join(hh));
  o.require(hc_o == hc_want, "oracle HC " + join(hc_o));
  o.require(hh_o == hh_want, "oracle HH " + join(hh_o));
  o.summary = "HC = (" + join(hc) + "), HH = (" + join(hh) + "), oracle agrees";
  return o;
}

Outcome convergence() {
  Outcome o;
  for (const auto& a : catalog_dgas())
    for (auto w : {Filtration::F1, Filtration::F2, Filtration::F3, Filtration::F13})
      o.absorb(convergence_check(make_engine(a), w, 3), a.name());
  o.summary = "sum of E_inf^{p,q} over p+q=n equals HC^n, n<=3, F1 F2 F3 F13, catalog";
  return o;
}

Outcome e1_pages() {
  Outcome o;
  for (const auto& a : catalog_dgas())
    for (auto w : {Filtration::F1, Filtration::F3, Filtration::F13}) o.absorb(e1_identification(make_engine(a), w, 3, 3), a.name());
  o.summary = "E_1 of F1 (band and HH), F3 (HCP), F13 (sum of HHP) for p,q<=3, catalog";
  return o;
}

Outcome low_degree() {
  Outcome o;
  std::vector<Dga> pool = catalog_dgas();
  for (auto& a : random_pool()) pool.push_back(std::move(a));
  for (const auto& a : pool) o.absorb(low_degree_hc(make_engine(a)).checks, a.name());
  o.summary = "HC^0 = HH^0 and the HC^1, HC^2 formulas on " + std::to_string(pool.size()) + " dgas";
  return o;
}

Outcome partial_reductions() {
  Outcome o;
  std::size_t subset_fail = 0, subset_total = 0;
  for (const auto& a : catalog_dgas()) {
    auto e = make_engine(a);
    auto e0 = make_engine(degree_zero_subalgebra(a));
    for (int m = 0; m <= 3; ++m) {
      const std::size_t hcp = hcp_dim(e, m, 0), hc0 = hc_dim(e0, m);
      const std::size_t hhp = hhp_dim(*e, m, 0), hh0 = hh_dim(e0, m);
      o.require(hcp == hc0, a.name() + ": HCP^" + std::to_string(m) + "_0 = " + std::to_string(hcp) + " vs HC(A0) " +
                                std::to_string(hc0));
      o.require(hhp == hh0, a.name() + ": HHP^" + std::to_string(m) + "_0 = " + std::to_string(hhp) + " vs HH(A0) " +
                                std::to_string(hh0));
    }
    for (int n = 0; n <= 3; ++n)
      for (bool cyclic : {false, true}) {
        const auto cs = partial_subset_check(e, n, cyclic);
        for (const auto& c : cs) {
          ++subset_total;
          subset_fail += !c.pass;
        }
        o.absorb(cs, a.name());
      }
  }
  o.summary = "HCP^m_0 = HC^m(A0), HHP^m_0 = HH^m(A0) for m<=3; subset inclusions: " +
              std::to_string(subset_total - subset_fail) + "/" + std::to_string(subset_total) + " checks hold";
  return o;
}

Outcome les() {
  Outcome o;
  for (const auto& a : catalog_dgas()) o.absorb(les_exactness_check(make_engine(a), 3).checks, a.name());
  o.summary = "H(C_Lambda) -> HH -> H(EH/C_Lambda) -> H(C_Lambda)[1] exact at every node, n<=3, catalog";
  return o;
}

Outcome category_reduction() {
  Outcome o;
  const auto cat = catalog_dgas();
  for (const auto& a : cat) {
    auto ea = make_engine(a);
    auto ec = make_engine(one_object(a));
    const auto qa = quasi_iso_suite(ea, 3), qc = quasi_iso_suite(ec, 3);
    o.absorb(qc.checks, a.name() + " (one object)");
    o.require(qa.hc_tricomplex == qc.hc_tricomplex && qa.hc_connes == qc.hc_connes && qa.hc_lambda == qc.hc_lambda,
              a.name() + ": three-definition values differ");
    for (auto w : {Filtration::F1, Filtration::F2, Filtration::F3, Filtration::F13}) {
      o.absorb(convergence_check(ec, w, 3), a.name() + " (one object)");
      FilteredEC<DgaSource> fa(ea, w);
      FilteredEC<CategorySource> fc(ec, w);
      for (int n = 0; n <= 3; ++n)
        for (int p = 0; p <= n; ++p)
          o.require(infinity_page_dim(fa.filtered(), p, n - p) == infinity_page_dim(fc.filtered(), p, n - p),
                    a.name() + ": E_inf differs for " + filtration_name(w));
    }
    const auto la = low_degree_hc(ea), lc = low_degree_hc(ec);
    o.absorb(lc.checks, a.name() + " (one object)");
    o.require(la.hc1 == lc.hc1 && la.hc2 == lc.hc2 && la.rank1 == lc.rank1 && la.rank2 == lc.rank2,
              a.name() + ": low-degree values differ");
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i; j < cat.size(); ++j) {
      const DgCategory u = disjoint_union(one_object(cat[i]), one_object(cat[j]));
      auto eu = make_engine(u);
      auto e1 = make_engine(cat[i]);
      auto e2 = make_engine(cat[j]);
      const int qmax = 2 * std::max(cat[i].max_degree(), cat[j].max_degree());
      for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= qmax; ++q)
          o.require(eu->dim(p, q) == e1->dim(p, q) + e2->dim(p, q),
                    u.name() + ": cell (" + std::to_string(p) + "," + std::to_string(q) + ") not additive");
      for (int n = 0; n <= 3; ++n) {
        o.require(hh_dim(eu, n) == hh_dim(e1, n) + hh_dim(e2, n), u.name() + ": HH not additive");
        o.require(hc_dim(eu, n) == hc_dim(e1, n) + hc_dim(e2, n), u.name() + ": HC not additive");
      }
      ++pairs;
    }
  o.summary = "one-object categories reproduce criteria 2, 5, 7 for n<=3; " + std::to_string(pairs) +
              " disjoint unions have additive cells, HH and HC";
  return o;
}

Outcome negative_controls(const std::string& dir) {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> mutated = {
      {"broken_associativity", "associativity"},
      {"broken_leibniz", "leibniz"},
      {"broken_dsquare", "differential_square"},
      {"broken_degree", "degree"},
  };
  for (const auto& [file, family] : mutated) {
    const auto parsed = parse_presentation(dir + "/invalid/" + file + ".dga");
    o.require(parsed.ok() && parsed.is_algebra(), file + " does not parse");
    if (!parsed.ok()) continue;
    std::set<std::string> got;
    for (const auto& d : validate_dga(parsed.algebra()).diagnostics) got.insert(d.family);
    std::string list;
    for (const auto& f : got) list += " " + f;
    o.require(got == std::set<std::string>{family}, file + " fails {" + list + " } instead of { " + family + " }");
  }
  std::size_t faulted = 0;
  std::size_t downstream = 0;
  for (const auto& a : catalog_dgas()) {
    if (a.dim() < 2) continue;
    EngineOptions opt;
    opt.lambda_fault = true;
    auto e = make_engine(a, opt);
    auto cs = verify_cocyclic_identities(e, 4, 2 * a.max_degree());
    auto d2 = verify_total_differentials(e, 4);
    cs.insert(cs.end(), d2.begin(), d2.end());
    bool cyclic_failed = false;
    for (const auto& c : cs) {
      if (c.family == "cyclic") cyclic_failed = cyclic_failed || !c.pass;
      else o.require(c.pass, a.name() + ": Lambda fault broke " + c.family + "/" + c.name + " " + c.where);
    }
    o.require(cyclic_failed, a.name() + ": Lambda fault went undetected");
    faulted += cyclic_failed;
    downstream += !all_pass(quasi_iso_suite(e, 3).checks);
  }
  o.summary = std::to_string(mutated.size()) + " mutated files each fail exactly their family; sign-mutated Lambda fails " +
              "only the cyclic family on " + std::to_string(faulted) + " dgas (quasi-iso checks built on Lambda also fail on " +
              std::to_string(downstream) + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : DGCYC_PRESENTATIONS_DIR;
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "identity suite", identity_suite},
      {2, "three definitions of HC agree", three_definitions},
      {3, "acyclicity of the odd part", acyclicity},
      {4, "ground field", ground_field},
      {5, "convergence of F1 F2 F3 F13", convergence},
      {6, "E1 identifications", e1_pages},
      {7, "low-degree formulas", low_degree},
      {8, "partial-cohomology reductions", partial_reductions},
      {9, "long exact sequence", les},
      {10, "dg-category reduction", category_reduction},
      {11, "negative controls", [&dir] { return negative_controls(dir); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::printf("%-4s criterion %2d  %-32s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.summary.c_str());
    for (const auto& f : o.failures) std::printf("        %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
