#pragma once

// Cyclic cohomology: the tricomplex EC(A), the complex CC_dg(A) and its odd
// part, the Lambda-invariant subcomplex C_Lambda(A), the partial cyclic
// bicomplexes, and exact checks of the operator identities and of the
// comparison maps between the three models.
//
// EC cells are keyed (k, q, r): k is the B-column, q - k the Hochschild
// arity, r the internal degree; total degree k + q + r. The differential is
// b : q -> q+1, B : k -> k+1 (arity drops by one), (-1)^{arity} delta : r -> r+1.
//
// CC_dg cells are keyed (c, a, r): column c, arity a, internal degree r.
// Even columns carry b, odd columns -b'; horizontal maps are 1 - Lambda
// (even to odd) and Nabla (odd to even); delta carries (-1)^{a+c}.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cochains.hpp"
#include "complex.hpp"
#include "hochschild.hpp"

namespace dgcyc {

class RestrictionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <GeneratorSource Src>
const RatMatrix& lambda_matrix(const CochainEngine<Src>& e, int p, int q) {
  return e.lambda(p, q);
}

template <GeneratorSource Src>
const RatMatrix& connes_B_matrix(const CochainEngine<Src>& e, int p, int q) {
  return e.connes_B(p, q);
}

// ---- 𝒯(EC(A)) -----------------------------------------------------------

template <GeneratorSource Src>
class ECComplex : public TotalComplex {
 public:
  explicit ECComplex(EnginePtr<Src> e) : e_(std::move(e)) {}
  const CochainEngine<Src>& engine() const { return *e_; }

  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int k = 0; 2 * k <= n; ++k)
      for (int q = k; k + q <= n; ++q) out.push_back({k, q, n - k - q});
    return out;
  }
  std::size_t cell_dim(const CellKey& c) const override { return e_->dim(c[1] - c[0], c[2]); }
  std::vector<Arrow> arrows(const CellKey& c) const override {
    const int k = c[0];
    const int q = c[1];
    const int r = c[2];
    const int a = q - k;
    std::vector<Arrow> out;
    out.push_back({{k, q + 1, r}, e_->b(a, r)});
    if (a >= 1) out.push_back({{k + 1, q, r}, e_->connes_B(a, r)});
    out.push_back({{k, q, r + 1}, Rat(koszul(a)) * e_->delta(a, r)});
    return out;
  }

 private:
  EnginePtr<Src> e_;
};

// ---- 𝒯(CC_dg(A)) and its odd part -----------------------------------------

template <GeneratorSource Src>
class CCComplex : public TotalComplex {
 public:
  /// odd_only: keep only the odd columns (the quotient CC^O_dg).
  CCComplex(EnginePtr<Src> e, bool odd_only = false) : e_(std::move(e)), odd_only_(odd_only) {}
  const CochainEngine<Src>& engine() const { return *e_; }

  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int c = 0; c <= n; ++c) {
      if (odd_only_ && c % 2 == 0) continue;
      for (int a = 0; c + a <= n; ++a) out.push_back({c, a, n - c - a});
    }
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return e_->dim(k[1], k[2]); }
  std::vector<Arrow> arrows(const CellKey& k) const override {
    const int c = k[0];
    const int a = k[1];
    const int r = k[2];
    std::vector<Arrow> out;
    if (c % 2 == 0) {
      out.push_back({{c, a + 1, r}, e_->b(a, r)});
      if (!odd_only_) out.push_back({{c + 1, a, r}, e_->one_minus_lambda(a, r)});
    } else {
      out.push_back({{c, a + 1, r}, -e_->bprime(a, r)});
      if (!odd_only_) out.push_back({{c + 1, a, r}, e_->nabla(a, r)});
    }
    out.push_back({{c, a, r + 1}, Rat(koszul(a + c)) * e_->delta(a, r)});
    return out;
  }

 private:
  EnginePtr<Src> e_;
  bool odd_only_;
};

/// (𝒯(EH'), -b' + (-1)^{a+1} delta): cells (a, r, 0).
template <GeneratorSource Src>
class EHPrimeComplex : public TotalComplex {
 public:
  explicit EHPrimeComplex(EnginePtr<Src> e) : e_(std::move(e)) {}
  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int a = 0; a <= n; ++a) out.push_back({a, n - a, 0});
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return e_->dim(k[0], k[1]); }
  std::vector<Arrow> arrows(const CellKey& k) const override {
    const int a = k[0];
    const int r = k[1];
    return {{{a + 1, r, 0}, -e_->bprime(a, r)}, {{a, r + 1, 0}, Rat(koszul(a + 1)) * e_->delta(a, r)}};
  }

  /// h = -s, lowering arity by one; h : degree n -> degree n - 1.
  RatMatrix homotopy(int n) const {
    return assemble_blocks(layout(n - 1), layout(n), [&](const CellKey& k) {
      std::vector<std::pair<CellKey, RatMatrix>> out;
      if (k[0] >= 1) out.emplace_back(CellKey{k[0] - 1, k[1], 0}, -e_->s(k[0] - 1, k[1]));
      return out;
    });
  }

 private:
  EnginePtr<Src> e_;
};

// ---- 𝒯(C_Lambda(A)) ---------------------------------------------------------

/// Cells (a, r, 0) are kernel bases of 1 - Lambda on C^a_r; the differential
/// is the restriction of the EH differential, solved in kernel coordinates.
template <GeneratorSource Src>
class CLambdaComplex : public TotalComplex {
 public:
  explicit CLambdaComplex(EnginePtr<Src> e) : e_(std::move(e)) {}
  const CochainEngine<Src>& engine() const { return *e_; }

  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int a = 0; a <= n; ++a) out.push_back({a, n - a, 0});
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return kernel(k[0], k[1]).cols(); }

  /// Columns form a basis of ker(1 - Lambda) in C^a_r.
  const RatMatrix& kernel(int a, int r) const {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(a, r);
    auto it = kernels_.find(key);
    if (it != kernels_.end()) return it->second;
    RatMatrix k = kernel_basis(e_->one_minus_lambda(a, r)).basis();
    return kernels_.emplace(key, std::move(k)).first->second;
  }

  std::vector<Arrow> arrows(const CellKey& k) const override {
    const int a = k[0];
    const int r = k[1];
    const RatMatrix& src = kernel(a, r);
    std::vector<Arrow> out;
    out.push_back({{a + 1, r, 0}, restrict(e_->b(a, r) * src, a + 1, r, "b")});
    out.push_back({{a, r + 1, 0}, restrict(Rat(koszul(a)) * e_->delta(a, r) * src, a, r + 1, "delta")});
    return out;
  }

  /// Inclusion into 𝒯(EH(A)).
  CochainMap inclusion(const EHComplex<Src>& eh) const {
    CochainMap f;
    f.source = this;
    f.target = &eh;
    f.at = [this, &eh](int n) {
      return assemble_blocks(eh.layout(n), layout(n), [&](const CellKey& k) {
        return std::vector<std::pair<CellKey, RatMatrix>>{{k, kernel(k[0], k[1])}};
      });
    };
    return f;
  }

 private:
  RatMatrix restrict(const RatMatrix& image_in_full, int a, int r, const char* what) const {
    const RatMatrix& tgt = kernel(a, r);
    if (image_in_full.cols() == 0) return RatMatrix(tgt.cols(), 0);
    if (!(e_->one_minus_lambda(a, r) * image_in_full).is_zero())
      throw RestrictionFailure(std::string("C_Lambda is not preserved by ") + what + " into arity " +
                               std::to_string(a) + ", degree " + std::to_string(r));
    auto x = solve(tgt, image_in_full);
    if (!x) throw RestrictionFailure("restriction could not be solved in kernel coordinates");
    return *x;
  }

  EnginePtr<Src> e_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, RatMatrix> kernels_;
};

// ---- partial cyclic bicomplex ------------------------------------------------

/// 𝔅𝒫^s(A): cells (k, a, s) of total degree 2k + a with differential b + B.
template <GeneratorSource Src>
class PartialCyclicComplex : public TotalComplex {
 public:
  PartialCyclicComplex(EnginePtr<Src> e, int s) : e_(std::move(e)), s_(s) {}
  std::vector<CellKey> cells(int n) const override {
    std::vector<CellKey> out;
    for (int k = 0; 2 * k <= n; ++k) out.push_back({k, n - 2 * k, s_});
    return out;
  }
  std::size_t cell_dim(const CellKey& k) const override { return e_->dim(k[1], s_); }
  std::vector<Arrow> arrows(const CellKey& k) const override {
    std::vector<Arrow> out;
    out.push_back({{k[0], k[1] + 1, s_}, e_->b(k[1], s_)});
    if (k[1] >= 1) out.push_back({{k[0] + 1, k[1] - 1, s_}, e_->connes_B(k[1], s_)});
    return out;
  }

 private:
  EnginePtr<Src> e_;
  int s_;
};

/// HCP^m_s
template <GeneratorSource Src>
std::size_t hcp_dim(const EnginePtr<Src>& e, int m, int s) {
  if (s < 0) return 0;
  return PartialCyclicComplex<Src>(e, s).cohomology_dim(m);
}

enum class HcMethod { tricomplex, lambda, connes };

/// HC^n by the chosen model.
template <GeneratorSource Src>
std::size_t hc_dim(const EnginePtr<Src>& e, int n, HcMethod method = HcMethod::tricomplex) {
  switch (method) {
    case HcMethod::lambda:
      return CLambdaComplex<Src>(e).cohomology_dim(n);
    case HcMethod::connes:
      return CCComplex<Src>(e).cohomology_dim(n);
    default:
      return ECComplex<Src>(e).cohomology_dim(n);
  }
}

// ---- comparison maps ---------------------------------------------------------

/// Psi : 𝒯(EC) -> 𝒯(CC_dg): identity onto column 2k, s(1 - Lambda) onto column 2k+1.
template <GeneratorSource Src>
CochainMap psi_map(const ECComplex<Src>& ec, const CCComplex<Src>& cc) {
  CochainMap f;
  f.source = &ec;
  f.target = &cc;
  f.at = [&ec, &cc](int n) {
    const auto& e = ec.engine();
    return assemble_blocks(cc.layout(n), ec.layout(n), [&](const CellKey& k) {
      const int a = k[1] - k[0];
      const int r = k[2];
      std::vector<std::pair<CellKey, RatMatrix>> out;
      out.emplace_back(CellKey{2 * k[0], a, r}, RatMatrix::identity(e.dim(a, r)));
      if (a >= 1) out.emplace_back(CellKey{2 * k[0] + 1, a - 1, r}, e.s(a - 1, r) * e.one_minus_lambda(a, r));
      return out;
    });
  };
  return f;
}

/// Phi : 𝒯(CC_dg) -> 𝒯(CC^O_dg), (x, y) |-> y - s(1 - Lambda) x.
template <GeneratorSource Src>
CochainMap phi_map(const CCComplex<Src>& cc, const CCComplex<Src>& odd) {
  CochainMap f;
  f.source = &cc;
  f.target = &odd;
  f.at = [&cc, &odd](int n) {
    const auto& e = cc.engine();
    return assemble_blocks(odd.layout(n), cc.layout(n), [&](const CellKey& k) {
      const int c = k[0];
      const int a = k[1];
      const int r = k[2];
      std::vector<std::pair<CellKey, RatMatrix>> out;
      if (c % 2 == 1) {
        out.emplace_back(k, RatMatrix::identity(e.dim(a, r)));
      } else if (a >= 1) {
        out.emplace_back(CellKey{c + 1, a - 1, r}, -(e.s(a - 1, r) * e.one_minus_lambda(a, r)));
      }
      return out;
    });
  };
  return f;
}

/// Projection of 𝒯(EC) onto its column k = 0, which is 𝒯(EH).
template <GeneratorSource Src>
CochainMap ec_column_zero_projection(const ECComplex<Src>& ec, const EHComplex<Src>& eh) {
  CochainMap f;
  f.source = &ec;
  f.target = &eh;
  f.at = [&ec, &eh](int n) {
    return assemble_blocks(eh.layout(n), ec.layout(n), [&](const CellKey& k) {
      std::vector<std::pair<CellKey, RatMatrix>> out;
      if (k[0] == 0) out.emplace_back(CellKey{k[1], k[2], 0}, RatMatrix::identity(ec.cell_dim(k)));
      return out;
    });
  };
  return f;
}

/// Projection of 𝔅𝒫^s onto its column k = 0, the Hochschild row s.
template <GeneratorSource Src>
CochainMap partial_column_zero_projection(const PartialCyclicComplex<Src>& bp, const HochschildRow<Src>& row) {
  CochainMap f;
  f.source = &bp;
  f.target = &row;
  f.at = [&bp, &row](int n) {
    return assemble_blocks(row.layout(n), bp.layout(n), [&](const CellKey& k) {
      std::vector<std::pair<CellKey, RatMatrix>> out;
      if (k[0] == 0) out.emplace_back(CellKey{k[1], k[2], 0}, RatMatrix::identity(bp.cell_dim(k)));
      return out;
    });
  };
  return f;
}

// ---- identity suite ------------------------------------------------------------

namespace detail {

inline std::string pq(int p, int q) { return "p=" + std::to_string(p) + ",q=" + std::to_string(q); }

}  // namespace detail

/// Every operator identity as an exact matrix equation on C^p_q, p <= p_max, q <= q_max.
/// Families: "cosimplicial" (b, b', delta, s) and "cyclic" (anything built from Lambda).
template <GeneratorSource Src>
std::vector<Check> verify_cocyclic_identities(const EnginePtr<Src>& ep, int p_max, int q_max) {
  const auto& e = *ep;
  std::vector<Check> out;
  auto rec = [&](const char* fam, const char* name, int p, int q, bool ok) {
    out.push_back({fam, name, detail::pq(p, q), ok, ""});
  };
  auto zero = [](const RatMatrix& m) { return m.is_zero(); };
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) {
      const std::size_t n = e.dim(p, q);
      const RatMatrix id = RatMatrix::identity(n);
      rec("cosimplicial", "b_squared", p, q, zero(e.b(p + 1, q) * e.b(p, q)));
      rec("cosimplicial", "bprime_squared", p, q, zero(e.bprime(p + 1, q) * e.bprime(p, q)));
      rec("cosimplicial", "delta_squared", p, q, zero(e.delta(p, q + 1) * e.delta(p, q)));
      rec("cosimplicial", "delta_b", p, q, e.delta(p + 1, q) * e.b(p, q) == e.b(p, q + 1) * e.delta(p, q));
      rec("cosimplicial", "delta_bprime", p, q,
          e.delta(p + 1, q) * e.bprime(p, q) == e.bprime(p, q + 1) * e.delta(p, q));
      {
        RatMatrix lhs = e.s(p, q) * e.bprime(p, q);
        if (p >= 1) lhs = lhs + e.bprime(p - 1, q) * e.s(p - 1, q);
        rec("cosimplicial", "extra_degeneracy", p, q, lhs == id);
      }
      if (p >= 1) rec("cosimplicial", "delta_s", p, q, e.delta(p - 1, q) * e.s(p - 1, q) == e.s(p - 1, q + 1) * e.delta(p, q));

      const RatMatrix& l = e.lambda(p, q);
      {
        RatMatrix pw = id;
        for (int i = 0; i <= p; ++i) pw = l * pw;
        rec("cyclic", "lambda_order", p, q, pw == id);
      }
      rec("cyclic", "lambda_b", p, q, e.one_minus_lambda(p + 1, q) * e.b(p, q) == e.bprime(p, q) * e.one_minus_lambda(p, q));
      rec("cyclic", "nabla_bprime", p, q, e.nabla(p + 1, q) * e.bprime(p, q) == e.b(p, q) * e.nabla(p, q));
      rec("cyclic", "nabla_one_minus_lambda", p, q,
          zero(e.nabla(p, q) * e.one_minus_lambda(p, q)) && zero(e.one_minus_lambda(p, q) * e.nabla(p, q)));
      rec("cyclic", "delta_lambda", p, q, e.delta(p, q) * l == e.lambda(p, q + 1) * e.delta(p, q));
      rec("cyclic", "H_identity", p, q,
          Rat(1, p + 1) * e.nabla(p, q) - e.one_minus_lambda(p, q) * e.homotopy_H(p, q) == id);
      if (p >= 1) {
        rec("cyclic", "bB_anticommute", p, q, zero(e.b(p - 1, q) * e.connes_B(p, q) + e.connes_B(p + 1, q) * e.b(p, q)));
        rec("cyclic", "delta_B", p, q, e.delta(p - 1, q) * e.connes_B(p, q) == e.connes_B(p, q + 1) * e.delta(p, q));
      }
      if (p >= 2) rec("cyclic", "B_squared", p, q, zero(e.connes_B(p - 1, q) * e.connes_B(p, q)));
    }
  }
  return out;
}

/// d^2 = 0 on 𝒯(EH) (cosimplicial family) and 𝒯(EC) (cyclic family), degrees <= n_max.
template <GeneratorSource Src>
std::vector<Check> verify_total_differentials(const EnginePtr<Src>& e, int n_max) {
  std::vector<Check> out;
  EHComplex<Src> eh(e);
  ECComplex<Src> ec(e);
  for (int n = 0; n <= n_max; ++n) {
    out.push_back({"cosimplicial", "EH_d_squared", "n=" + std::to_string(n),
                   (eh.differential(n + 1) * eh.differential(n)).is_zero(), ""});
    out.push_back({"cyclic", "EC_d_squared", "n=" + std::to_string(n),
                   (ec.differential(n + 1) * ec.differential(n)).is_zero(), ""});
  }
  return out;
}

struct QuasiIsoReport {
  std::vector<Check> checks;
  std::vector<std::size_t> hc_tricomplex;
  std::vector<std::size_t> hc_connes;
  std::vector<std::size_t> hc_lambda;
  std::vector<std::size_t> odd_part;
};

/// Psi/Phi cochain maps and exactness, the contracting homotopy on 𝒯(EH'),
/// acyclicity of the odd part, and the three-way HC agreement for n <= n_max.
template <GeneratorSource Src>
QuasiIsoReport quasi_iso_suite(const EnginePtr<Src>& e, int n_max) {
  QuasiIsoReport rep;
  ECComplex<Src> ec(e);
  CCComplex<Src> cc(e);
  CCComplex<Src> odd(e, true);
  CLambdaComplex<Src> cl(e);
  EHPrimeComplex<Src> ehp(e);
  const CochainMap psi = psi_map(ec, cc);
  const CochainMap phi = phi_map(cc, odd);
  auto rec = [&](const char* name, int n, bool ok, std::string detail = "") {
    rep.checks.push_back({"quasi_iso", name, "n=" + std::to_string(n), ok, std::move(detail)});
  };
  for (int n = 0; n <= n_max; ++n) {
    rec("psi_cochain_map", n, commutes_with_d(psi, n));
    rec("phi_cochain_map", n, commutes_with_d(phi, n));
    const RatMatrix ps = psi.at(n);
    const RatMatrix ph = phi.at(n);
    const std::size_t rps = rank(ps);
    const std::size_t rph = rank(ph);
    rec("psi_injective", n, rps == ec.dim(n));
    rec("phi_surjective", n, rph == odd.dim(n));
    rec("image_psi_equals_kernel_phi", n, (ph * ps).is_zero() && rps + rph == cc.dim(n));
    const RatMatrix h = Rat(1) * ehp.homotopy(n);
    RatMatrix lhs = ehp.differential(n - 1) * h + ehp.homotopy(n + 1) * ehp.differential(n);
    rec("contracting_homotopy", n, lhs == RatMatrix::identity(ehp.dim(n)));
    const std::size_t o = odd.cohomology_dim(n);
    rep.odd_part.push_back(o);
    rec("odd_part_acyclic", n, o == 0);
    const std::size_t a = ec.cohomology_dim(n);
    const std::size_t b = cc.cohomology_dim(n);
    std::size_t c = 0;
    bool restricted = true;
    try {
      c = cl.cohomology_dim(n);
    } catch (const RestrictionFailure& err) {
      restricted = false;
      rec("lambda_subcomplex", n, false, err.what());
    }
    rep.hc_tricomplex.push_back(a);
    rep.hc_connes.push_back(b);
    rep.hc_lambda.push_back(c);
    rec("three_definitions_agree", n, restricted && a == b && b == c,
        std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c));
  }
  return rep;
}

}  // namespace dgcyc
