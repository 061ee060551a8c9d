// dgcyc: Hochschild and cyclic cohomology of finite-dimensional dgas and dg-categories.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgcyc/catalog.hpp"
#include "dgcyc/cyclic.hpp"
#include "dgcyc/dgcat.hpp"
#include "dgcyc/hochschild.hpp"
#include "dgcyc/presentation.hpp"
#include "dgcyc/report.hpp"
#include "dgcyc/spectral.hpp"

using namespace dgcyc;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::string format = "text";
  int max_degree = 3;
  unsigned jobs = 0;
  std::size_t max_cell_dim = 20000;
  bool timing = false;
  std::string method = "tricomplex";
  std::string filtration = "f1";
  std::string page = "2";
  int max_total = 3;
  int trials = 0;
  std::uint64_t seed = 1;
  int max_arity = 4;
};

/// A resolved input: exactly one of algebra / category is set.
struct Input {
  std::string label;
  std::optional<DgaPresentation> algebra;
  std::optional<CategoryPresentation> category;
  std::string digest;
};

void print_diagnostics(const std::string& where, const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) {
    std::cerr << where;
    if (d.line > 0) std::cerr << ':' << d.line << ':' << d.column;
    std::cerr << ": " << d.family << ": " << d.message << '\n';
  }
}

Input resolve_input(const std::string& arg) {
  Input in;
  in.label = arg;
  for (const auto& p : catalog_presentations())
    if (p.name == arg) in.algebra = p;
  for (const auto& c : catalog_categories())
    if (c.name == arg) in.category = c;
  if (!in.algebra && !in.category && arg.rfind("random:", 0) == 0) {
    try {
      in.algebra = random_dga(std::stoull(arg.substr(7))).to_presentation();
    } catch (const std::logic_error&) {
      throw InputError("bad random seed in '" + arg + "'");
    }
  }
  if (!in.algebra && !in.category) {
    auto parsed = parse_presentation(arg);
    if (!parsed.ok()) {
      print_diagnostics(arg, parsed.diagnostics);
      throw InputError("cannot read presentation '" + arg + "'");
    }
    if (parsed.is_algebra()) in.algebra = parsed.algebra();
    else in.category = parsed.category();
  }
  in.digest = hex64(fnv1a(in.algebra ? emit_presentation(*in.algebra) : emit_presentation(*in.category)));
  return in;
}

Dga require_dga(const Input& in) {
  if (!in.algebra) throw InputError("'" + in.label + "' is a dg-category; use the cat-* commands");
  auto v = validate_dga(*in.algebra);
  if (!v.ok()) {
    print_diagnostics(in.label, v.diagnostics);
    throw InputError("'" + in.label + "' is not a valid dga");
  }
  return *v.value;
}

DgCategory require_cat(const Input& in) {
  if (in.algebra) return one_object(require_dga(in));
  auto v = validate_dgcat(*in.category);
  if (!v.ok()) {
    print_diagnostics(in.label, v.diagnostics);
    throw InputError("'" + in.label + "' is not a valid dg-category");
  }
  return *v.value;
}

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

void append(std::vector<Check>& dst, const std::vector<Check>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

HcMethod parse_method(const std::string& m) {
  if (m == "tricomplex") return HcMethod::tricomplex;
  if (m == "lambda") return HcMethod::lambda;
  if (m == "connes") return HcMethod::connes;
  throw InputError("unknown method '" + m + "'");
}

// ---- commands ------------------------------------------------------------------

template <GeneratorSource Src>
void run_hh(const EnginePtr<Src>& e, const Options& o, Report& r) {
  Table t{"HH^n", {"n", "dim"}, {}};
  for (int n = 0; n <= o.max_degree; ++n) t.rows.push_back({str(n), str(hh_dim(e, n))});
  r.tables.push_back(t);
}

template <GeneratorSource Src>
void run_hc(const EnginePtr<Src>& e, const Options& o, Report& r) {
  const HcMethod m = parse_method(o.method);
  Table t{"HC^n (" + o.method + ")", {"n", "dim"}, {}};
  for (int n = 0; n <= o.max_degree; ++n) t.rows.push_back({str(n), str(hc_dim(e, n, m))});
  r.tables.push_back(t);
}

/// Grid with rows s (internal degree) and columns m (cochain degree).
template <GeneratorSource Src>
void run_partial(const EnginePtr<Src>& e, const Options& o, Report& r, bool cyclic) {
  Table t{cyclic ? "HCP^m_s" : "HHP^m_s", {"s\\m"}, {}};
  for (int m = 0; m <= o.max_degree; ++m) t.columns.push_back(str(m));
  for (int s = 0; s <= o.max_degree; ++s) {
    std::vector<std::string> row{str(s)};
    for (int m = 0; m <= o.max_degree; ++m) row.push_back(str(cyclic ? hcp_dim(e, m, s) : hhp_dim(*e, m, s)));
    t.rows.push_back(row);
  }
  r.tables.push_back(t);
}

template <GeneratorSource Src>
void run_ss(const EnginePtr<Src>& e, const Options& o, Report& r) {
  std::string upper = o.filtration;
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const auto which = parse_filtration(upper);
  if (!which) throw InputError("unknown filtration '" + o.filtration + "'");
  const bool inf = o.page == "inf";
  int page = 0;
  if (!inf) {
    try {
      page = std::stoi(o.page);
    } catch (const std::logic_error&) {
      throw InputError("bad page '" + o.page + "'");
    }
    if (page < 0) throw InputError("page must be >= 0");
  }
  if (o.max_total < 0) throw InputError("--max-total must be >= 0");
  FilteredEC<Src> f(e, *which);
  const auto& fc = f.filtered();
  const int N = o.max_total;
  Table t{std::string("E_") + (inf ? "inf" : o.page) + "^{p,q} " + filtration_name(*which), {"p\\q"}, {}};
  for (int q = 0; q <= N; ++q) t.columns.push_back(str(q));
  for (int p = 0; p <= N; ++p) {
    std::vector<std::string> row{str(p)};
    for (int q = 0; q <= N; ++q) {
      if (p + q > N) row.emplace_back("");
      else row.push_back(str(inf ? infinity_page_dim(fc, p, q) : fc.page(page, p, q).dim));
    }
    t.rows.push_back(row);
  }
  r.tables.push_back(t);
  append(r.checks, convergence_check(e, *which, N));
}

template <GeneratorSource Src>
void run_identity_suite(const EnginePtr<Src>& e, int p_max, int q_max, int n_max, std::vector<Check>& out,
                        const std::string& tag) {
  std::vector<Check> cs = verify_cocyclic_identities(e, p_max, q_max);
  append(cs, verify_total_differentials(e, n_max));
  append(cs, quasi_iso_suite(e, n_max).checks);
  for (auto& c : cs) {
    if (!tag.empty()) c.where = tag + (c.where.empty() ? "" : " " + c.where);
    out.push_back(std::move(c));
  }
}

template <GeneratorSource Src>
void run_les(const EnginePtr<Src>& e, const Options& o, Report& r) {
  auto rep = les_exactness_check(e, o.max_degree);
  Table t{"H^n(C_Lambda) -> H^n(EH) -> H^n(EH/C_Lambda)", {"n", "HC", "HH", "quotient"}, {}};
  for (std::size_t n = 0; n < rep.hc.size(); ++n) t.rows.push_back({str(n), str(rep.hc[n]), str(rep.hh[n]), str(rep.hq[n])});
  r.tables.push_back(t);
  r.checks = rep.checks;
}

void run_validate(const Input& in, Report& r) {
  std::vector<Diagnostic> ds;
  std::size_t dim = 0;
  if (in.algebra) {
    auto v = validate_dga(*in.algebra);
    ds = v.diagnostics;
    if (v.ok()) dim = v.value->dim();
  } else {
    auto v = validate_dgcat(*in.category);
    ds = v.diagnostics;
    if (v.ok()) dim = v.value->dim();
  }
  if (ds.empty()) {
    r.checks.push_back({"validation", "axioms", "", true, ""});
    r.tables.push_back({"presentation", {"kind", "dim"}, {{in.algebra ? "dga" : "dg-category", str(dim)}}});
    return;
  }
  Table t{"diagnostics", {"family", "message"}, {}};
  for (const auto& d : ds) {
    t.rows.push_back({d.family, d.message});
    r.checks.push_back({d.family, "validation", "", false, d.message});
  }
  r.tables.push_back(t);
}

void run_catalog(Report& r) {
  Table t{"builtin inputs", {"name", "kind", "dim", "max degree"}, {}};
  for (const auto& p : catalog_presentations()) {
    Dga a = make_dga(p);
    t.rows.push_back({p.name, "dga", str(a.dim()), str(a.max_degree())});
  }
  for (const auto& c : catalog_categories()) {
    DgCategory d = make_dgcat(c);
    t.rows.push_back({c.name, "dg-category", str(d.dim()), str(d.max_degree())});
  }
  r.tables.push_back(t);
  r.notes.push_back("random:SEED names a seeded random dga");
}

int dispatch(const Options& o, Report& r) {
  if (o.jobs > 0) setenv("DGCYC_JOBS", std::to_string(o.jobs).c_str(), 1);
  if (o.max_degree < 0) throw InputError("--max-degree must be >= 0");
  EngineOptions eo;
  eo.max_cell_dim = o.max_cell_dim;
  if (o.command == "catalog") {
    r.input = "-";
    r.digest = hex64(fnv1a(""));
    run_catalog(r);
    return kOk;
  }
  const Input in = resolve_input(o.input);
  r.input = in.label;
  r.digest = in.digest;
  const std::string& c = o.command;
  if (c == "validate") {
    run_validate(in, r);
  } else if (c == "hh" || c == "hc" || c == "hcp" || c == "hhp" || c == "ss" || c == "les") {
    const auto e = make_engine(require_dga(in), eo);
    if (c == "hh") run_hh(e, o, r);
    else if (c == "hc") run_hc(e, o, r);
    else if (c == "hcp") run_partial(e, o, r, true);
    else if (c == "hhp") run_partial(e, o, r, false);
    else if (c == "ss") run_ss(e, o, r);
    else run_les(e, o, r);
  } else if (c == "verify") {
    if (in.algebra) {
      const Dga a = require_dga(in);
      const int q_max = 2 * a.max_degree();
      run_identity_suite(make_engine(a, eo), o.max_arity, q_max, o.max_degree, r.checks, "");
      for (int t = 0; t < o.trials; ++t) {
        const std::uint64_t s = o.seed + static_cast<std::uint64_t>(t);
        run_identity_suite(make_engine(random_rebase(a, s), eo), o.max_arity, q_max, o.max_degree, r.checks,
                           "rebase seed=" + std::to_string(s));
      }
      if (o.trials > 0) r.notes.push_back("checked the input and " + std::to_string(o.trials) + " random basis changes");
    } else {
      const DgCategory d = require_cat(in);
      run_identity_suite(make_engine(d, eo), o.max_arity, 2 * d.max_degree(), o.max_degree, r.checks, "");
    }
  } else if (c == "cat-hh" || c == "cat-hc" || c == "cat-ss") {
    const auto e = make_engine(require_cat(in), eo);
    if (c == "cat-hh") {
      run_hh(e, o, r);
    } else if (c == "cat-hc") {
      run_hc(e, o, r);
    } else {
      auto rep = f1_ss_cat(e, o.max_degree);
      Table t{"E_2^{p,q} F1", {"p\\q"}, {}};
      for (int q = 0; q <= o.max_degree; ++q) t.columns.push_back(str(q));
      for (int p = 0; p <= o.max_degree; ++p) {
        std::vector<std::string> row{str(p)};
        for (int q = 0; q <= o.max_degree; ++q) row.push_back(str(rep.e2[p][q]));
        t.rows.push_back(row);
      }
      r.tables.push_back(t);
      r.checks = rep.checks;
    }
  } else {
    throw InputError("unknown command '" + c + "'");
  }
  return r.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild and cyclic cohomology of dgas and dg-categories over Q"};
  app.require_subcommand(1);
  Options o;
  struct CommandInfo {
    const char* name;
    const char* help;
    bool needs_input;
  };
  const std::vector<CommandInfo> commands = {
      {"validate", "check the dga or dg-category axioms", true},
      {"hh", "Hochschild cohomology HH^n", true},
      {"hc", "cyclic cohomology HC^n", true},
      {"hcp", "partial cyclic cohomology HCP^m_s", true},
      {"hhp", "partial Hochschild cohomology HHP^m_s", true},
      {"ss", "pages of the spectral sequence of a filtration", true},
      {"verify", "operator identities and quasi-isomorphisms", true},
      {"les", "exactness of the long exact sequence", true},
      {"cat-hh", "Hochschild cohomology of a dg-category", true},
      {"cat-hc", "cyclic cohomology of a dg-category", true},
      {"cat-ss", "F1 spectral sequence of a dg-category", true},
      {"catalog", "list builtin inputs", false},
  };
  for (const auto& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
    if (s.needs_input) sub->add_option("input", o.input, "builtin name, random:SEED, or presentation file")->required();
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--max-degree", o.max_degree, "largest total degree computed");
    sub->add_option("--jobs", o.jobs, "worker threads (default: DGCYC_JOBS or 1)");
    sub->add_option("--max-cell-dim", o.max_cell_dim, "refuse cells larger than this");
    sub->add_flag("--timing", o.timing, "report wall time");
    const std::string n = s.name;
    if (n == "hc" || n == "cat-hc")
      sub->add_option("--method", o.method, "tricomplex, lambda or connes")
          ->check(CLI::IsMember({"tricomplex", "lambda", "connes"}));
    if (n == "ss") {
      sub->add_option("--filtration", o.filtration, "f1, f2, f3 or f13")->check(CLI::IsMember({"f1", "f2", "f3", "f13"}));
      sub->add_option("--page", o.page, "page number or inf");
      sub->add_option("--max-total", o.max_total, "largest p + q shown");
    }
    if (n == "verify") {
      sub->add_option("--trials", o.trials, "random basis changes to check as well");
      sub->add_option("--seed", o.seed, "seed of the first basis change");
      sub->add_option("--max-arity", o.max_arity, "largest arity p in the identity suite");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  Report r;
  r.command = "dgcyc";
  for (int i = 1; i < argc; ++i) r.command += std::string(" ") + argv[i];
  const Format fmt = o.format == "json" ? Format::json : o.format == "csv" ? Format::csv : Format::text;
  const auto t0 = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    rc = dispatch(o, r);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << " (raise --max-cell-dim or lower --max-degree)\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (o.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << render(r, fmt);
  return rc;
}
