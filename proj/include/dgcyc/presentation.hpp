#pragma once

// Text presentations of dgas and dg-categories.
//
//   # comment
//   [algebra]
//   name = koszul
//   basis = 1 x y xy
//   degrees = 0 0 1 1
//   unit = 1
//   [mult]
//   x*y = xy
//   [diff]
//   d(y) = x
//
// Categories use [objects], one [hom X Y] section per nonzero hom,
// [compose] and [diff]. See README for the full grammar.

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dga.hpp"
#include "dgcat.hpp"

namespace dgcyc {

struct ParsedPresentation {
  std::variant<std::monostate, DgaPresentation, CategoryPresentation> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty() && value.index() != 0; }
  bool is_algebra() const { return value.index() == 1; }
  bool is_category() const { return value.index() == 2; }
  const DgaPresentation& algebra() const { return std::get<DgaPresentation>(value); }
  const CategoryPresentation& category() const { return std::get<CategoryPresentation>(value); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

inline bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!label_char(c)) return false;
  return true;
}

/// Whitespace-separated words with their 1-based columns.
inline std::vector<std::pair<std::string, int>> words(const std::string& s, int col0) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.emplace_back(s.substr(i, j - i), col0 + static_cast<int>(i));
    i = j;
  }
  return out;
}

/// `a` or `a/b` with integer a and positive integer b.
inline std::optional<Rat> parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  auto is_int = [](const std::string& t, bool allow_sign) {
    std::size_t k = 0;
    if (allow_sign && k < t.size() && (t[k] == '-' || t[k] == '+')) ++k;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
  if (num[0] == '+') num = num.substr(1);
  Rat r;
  r.get_num() = mpz_class(num);
  r.get_den() = mpz_class(den);
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

inline std::string rat_string(const Rat& r) { return r.get_str(); }

struct LineCtx {
  int line = 0;
  std::vector<Diagnostic>* diags = nullptr;
  void error(const std::string& fam, const std::string& msg, int col) const {
    diags->push_back({fam, msg, line, col});
  }
};

/// Linear combination `c1 l1 + c2 l2 - ...`; coefficients optional, `*` between
/// coefficient and label optional. A lone `0` is the zero vector.
inline std::optional<SparseVec> parse_combination(const std::string& text, int col0,
                                                  const std::map<std::string, std::size_t>& index, const LineCtx& ctx) {
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
  const std::string body = trim(text);
  if (body.empty()) {
    ctx.error("parse", "missing right-hand side", col0);
    return std::nullopt;
  }
  if (body == "0" && !index.count("0")) return SparseVec{};
  // split into signed terms at top-level + and - that start a term
  std::vector<std::tuple<int, std::string, int>> terms;  // sign, text, column
  int sign = 1;
  std::string cur;
  int cur_col = col0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+' || c == '-') {
      if (!trim(cur).empty()) {
        terms.emplace_back(sign, cur, cur_col);
        cur.clear();
        sign = 1;
      }
      if (c == '-') sign = -sign;
      continue;
    }
    if (cur.empty()) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      cur_col = col0 + static_cast<int>(i);
    }
    cur.push_back(c);
  }
  if (!trim(cur).empty()) {
    terms.emplace_back(sign, cur, cur_col);
  } else {
    ctx.error("parse", "dangling sign at end of expression", col0 + static_cast<int>(text.size()));
    return std::nullopt;
  }
  bool ok = true;
  for (auto& [sg, tx, col] : terms) {
    std::string s = tx;
    for (auto& ch : s)
      if (ch == '*') ch = ' ';
    auto ws = words(s, col);
    Rat coef(sg);
    std::string label;
    int label_col = col;
    if (ws.size() == 1) {
      label = ws[0].first;
      label_col = ws[0].second;
    } else if (ws.size() == 2) {
      auto r = parse_rational(ws[0].first);
      if (!r) {
        ctx.error("parse", "malformed rational '" + ws[0].first + "'", ws[0].second);
        ok = false;
        continue;
      }
      coef *= *r;
      label = ws[1].first;
      label_col = ws[1].second;
    } else {
      ctx.error("parse", "cannot read term '" + trim(tx) + "'", col);
      ok = false;
      continue;
    }
    auto it = index.find(label);
    if (it == index.end()) {
      if (ws.size() == 1 && parse_rational(label))
        ctx.error("parse", "coefficient '" + label + "' without a basis label", label_col);
      else
        ctx.error("unknown_label", "unknown label '" + label + "'", label_col);
      ok = false;
      continue;
    }
    t.emplace_back(0, it->second, coef);
  }
  if (!ok) return std::nullopt;
  return RatMatrix::from_triplets(1, index.size(), std::move(t)).row(0);
}

inline std::string combination_string(const SparseVec& v, const std::function<std::string(std::size_t)>& label) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& e : v) {
    Rat c = e.value;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    if (c != 1) out += rat_string(c) + " ";
    out += label(e.index);
    first = false;
  }
  return out;
}

}  // namespace detail

/// Parses presentation text; never throws on malformed input.
inline ParsedPresentation parse_presentation_text(const std::string& text) {
  ParsedPresentation out;
  std::vector<Diagnostic>& diags = out.diagnostics;

  enum class Sec { none, algebra, mult, diff, objects, hom, compose, identities };
  Sec sec = Sec::none;
  bool is_cat = false;
  bool is_alg = false;

  // algebra state
  std::string name;
  std::vector<std::pair<std::string, int>> basis_words, degree_words;
  int basis_line = 0, degree_line = 0;
  std::optional<std::pair<std::string, int>> unit_word;
  int unit_line = 0;
  // deferred entry lines: (section, line, lhs, lhs col, rhs, rhs col)
  struct Entry {
    Sec sec;
    int line;
    std::string lhs;
    int lhs_col;
    std::string rhs;
    int rhs_col;
  };
  std::vector<Entry> entries;
  // category state
  std::vector<std::pair<std::string, int>> object_words;
  int object_line = 0;
  struct HomDecl {
    std::string x, y;
    int line;
    std::vector<std::pair<std::string, int>> basis, degrees;
    int basis_line = 0, degree_line = 0;
    std::optional<std::pair<std::string, int>> identity;
    int identity_line = 0;
  };
  std::vector<HomDecl> homs;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const detail::LineCtx ctx{lineno, &diags};
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (t.front() == '[') {
      if (t.back() != ']') {
        ctx.error("parse", "unterminated section header", indent);
        continue;
      }
      auto parts = detail::words(t.substr(1, t.size() - 2), indent + 1);
      const std::string head = parts.empty() ? "" : parts[0].first;
      if (head == "algebra" && parts.size() == 1) {
        sec = Sec::algebra;
        is_alg = true;
      } else if (head == "mult" && parts.size() == 1) {
        sec = Sec::mult;
      } else if (head == "diff" && parts.size() == 1) {
        sec = Sec::diff;
      } else if (head == "objects" && parts.size() == 1) {
        sec = Sec::objects;
        is_cat = true;
      } else if (head == "compose" && parts.size() == 1) {
        sec = Sec::compose;
        is_cat = true;
      } else if (head == "hom" && parts.size() == 3) {
        sec = Sec::hom;
        is_cat = true;
        homs.push_back({parts[1].first, parts[2].first, lineno, {}, {}, 0, 0, std::nullopt, 0});
      } else {
        ctx.error("parse", "unknown section '" + t + "'", indent);
        sec = Sec::none;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      ctx.error("parse", "expected 'key = value'", indent);
      continue;
    }
    const std::string lhs = detail::trim(line.substr(0, eq));
    const std::string rhs = line.substr(eq + 1);
    const int rhs_col = static_cast<int>(eq) + 2;
    auto set_words = [&](std::vector<std::pair<std::string, int>>& dst, int& dline) {
      if (dline != 0) ctx.error("duplicate", "key '" + lhs + "' given twice", indent);
      dst = detail::words(rhs, rhs_col);
      dline = lineno;
    };
    switch (sec) {
      case Sec::algebra:
        if (lhs == "name") {
          name = detail::trim(rhs);
        } else if (lhs == "basis") {
          set_words(basis_words, basis_line);
        } else if (lhs == "degrees") {
          set_words(degree_words, degree_line);
        } else if (lhs == "unit") {
          auto w = detail::words(rhs, rhs_col);
          if (w.size() != 1) ctx.error("parse", "unit takes exactly one label", rhs_col);
          else if (unit_word) ctx.error("duplicate", "unit given twice", indent);
          else {
            unit_word = w[0];
            unit_line = lineno;
          }
        } else {
          ctx.error("parse", "unknown key '" + lhs + "' in [algebra]", indent);
        }
        break;
      case Sec::objects:
        if (lhs == "name") name = detail::trim(rhs);
        else if (lhs == "objects") set_words(object_words, object_line);
        else ctx.error("parse", "unknown key '" + lhs + "' in [objects]", indent);
        break;
      case Sec::hom: {
        auto& h = homs.back();
        if (lhs == "basis") {
          if (h.basis_line) ctx.error("duplicate", "key 'basis' given twice", indent);
          h.basis = detail::words(rhs, rhs_col);
          h.basis_line = lineno;
        } else if (lhs == "degrees") {
          if (h.degree_line) ctx.error("duplicate", "key 'degrees' given twice", indent);
          h.degrees = detail::words(rhs, rhs_col);
          h.degree_line = lineno;
        } else if (lhs == "identity") {
          auto w = detail::words(rhs, rhs_col);
          if (w.size() != 1) ctx.error("parse", "identity takes exactly one label", rhs_col);
          else {
            h.identity = w[0];
            h.identity_line = lineno;
          }
        } else {
          ctx.error("parse", "unknown key '" + lhs + "' in [hom]", indent);
        }
        break;
      }
      case Sec::mult:
      case Sec::compose:
      case Sec::diff:
        entries.push_back({sec, lineno, lhs, indent, rhs, rhs_col});
        break;
      default:
        ctx.error("parse", "entry outside of any section", indent);
    }
  }

  if (is_alg && is_cat) {
    diags.push_back({"parse", "file mixes [algebra] with category sections", 1, 1});
    return out;
  }
  if (!is_alg && !is_cat) {
    if (diags.empty()) diags.push_back({"parse", "no [algebra] or [objects] section", 1, 1});
    return out;
  }

  // ---- shared: label table, entry parsing ----
  std::map<std::string, std::size_t> index;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<std::size_t> source, target;

  auto add_basis = [&](const std::vector<std::pair<std::string, int>>& bw,
                       const std::vector<std::pair<std::string, int>>& dw, int bline, int dline, std::size_t x,
                       std::size_t y) {
    if (bw.size() != dw.size()) {
      diags.push_back({"parse",
                       "basis has " + std::to_string(bw.size()) + " labels but " + std::to_string(dw.size()) +
                           " degrees",
                       dline ? dline : bline, 1});
      return;
    }
    for (std::size_t i = 0; i < bw.size(); ++i) {
      const auto& [l, col] = bw[i];
      if (!detail::valid_label(l)) {
        diags.push_back({"parse", "invalid label '" + l + "'", bline, col});
        continue;
      }
      if (index.count(l)) {
        diags.push_back({"duplicate", "label '" + l + "' declared twice", bline, col});
        continue;
      }
      auto d = detail::parse_rational(dw[i].first);
      if (!d || d->get_den() != 1) {
        diags.push_back({"parse", "degree '" + dw[i].first + "' is not an integer", dline, dw[i].second});
        continue;
      }
      index[l] = labels.size();
      labels.push_back(l);
      degrees.push_back(static_cast<int>(d->get_num().get_si()));
      source.push_back(x);
      target.push_back(y);
    }
  };

  std::map<std::string, std::size_t> objects;
  std::vector<std::optional<std::size_t>> identities;
  if (is_alg) {
    if (!basis_line) diags.push_back({"parse", "missing 'basis' in [algebra]", 1, 1});
    add_basis(basis_words, degree_words, basis_line, degree_line, 0, 0);
  } else {
    if (!object_line) diags.push_back({"parse", "missing 'objects' in [objects]", 1, 1});
    for (const auto& [o, col] : object_words) {
      if (objects.count(o)) diags.push_back({"duplicate", "object '" + o + "' declared twice", object_line, col});
      else objects.emplace(o, objects.size());
    }
    identities.assign(objects.size(), std::nullopt);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& h : homs) {
      auto xi = objects.find(h.x);
      auto yi = objects.find(h.y);
      if (xi == objects.end() || yi == objects.end()) {
        diags.push_back({"unknown_label", "unknown object in [hom " + h.x + " " + h.y + "]", h.line, 1});
        continue;
      }
      if (!seen.insert({xi->second, yi->second}).second)
        diags.push_back({"duplicate", "[hom " + h.x + " " + h.y + "] declared twice", h.line, 1});
      add_basis(h.basis, h.degrees, h.basis_line ? h.basis_line : h.line, h.degree_line, xi->second, yi->second);
      if (h.identity) {
        if (xi->second != yi->second) {
          diags.push_back({"unit", "identity declared in a hom between different objects", h.identity_line, h.identity->second});
        } else if (!index.count(h.identity->first)) {
          diags.push_back({"unknown_label", "unknown label '" + h.identity->first + "'", h.identity_line, h.identity->second});
        } else {
          identities[xi->second] = index.at(h.identity->first);
        }
      }
    }
    for (const auto& [o, i] : objects)
      if (!identities[i]) diags.push_back({"unit", "missing unit: object '" + o + "' has no identity", object_line, 1});
  }

  std::optional<std::size_t> unit;
  if (is_alg) {
    if (!unit_word) {
      diags.push_back({"unit", "missing unit", basis_line ? basis_line : 1, 1});
    } else if (!index.count(unit_word->first)) {
      diags.push_back({"unknown_label", "unknown label '" + unit_word->first + "'", unit_line, unit_word->second});
    } else {
      unit = index.at(unit_word->first);
    }
  }

  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> products;
  std::vector<std::pair<std::size_t, SparseVec>> diffs;
  std::set<std::pair<std::size_t, std::size_t>> seen_products;
  std::set<std::size_t> seen_diffs;
  for (const auto& e : entries) {
    const detail::LineCtx ctx{e.line, &diags};
    const bool mult = e.sec == Sec::mult || e.sec == Sec::compose;
    if (mult && e.sec == Sec::mult && is_cat) ctx.error("parse", "[mult] in a category file; use [compose]", e.lhs_col);
    if (mult && e.sec == Sec::compose && is_alg) ctx.error("parse", "[compose] in an algebra file; use [mult]", e.lhs_col);
    if (mult) {
      const auto star = e.lhs.find('*');
      if (star == std::string::npos) {
        ctx.error("parse", "expected 'a*b = ...'", e.lhs_col);
        continue;
      }
      const std::string a = detail::trim(e.lhs.substr(0, star));
      const std::string b = detail::trim(e.lhs.substr(star + 1));
      bool ok = true;
      for (const auto& l : {a, b})
        if (!index.count(l)) {
          ctx.error("unknown_label", "unknown label '" + l + "'", e.lhs_col);
          ok = false;
        }
      auto v = detail::parse_combination(e.rhs, e.rhs_col, index, ctx);
      if (!ok || !v) continue;
      const auto key = std::make_pair(index.at(a), index.at(b));
      if (!seen_products.insert(key).second) {
        ctx.error("duplicate", "product " + a + "*" + b + " given twice", e.lhs_col);
        continue;
      }
      products.emplace_back(key.first, key.second, std::move(*v));
    } else {
      std::string l = e.lhs;
      if (l.size() > 3 && l.rfind("d(", 0) == 0 && l.back() == ')') l = detail::trim(l.substr(2, l.size() - 3));
      if (!index.count(l)) {
        ctx.error("unknown_label", "unknown label '" + l + "'", e.lhs_col);
        detail::parse_combination(e.rhs, e.rhs_col, index, ctx);
        continue;
      }
      auto v = detail::parse_combination(e.rhs, e.rhs_col, index, ctx);
      if (!v) continue;
      if (!seen_diffs.insert(index.at(l)).second) {
        ctx.error("duplicate", "differential of " + l + " given twice", e.lhs_col);
        continue;
      }
      diffs.emplace_back(index.at(l), std::move(*v));
    }
  }

  if (!diags.empty()) return out;
  if (is_alg) {
    DgaPresentation p;
    p.name = name.empty() ? "unnamed" : name;
    p.labels = labels;
    p.degrees = degrees;
    p.unit = unit;
    p.products = std::move(products);
    p.differential = std::move(diffs);
    out.value = std::move(p);
  } else {
    CategoryPresentation p;
    p.name = name.empty() ? "unnamed" : name;
    p.objects.resize(objects.size());
    for (const auto& [o, i] : objects) p.objects[i] = o;
    for (std::size_t i = 0; i < labels.size(); ++i) p.morphisms.push_back({labels[i], degrees[i], source[i], target[i]});
    p.identities = identities;
    p.compose = std::move(products);
    p.differential = std::move(diffs);
    out.value = std::move(p);
  }
  return out;
}

inline ParsedPresentation parse_presentation(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    ParsedPresentation p;
    p.diagnostics.push_back({"io", "cannot open '" + path + "'", 0, 0});
    return p;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation_text(ss.str());
}

inline std::string emit_presentation(const DgaPresentation& p) {
  std::ostringstream o;
  auto lab = [&](std::size_t i) { return p.labels.at(i); };
  o << "[algebra]\nname = " << p.name << "\nbasis =";
  for (const auto& l : p.labels) o << ' ' << l;
  o << "\ndegrees =";
  for (int d : p.degrees) o << ' ' << d;
  o << '\n';
  if (p.unit) o << "unit = " << p.labels.at(*p.unit) << '\n';
  if (!p.products.empty()) {
    o << "\n[mult]\n";
    for (const auto& [i, j, v] : p.products) o << lab(i) << '*' << lab(j) << " = " << detail::combination_string(v, lab) << '\n';
  }
  if (!p.differential.empty()) {
    o << "\n[diff]\n";
    for (const auto& [i, v] : p.differential) o << "d(" << lab(i) << ") = " << detail::combination_string(v, lab) << '\n';
  }
  return o.str();
}

inline std::string emit_presentation(const CategoryPresentation& p) {
  std::ostringstream o;
  auto lab = [&](std::size_t i) { return p.morphisms.at(i).label; };
  o << "[objects]\nname = " << p.name << "\nobjects =";
  for (const auto& x : p.objects) o << ' ' << x;
  o << '\n';
  // one section per (source, target), in order of first appearance
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& m : p.morphisms)
    if (std::find(order.begin(), order.end(), std::make_pair(m.source, m.target)) == order.end())
      order.emplace_back(m.source, m.target);
  for (const auto& [x, y] : order) {
    o << "\n[hom " << p.objects.at(x) << ' ' << p.objects.at(y) << "]\nbasis =";
    for (const auto& m : p.morphisms)
      if (m.source == x && m.target == y) o << ' ' << m.label;
    o << "\ndegrees =";
    for (const auto& m : p.morphisms)
      if (m.source == x && m.target == y) o << ' ' << m.degree;
    o << '\n';
    if (x == y && x < p.identities.size() && p.identities[x]) o << "identity = " << lab(*p.identities[x]) << '\n';
  }
  if (!p.compose.empty()) {
    o << "\n[compose]\n";
    for (const auto& [g, f, v] : p.compose) o << lab(g) << '*' << lab(f) << " = " << detail::combination_string(v, lab) << '\n';
  }
  if (!p.differential.empty()) {
    o << "\n[diff]\n";
    for (const auto& [i, v] : p.differential) o << "d(" << lab(i) << ") = " << detail::combination_string(v, lab) << '\n';
  }
  return o.str();
}

inline bool same_presentation(const DgaPresentation& a, const DgaPresentation& b) {
  if (a.name != b.name || a.labels != b.labels || a.degrees != b.degrees || a.unit != b.unit) return false;
  if (a.products.size() != b.products.size() || a.differential.size() != b.differential.size()) return false;
  for (std::size_t k = 0; k < a.products.size(); ++k) {
    const auto& [i, j, v] = a.products[k];
    const auto& [i2, j2, v2] = b.products[k];
    if (i != i2 || j != j2 || !detail::sparse_equal(v, v2)) return false;
  }
  for (std::size_t k = 0; k < a.differential.size(); ++k)
    if (a.differential[k].first != b.differential[k].first ||
        !detail::sparse_equal(a.differential[k].second, b.differential[k].second))
      return false;
  return true;
}

}  // namespace dgcyc
