#pragma once

// Command reports: dimension tables plus pass/fail checks, rendered as
// aligned text, JSON or CSV. Rendering is deterministic; timing is only
// included when requested.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complex.hpp"

namespace dgcyc {

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << v;
  return o.str();
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::string input;
  std::string digest;
  std::vector<Table> tables;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::optional<double> seconds;

  bool ok() const { return all_pass(checks); }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
  }
};

enum class Format { text, json, csv };

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void render_table(std::ostream& o, const Table& t) {
  std::vector<std::size_t> w(t.columns.size(), 0);
  for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = t.columns[c].size();
  for (const auto& r : t.rows)
    for (std::size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], r[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < w.size(); ++c) {
      const std::string v = c < cells.size() ? cells[c] : "";
      if (c) s += "  ";
      const std::string pad(w[c] - v.size(), ' ');
      s += c == 0 ? v + pad : pad + v;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    o << s << '\n';
  };
  o << t.name << '\n';
  line(t.columns);
  std::vector<std::string> rule;
  for (auto x : w) rule.emplace_back(x, '-');
  line(rule);
  for (const auto& r : t.rows) line(r);
}

}  // namespace detail

/// Per family: number passed / total, then every failing check.
inline std::string render_text(const Report& r) {
  std::ostringstream o;
  o << r.command << "  [" << r.input << "  digest " << r.digest << "]\n";
  for (const auto& t : r.tables) {
    o << '\n';
    detail::render_table(o, t);
  }
  if (!r.checks.empty()) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> fam;
    std::vector<std::string> order;
    for (const auto& c : r.checks) {
      if (!fam.count(c.family)) order.push_back(c.family);
      auto& [pass, total] = fam[c.family];
      pass += c.pass;
      ++total;
    }
    Table t{"checks", {"family", "passed", "total", "status"}, {}};
    for (const auto& f : order)
      t.rows.push_back({f, std::to_string(fam[f].first), std::to_string(fam[f].second),
                        fam[f].first == fam[f].second ? "PASS" : "FAIL"});
    o << '\n';
    detail::render_table(o, t);
    bool header = false;
    for (const auto& c : r.checks) {
      if (c.pass) continue;
      if (!header) o << "\nfailed checks\n";
      header = true;
      o << "  FAIL " << c.family << '/' << c.name;
      if (!c.where.empty()) o << " at " << c.where;
      if (!c.detail.empty()) o << ": " << c.detail;
      o << '\n';
    }
  }
  for (const auto& n : r.notes) o << "\nnote: " << n << '\n';
  if (r.seconds) o << "\ntime " << std::fixed << std::setprecision(3) << *r.seconds << " s\n";
  o << "\nresult " << (r.ok() ? "PASS" : "FAIL") << '\n';
  return o.str();
}

inline std::string render_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["digest"] = r.digest;
  j["result"] = r.ok() ? "pass" : "fail";
  ordered_json tables = ordered_json::array();
  for (const auto& t : r.tables) {
    ordered_json tj;
    tj["name"] = t.name;
    tj["columns"] = t.columns;
    tj["rows"] = t.rows;
    tables.push_back(tj);
  }
  j["tables"] = tables;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["family"] = c.family;
    cj["name"] = c.name;
    cj["where"] = c.where;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["notes"] = r.notes;
  if (r.seconds) j["seconds"] = *r.seconds;
  return j.dump(2) + "\n";
}

/// Dimension tables only, each preceded by a `# name` line; checks as a final table.
inline std::string render_csv(const Report& r) {
  std::ostringstream o;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) o << (i ? "," : "") << detail::csv_field(cells[i]);
    o << '\n';
  };
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) o << '\n';
    first = false;
    o << "# " << t.name << '\n';
    row(t.columns);
    for (const auto& x : t.rows) row(x);
  }
  if (!r.checks.empty()) {
    if (!first) o << '\n';
    o << "# checks\n";
    row({"family", "name", "where", "pass", "detail"});
    for (const auto& c : r.checks) row({c.family, c.name, c.where, c.pass ? "1" : "0", c.detail});
  }
  return o.str();
}

inline std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::json:
      return render_json(r);
    case Format::csv:
      return render_csv(r);
    default:
      return render_text(r);
  }
}

}  // namespace dgcyc
