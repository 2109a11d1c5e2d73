#pragma once
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

namespace sfc {

// One verification outcome. status is "pass", "flag" (a recorded source value
// disagrees with the computed one, and the computed one verifies) or "fail".
struct CheckResult {
  std::string entry;
  std::string check;
  std::string status;
  std::string detail;
};

// Order ids so digit runs compare numerically: n2 before n10, 17 before 27A.
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit((unsigned char)a[i]), db = std::isdigit((unsigned char)b[j]);
    if (da && db) {
      std::size_t i0 = i, j0 = j;
      while (i < a.size() && std::isdigit((unsigned char)a[i])) ++i;
      while (j < b.size() && std::isdigit((unsigned char)b[j])) ++j;
      std::string na = a.substr(i0, i - i0), nb = b.substr(j0, j - j0);
      na.erase(0, na.find_first_not_of('0'));
      nb.erase(0, nb.find_first_not_of('0'));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

inline void sort_results(std::vector<CheckResult>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const CheckResult& x, const CheckResult& y) {
    if (x.entry != y.entry) return natural_less(x.entry, y.entry);
    return x.check < y.check;
  });
}

inline std::string render_text(const std::vector<CheckResult>& rs) {
  std::string out = "== verification report ==\n";
  int pass = 0, flag = 0, fail = 0;
  for (auto& r : rs) {
    std::string label = r.status == "pass" ? "[PASS]" : r.status == "flag" ? "[FLAG]" : "[FAIL]";
    (r.status == "pass" ? pass : r.status == "flag" ? flag : fail)++;
    out += label + " " + r.entry + "/" + r.check;
    if (!r.detail.empty()) out += ": " + r.detail;
    out += "\n";
  }
  if (!rs.empty())
    out += "== " + std::to_string(rs.size()) + " checks: " + std::to_string(pass) + " pass, " +
           std::to_string(flag) + " flagged, " + std::to_string(fail) + " failed ==\n";
  return out;
}

namespace detail {
inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if ((unsigned char)c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}
}  // namespace detail

// Line-delimited records, one JSON object per line, fields in fixed order.
inline std::string render_records(const std::vector<CheckResult>& rs) {
  std::string out;
  for (auto& r : rs)
    out += "{\"entry\":\"" + detail::json_escape(r.entry) + "\",\"check\":\"" +
           detail::json_escape(r.check) + "\",\"status\":\"" + detail::json_escape(r.status) +
           "\",\"detail\":\"" + detail::json_escape(r.detail) + "\"}\n";
  return out;
}

inline bool any_failed(const std::vector<CheckResult>& rs, bool strict) {
  for (auto& r : rs)
    if (r.status == "fail" || (strict && r.status == "flag")) return true;
  return false;
}

}  // namespace sfc
