#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "logder/arrangement.hpp"
#include "logder/rational.hpp"

namespace logder {

namespace detail {

inline Arrangement from_int_rows(unsigned dim, const std::vector<std::vector<int>>& rows,
                                 const std::string& name) {
  std::vector<LinearForm> forms;
  forms.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> c(r.begin(), r.end());
    forms.emplace_back(std::move(c));
  }
  return Arrangement(dim, std::move(forms), name);
}

inline bool parse_uint(const std::string& s, unsigned& out) {
  if (s.empty() || s.size() > 6) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  out = static_cast<unsigned>(std::strtoul(s.c_str(), nullptr, 10));
  return true;
}

}  // namespace detail

/// Name patterns accepted by catalog().
inline std::vector<std::string> catalog_names() {
  return {"A1", "A2",       "A3",          "A4",           "A5", "A6", "A7", "A8",
          "B<k>", "SS22(<k>)", "Fam5(<a>,<b>)"};
}

/// Built-in arrangements addressable by name:
///   A1..A8          the eight rank-3 case studies,
///   B<k>            the coordinate hyperplanes of rank k,
///   SS22(<k>)       coordinates plus consecutive coordinate sums
///                   (supersolvable with exponents 1,2,...,2),
///   Fam5(<a>,<b>)   the two-parameter rank-5 family of ten hyperplanes.
/// Throws std::invalid_argument for anything else.
inline Arrangement catalog(const std::string& name) {
  if (name == "A1")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 1, -1}},
        name);
  if (name == "A2")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, -1}, {1, 0, -2}, {0, 1, -1}, {0, 1, -2}},
        name);
  if (name == "A3")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {1, 0, -1}, {1, 0, -2}, {1, 0, -3}, {1, 0, -4}, {0, 1, 0}, {0, 1, -1}},
        name);
  if (name == "A4")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 0, -2}, {0, 1, -2}, {1, -1, 0}},
        name);
  if (name == "A5")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, -1}, {1, 0, -2}, {1, 0, -3}, {0, 1, -1}},
        name);
  if (name == "A6")
    return detail::from_int_rows(3,
                                 {{0, 1, 0},
                                  {0, 0, 1},
                                  {1, 1, 1},
                                  {1, -1, -1},
                                  {2, 4, 1},
                                  {2, 1, 4},
                                  {3, -9, -1}},
                                 name);
  if (name == "A7")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 0, 1}, {0, 1, 1}}, name);
  if (name == "A8")
    return detail::from_int_rows(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, -2, 0}, {1, 0, -1}}, name);

  if (name.size() > 1 && name[0] == 'B') {
    unsigned k = 0;
    if (detail::parse_uint(name.substr(1), k) && k >= 1) {
      std::vector<std::vector<int>> rows(k, std::vector<int>(k, 0));
      for (unsigned i = 0; i < k; ++i) rows[i][i] = 1;
      return detail::from_int_rows(k, rows, name);
    }
  }

  if (name.size() > 6 && name.compare(0, 5, "SS22(") == 0 && name.back() == ')') {
    unsigned k = 0;
    if (detail::parse_uint(name.substr(5, name.size() - 6), k) && k >= 2) {
      std::vector<std::vector<int>> rows;
      for (unsigned i = 0; i < k; ++i) {
        std::vector<int> r(k, 0);
        r[i] = 1;
        rows.push_back(r);
      }
      for (unsigned i = 0; i + 1 < k; ++i) {
        std::vector<int> r(k, 0);
        r[i] = 1;
        r[i + 1] = 1;
        rows.push_back(r);
      }
      return detail::from_int_rows(k, rows, name);
    }
  }

  if (name.size() > 6 && name.compare(0, 5, "Fam5(") == 0 && name.back() == ')') {
    const std::string args = name.substr(5, name.size() - 6);
    const std::size_t comma = args.find(',');
    if (comma != std::string::npos && args.find(',', comma + 1) == std::string::npos) {
      Rational a, b;
      bool ok = true;
      try {
        a = parse_rational(args.substr(0, comma));
        b = parse_rational(args.substr(comma + 1));
      } catch (const std::invalid_argument&) {
        ok = false;
      }
      if (ok) {
        auto row = [](std::initializer_list<Rational> c) { return std::vector<Rational>(c); };
        const Rational O(0), I(1);
        std::vector<LinearForm> forms;
        forms.emplace_back(row({I, O, O, O, O}));  // x1
        forms.emplace_back(row({O, I, O, O, O}));  // x2
        forms.emplace_back(row({I, I, O, O, O}));  // x1 + x2
        forms.emplace_back(row({I, a, O, O, O}));  // x1 + a*x2
        forms.emplace_back(row({O, O, I, O, O}));  // x3
        forms.emplace_back(row({O, O, O, I, O}));  // x4
        forms.emplace_back(row({O, O, O, O, I}));  // x5
        forms.emplace_back(row({O, O, I, I, O}));  // x3 + x4
        forms.emplace_back(row({O, O, I, O, I}));  // x3 + x5
        forms.emplace_back(row({O, O, O, I, b}));  // x4 + b*x5
        return Arrangement(5, std::move(forms), name);
      }
    }
  }

  throw std::invalid_argument("catalog: unknown arrangement name '" + name + "'");
}

/// Pattern test only: a recognized name may still fail to build (for
/// example Fam5 parameters that collapse two hyperplanes).
inline bool is_catalog_name(const std::string& name) {
  if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '8') return true;
  unsigned k = 0;
  if (name.size() > 1 && name[0] == 'B' && detail::parse_uint(name.substr(1), k)) return k >= 1;
  if (name.size() > 6 && name.compare(0, 5, "SS22(") == 0 && name.back() == ')')
    return detail::parse_uint(name.substr(5, name.size() - 6), k) && k >= 2;
  if (name.size() > 6 && name.compare(0, 5, "Fam5(") == 0 && name.back() == ')') {
    const std::string args = name.substr(5, name.size() - 6);
    const std::size_t comma = args.find(',');
    if (comma == std::string::npos || args.find(',', comma + 1) != std::string::npos)
      return false;
    try {
      parse_rational(args.substr(0, comma));
      parse_rational(args.substr(comma + 1));
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return false;
}

}  // namespace logder
