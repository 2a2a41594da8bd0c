#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logder/mpoly.hpp"
#include "logder/qmatrix.hpp"
#include "logder/rational.hpp"

namespace logder {

/// Nonzero linear form, normalized so its first nonzero coefficient is 1.
/// Normalization makes proportional forms (the same hyperplane) compare equal.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    std::size_t p = 0;
    while (p < c_.size() && c_[p] == 0) ++p;
    if (p == c_.size()) throw std::invalid_argument("zero linear form");
    pivot_ = p;
    const Rational inv = Rational(1) / c_[p];
    for (auto& x : c_) x *= inv;
  }

  std::size_t size() const { return c_.size(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  /// Index of the first nonzero (unit) coefficient.
  std::size_t pivot() const { return pivot_; }

  MPoly to_poly() const { return MPoly::linear(c_); }

  bool operator==(const LinearForm& o) const { return c_ == o.c_; }
  bool operator<(const LinearForm& o) const {
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
  }

  std::string str(std::vector<std::string> names = {}) const {
    return to_poly().str(std::move(names));
  }

 private:
  std::vector<Rational> c_;
  std::size_t pivot_ = 0;
};

/// Central arrangement: a finite list of pairwise distinct hyperplanes
/// through the origin of Q^k, each given by its normalized linear form.
class Arrangement {
 public:
  Arrangement(unsigned dim, std::vector<LinearForm> forms, std::string name = "")
      : dim_(dim), forms_(std::move(forms)), name_(std::move(name)) {
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      if (forms_[i].size() != dim_)
        throw std::invalid_argument("form size does not match ambient dimension");
      for (std::size_t j = 0; j < i; ++j)
        if (forms_[i] == forms_[j])
          throw std::invalid_argument("duplicate hyperplane at rows " +
                                      std::to_string(j + 1) + " and " + std::to_string(i + 1));
    }
  }

  unsigned dim() const { return dim_; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const LinearForm& form(std::size_t i) const { return forms_.at(i); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::vector<std::string> var_names() const { return default_var_names(dim_); }

 private:
  unsigned dim_;
  std::vector<LinearForm> forms_;
  std::string name_;
};

/// Parse failure for the .arr text format, with a machine-checkable kind.
class ArrParseError : public std::runtime_error {
 public:
  enum class Kind {
    BadHeader,
    MalformedRational,
    WrongColumnCount,
    WrongRowCount,
    ZeroForm,
    DuplicateForm,
  };

  ArrParseError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline std::vector<std::string> arr_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  auto flush = [&] {
    const std::size_t hash = cur.find('#');
    if (hash != std::string::npos) cur.erase(hash);
    std::istringstream in(cur);
    std::string tok;
    std::string cleaned;
    while (in >> tok) {
      if (!cleaned.empty()) cleaned += ' ';
      cleaned += tok;
    }
    if (!cleaned.empty()) lines.push_back(cleaned);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '\n')
      flush();
    else
      cur += ch;
  }
  flush();
  return lines;
}

}  // namespace detail

/// Parse the .arr format: '#' starts a comment running to end of line; the
/// first non-comment line holds "k n"; each of the following n lines holds
/// exactly k rationals ("p", "-p" or "p/q" with q > 0).
inline Arrangement parse_arrangement(std::string_view text, std::string name = "") {
  const std::vector<std::string> lines = detail::arr_lines(text);
  if (lines.empty())
    throw ArrParseError(ArrParseError::Kind::BadHeader, "missing 'k n' header");

  auto parse_uint = [&](const std::string& tok) -> unsigned {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ArrParseError(ArrParseError::Kind::BadHeader, "bad header token '" + tok + "'");
    return static_cast<unsigned>(std::stoul(tok));
  };

  std::istringstream header(lines[0]);
  std::vector<std::string> htoks;
  for (std::string t; header >> t;) htoks.push_back(t);
  if (htoks.size() != 2)
    throw ArrParseError(ArrParseError::Kind::BadHeader, "header must be 'k n'");
  const unsigned k = parse_uint(htoks[0]);
  const unsigned n = parse_uint(htoks[1]);
  if (k == 0) throw ArrParseError(ArrParseError::Kind::BadHeader, "dimension k must be positive");

  if (lines.size() - 1 != n)
    throw ArrParseError(ArrParseError::Kind::WrongRowCount,
                        "expected " + std::to_string(n) + " form rows, found " +
                            std::to_string(lines.size() - 1));

  std::vector<LinearForm> forms;
  for (unsigned r = 0; r < n; ++r) {
    std::istringstream in(lines[r + 1]);
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    if (toks.size() != k)
      throw ArrParseError(ArrParseError::Kind::WrongColumnCount,
                          "row " + std::to_string(r + 1) + ": expected " + std::to_string(k) +
                              " entries, found " + std::to_string(toks.size()));
    std::vector<Rational> coeffs;
    coeffs.reserve(k);
    for (const std::string& t : toks) {
      try {
        coeffs.push_back(parse_rational(t));
      } catch (const std::invalid_argument& e) {
        throw ArrParseError(ArrParseError::Kind::MalformedRational,
                            "row " + std::to_string(r + 1) + ": " + e.what());
      }
    }
    bool all_zero = std::all_of(coeffs.begin(), coeffs.end(),
                                [](const Rational& q) { return q == 0; });
    if (all_zero)
      throw ArrParseError(ArrParseError::Kind::ZeroForm,
                          "row " + std::to_string(r + 1) + ": zero form");
    LinearForm form(std::move(coeffs));
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (forms[j] == form)
        throw ArrParseError(ArrParseError::Kind::DuplicateForm,
                            "row " + std::to_string(r + 1) + " duplicates row " +
                                std::to_string(j + 1));
    forms.push_back(std::move(form));
  }
  return Arrangement(k, std::move(forms), std::move(name));
}

/// Render in .arr format; parsing the output reproduces the arrangement.
inline std::string to_arr_text(const Arrangement& a) {
  std::ostringstream out;
  if (!a.name().empty()) out << "# " << a.name() << "\n";
  out << a.dim() << " " << a.size() << "\n";
  for (const LinearForm& f : a.forms()) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j) out << " ";
      out << rational_str(f[j]);
    }
    out << "\n";
  }
  return out.str();
}

/// n x k matrix whose rows are the normalized form coefficients.
inline QMatrix coefficient_matrix(const Arrangement& a) {
  QMatrix m(a.size(), a.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m.at(i, j) = a.form(i)[j];
  return m;
}

/// Rank of the arrangement = codimension of the common intersection.
inline unsigned rank(const Arrangement& a) {
  return static_cast<unsigned>(rank(coefficient_matrix(a)));
}

inline bool is_essential(const Arrangement& a) { return rank(a) == a.dim(); }

/// Q(A): the product of the normalized defining forms (1 for the empty
/// arrangement).
inline MPoly defining_polynomial(const Arrangement& a) {
  MPoly q = MPoly::one(a.dim());
  for (const LinearForm& f : a.forms()) q *= f.to_poly();
  return q;
}

/// Partition the forms by the coordinate-support graph: two forms are
/// connected when they share a variable. Each class is returned as a
/// sub-arrangement in the ambient coordinates; a singleton answer means no
/// split is visible in the current coordinates.
inline std::vector<Arrangement> coordinate_product_split(const Arrangement& a) {
  const unsigned k = a.dim();
  std::vector<unsigned> parent(k);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](unsigned x, unsigned y) { parent[find(x)] = find(y); };

  for (const LinearForm& f : a.forms()) {
    std::optional<unsigned> first;
    for (unsigned j = 0; j < k; ++j) {
      if (f[j] == 0) continue;
      if (first)
        unite(*first, j);
      else
        first = j;
    }
  }

  std::vector<std::pair<unsigned, std::vector<LinearForm>>> groups;  // (root, forms)
  for (const LinearForm& f : a.forms()) {
    unsigned root = find(static_cast<unsigned>(f.pivot()));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == root; });
    if (it == groups.end()) {
      groups.push_back({root, {f}});
    } else {
      it->second.push_back(f);
    }
  }

  std::vector<Arrangement> parts;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::string nm = a.name().empty() ? "" : a.name() + "#" + std::to_string(g + 1);
    parts.emplace_back(k, std::move(groups[g].second), std::move(nm));
  }
  return parts;
}

/// Project the forms onto their own span, expressed in the canonical RREF
/// basis of the row space. The result is essential of the same rank;
/// distinct hyperplanes stay distinct.
inline Arrangement essentialize(const Arrangement& a) {
  const RrefResult rr = rref(coefficient_matrix(a));
  const unsigned r = static_cast<unsigned>(rr.pivots.size());
  if (r == a.dim()) return a;
  std::vector<LinearForm> forms;
  forms.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Rational> y(r);
    for (unsigned b = 0; b < r; ++b) y[b] = a.form(i)[rr.pivots[b]];
    forms.emplace_back(std::move(y));
  }
  std::string nm = a.name().empty() ? "" : a.name() + "~ess";
  if (r == 0) throw std::invalid_argument("essentialize: empty arrangement has no span");
  return Arrangement(r, std::move(forms), std::move(nm));
}

}  // namespace logder
