#pragma once

// Sectioned key-value problem files. Grammar (one item per line, '#'
// starts a comment, blank lines are ignored):
//
//   file        = { section } ;
//   section     = "[" name "]" { entry } ;
//   [ring]        "variables" "=" ident { "," ident }
//                 "weights" "=" int { "," int }
//   [ideal]       poly                                   one generator per line
//   [poisson]     "canonical" | ident "," ident "=" poly
//   [group]       "generator" "=" row { ";" row }        repeatable
//                 "invariants" "=" poly { "," poly }
//                 "target" "=" ident { "," ident }
//   [basechange]  rational { rational }                  one matrix row per line
//   [gram]        poly { "," poly }                      one matrix row per line
//   [options]     "order" "=" ( "grevlex" | "lex" | "elimination(" int ")" )
//                 "degree_bound" "=" int
//   row         = rational { rational } ;
//   rational    = [ "-" ] digits [ "/" digits ] ;

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "poissym/errors.hpp"
#include "poissym/modvec.hpp"
#include "poissym/poisson.hpp"
#include "poissym/polyring.hpp"
#include "poissym/quotient.hpp"

namespace poissym {

struct GroupBlock {
  std::vector<RationalMatrix> generators;
  std::optional<std::vector<Poly>> invariants;
  std::optional<VarRing> target;
};

struct ProblemOptions {
  std::optional<MonomialOrder> order;
  std::optional<unsigned> degree_bound;
};

struct ProblemFile {
  VarRing ring;
  /// Unset when the file has no [ideal] section; an empty list when the
  /// section is present but has no generators.
  std::optional<std::vector<Poly>> ideal;
  std::optional<PoissonStructure> poisson;
  std::optional<GroupBlock> group;
  std::optional<RationalMatrix> base_change;
  std::optional<PolyMatrix> gram;
  ProblemOptions options;
};

/// grevlex | lex | elimination(k) | elimination:k
inline std::optional<MonomialOrder> parse_order(std::string_view s) {
  if (s == "grevlex") return MonomialOrder::grevlex();
  if (s == "lex") return MonomialOrder::lex();
  std::string_view digits;
  if (s.starts_with("elimination(") && s.ends_with(")"))
    digits = s.substr(12, s.size() - 13);
  else if (s.starts_with("elimination:"))
    digits = s.substr(12);
  if (!digits.empty()) {
    if (digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
      return std::nullopt;
    return MonomialOrder::elimination(std::stoul(std::string(digits)));
  }
  return std::nullopt;
}

namespace detail {

struct SourceLine {
  std::size_t number;
  std::string text;  // comment stripped, right-trimmed
  std::size_t indent;
};

inline std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

/// A trimmed piece of a line together with its column.
struct Field {
  std::string text;
  std::size_t column;
};

inline Field trimmed(std::string_view s, std::size_t begin, std::size_t end) {
  std::size_t b = skip_space(s, begin);
  std::size_t e = end;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {std::string(s.substr(b, e - b)), b};
}

inline std::vector<Field> split(std::string_view s, std::size_t begin, char sep) {
  std::vector<Field> out;
  std::size_t start = begin;
  for (std::size_t i = begin; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trimmed(s, start, i));
      start = i + 1;
    }
  return out;
}

class ProblemParser {
 public:
  explicit ProblemParser(std::string_view text) {
    std::size_t number = 0;
    std::string current;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
      const std::size_t indent = skip_space(raw, 0);
      if (indent == raw.size()) continue;
      if (raw[indent] == '[') {
        if (raw.back() != ']') throw ParseError("unterminated section header", raw.size(), number);
        current = trimmed(raw, indent + 1, raw.size() - 1).text;
        static const std::set<std::string> known{"ring", "ideal", "poisson", "group", "basechange", "gram", "options"};
        if (!known.contains(current)) throw ParseError("unknown section [" + current + "]", indent, number);
        if (sections_.contains(current)) throw ParseError("duplicate section [" + current + "]", indent, number);
        sections_[current];
        continue;
      }
      if (current.empty()) throw ParseError("entry outside any section", indent, number);
      sections_[current].push_back({number, raw, indent});
    }
  }

  ProblemFile parse() {
    ProblemFile out;
    if (!sections_.contains("ring")) throw ParseError("missing [ring] section", 0, 1);
    out.ring = parse_ring(sections_["ring"]);
    if (sections_.contains("ideal")) {
      out.ideal.emplace();
      for (const auto& line : sections_["ideal"]) out.ideal->push_back(poly(line, {line.text.substr(line.indent), line.indent}, out.ring));
    }
    if (sections_.contains("poisson")) out.poisson = parse_poisson(sections_["poisson"], out.ring);
    if (sections_.contains("group")) out.group = parse_group(sections_["group"], out.ring);
    if (sections_.contains("basechange")) out.base_change = parse_base_change(sections_["basechange"]);
    if (sections_.contains("gram")) out.gram = parse_gram(sections_["gram"], out.ring);
    if (sections_.contains("options")) out.options = parse_options(sections_["options"]);
    return out;
  }

 private:
  static std::pair<Field, Field> key_value(const SourceLine& line) {
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line.indent, line.number);
    Field key = trimmed(line.text, line.indent, eq);
    Field value = trimmed(line.text, eq + 1, line.text.size());
    if (value.text.empty()) throw ParseError("missing value for '" + key.text + "'", eq + 1, line.number);
    return {key, value};
  }

  static Poly poly(const SourceLine& line, const Field& f, const VarRing& ring) {
    try {
      return parse_poly(f.text, ring);
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), f.column + e.position(), line.number);
    } catch (const InputError& e) {
      throw ParseError(e.what(), f.column, line.number);
    }
  }

  static Rational rational(const SourceLine& line, const Field& f) {
    const std::string& s = f.text;
    std::size_t i = s.starts_with('-') ? 1 : 0;
    const std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool ok = i > digits_start;
    if (ok && i < s.size() && s[i] == '/') {
      const std::size_t den_start = ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      ok = i > den_start && s.find_first_not_of('0', den_start) < i;
    }
    if (!ok || i != s.size()) throw ParseError("expected a rational number, got '" + s + "'", f.column, line.number);
    Rational r(s);
    r.canonicalize();
    return r;
  }

  static std::vector<Field> words(const SourceLine& line, const Field& f) {
    std::vector<Field> out;
    std::size_t i = 0;
    while (i < f.text.size()) {
      i = skip_space(f.text, i);
      if (i == f.text.size()) break;
      std::size_t j = i;
      while (j < f.text.size() && !std::isspace(static_cast<unsigned char>(f.text[j]))) ++j;
      out.push_back({f.text.substr(i, j - i), f.column + i});
      i = j;
    }
    if (out.empty()) throw ParseError("empty matrix row", f.column, line.number);
    return out;
  }

  static std::vector<Rational> row(const SourceLine& line, const Field& f) {
    std::vector<Rational> out;
    for (const auto& w : words(line, f)) out.push_back(rational(line, w));
    return out;
  }

  static VarRing parse_ring(const std::vector<SourceLine>& lines) {
    std::optional<std::vector<std::string>> names;
    std::vector<unsigned> weights;
    std::size_t weight_line = 0;
    for (const auto& line : lines) {
      auto [key, value] = key_value(line);
      if (key.text == "variables") {
        names.emplace();
        for (const auto& f : split(line.text, value.column, ',')) {
          if (!VarRing::valid_identifier(f.text))
            throw ParseError("invalid variable name '" + f.text + "'", f.column, line.number);
          names->push_back(f.text);
        }
      } else if (key.text == "weights") {
        weight_line = line.number;
        for (const auto& f : split(line.text, value.column, ',')) {
          if (f.text.empty() || f.text.size() > 6 ||
              !std::all_of(f.text.begin(), f.text.end(), [](char c) { return std::isdigit(c); }))
            throw ParseError("expected a positive integer weight", f.column, line.number);
          weights.push_back(static_cast<unsigned>(std::stoul(f.text)));
        }
      } else {
        throw ParseError("unknown key '" + key.text + "' in [ring]", key.column, line.number);
      }
    }
    if (!names) throw ParseError("[ring] needs 'variables = ...'", 0, lines.empty() ? 1 : lines.front().number);
    try {
      return VarRing(*names, weights);
    } catch (const InputError& e) {
      throw ParseError(e.what(), 0, weight_line ? weight_line : lines.front().number);
    }
  }

  static PoissonStructure parse_poisson(const std::vector<SourceLine>& lines, const VarRing& ring) {
    const std::size_t n = ring.size();
    if (lines.size() == 1 && lines.front().text.substr(lines.front().indent) == "canonical") {
      try {
        return PoissonStructure::canonical(ring);
      } catch (const InputError& e) {
        throw ParseError(e.what(), lines.front().indent, lines.front().number);
      }
    }
    PolyMatrix m(n, n, n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& line : lines) {
      auto [key, value] = key_value(line);
      const auto eq = line.text.find('=');
      const auto pair = split(std::string_view(line.text).substr(0, eq), key.column, ',');
      if (pair.size() != 2) throw ParseError("expected 'a, b = value'", key.column, line.number);
      std::size_t idx[2];
      for (int k = 0; k < 2; ++k) {
        auto i = ring.index_of(pair[k].text);
        if (!i) throw ParseError("unknown variable '" + pair[k].text + "'", pair[k].column, line.number);
        idx[k] = *i;
      }
      if (idx[0] == idx[1]) throw ParseError("the bracket of a variable with itself is 0", key.column, line.number);
      if (!seen.insert(std::minmax(idx[0], idx[1])).second)
        throw ParseError("bracket given twice", key.column, line.number);
      const Poly v = poly(line, value, ring);
      m.at(idx[0], idx[1]) = v;
      m.at(idx[1], idx[0]) = -v;
    }
    return PoissonStructure(ring, std::move(m));
  }

  static GroupBlock parse_group(const std::vector<SourceLine>& lines, const VarRing& ring) {
    GroupBlock out;
    const std::size_t n = ring.size();
    for (const auto& line : lines) {
      auto [key, value] = key_value(line);
      if (key.text == "generator") {
        RationalMatrix A;
        for (const auto& r : split(line.text, value.column, ';')) {
          A.push_back(row(line, r));
          if (A.back().size() != n)
            throw ParseError("matrix row needs " + std::to_string(n) + " entries", r.column, line.number);
        }
        if (A.size() != n) throw ParseError("matrix needs " + std::to_string(n) + " rows", value.column, line.number);
        out.generators.push_back(std::move(A));
      } else if (key.text == "invariants") {
        out.invariants.emplace();
        for (const auto& f : split(line.text, value.column, ',')) out.invariants->push_back(poly(line, f, ring));
      } else if (key.text == "target") {
        std::vector<std::string> names;
        for (const auto& f : split(line.text, value.column, ',')) names.push_back(f.text);
        try {
          out.target = VarRing(names);
        } catch (const InputError& e) {
          throw ParseError(e.what(), value.column, line.number);
        }
      } else {
        throw ParseError("unknown key '" + key.text + "' in [group]", key.column, line.number);
      }
    }
    if (out.target && (!out.invariants || out.invariants->size() != out.target->size()))
      throw ParseError("'target' needs one name per listed invariant", 0, lines.back().number);
    return out;
  }

  static RationalMatrix parse_base_change(const std::vector<SourceLine>& lines) {
    RationalMatrix out;
    for (const auto& line : lines) {
      out.push_back(row(line, {line.text.substr(line.indent), line.indent}));
      if (out.back().size() != out.front().size())
        throw ParseError("base change rows differ in length", line.indent, line.number);
    }
    return out;
  }

  static PolyMatrix parse_gram(const std::vector<SourceLine>& lines, const VarRing& ring) {
    std::vector<std::vector<Poly>> rows;
    for (const auto& line : lines) {
      rows.emplace_back();
      for (const auto& f : split(line.text, line.indent, ',')) rows.back().push_back(poly(line, f, ring));
      if (rows.back().size() != lines.size())
        throw ParseError("the Gram matrix must be square", line.indent, line.number);
    }
    return PolyMatrix::from_rows(rows, ring.size());
  }

  static ProblemOptions parse_options(const std::vector<SourceLine>& lines) {
    ProblemOptions out;
    for (const auto& line : lines) {
      auto [key, value] = key_value(line);
      if (key.text == "order") {
        out.order = parse_order(value.text);
        if (!out.order) throw ParseError("unknown monomial order '" + value.text + "'", value.column, line.number);
      } else if (key.text == "degree_bound") {
        const auto& s = value.text;
        if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); }) ||
            std::stoul(s) == 0)
          throw ParseError("degree_bound must be a positive integer", value.column, line.number);
        out.degree_bound = static_cast<unsigned>(std::stoul(s));
      } else {
        throw ParseError("unknown key '" + key.text + "' in [options]", key.column, line.number);
      }
    }
    return out;
  }

  std::map<std::string, std::vector<SourceLine>> sections_;
};

}  // namespace detail

inline ProblemFile parse_problem(std::string_view text) { return detail::ProblemParser(text).parse(); }

inline ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace poissym
