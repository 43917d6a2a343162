#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ring_atlas/ring.hpp"

namespace ring_atlas {

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

// Grammar:
//   expr  := Z(m) | GF(p,n) | M(n, expr) | T(n, expr) | sum(expr, expr, ...) | table
//   table := table{ order: n; add: matrix; mul: matrix; one: i [;] }
//   matrix := [[i, ...], ...]
// '#' starts a comment running to end of line.
class RingSpecParser {
 public:
  explicit RingSpecParser(std::string_view text) : text_(text) {}

  FiniteRing parse_document() {
    auto r = expr();
    skip();
    if (pos_ < text_.size()) error("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    skip();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) error("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (start == pos_) error("expected an integer");
    return v;
  }

  FiniteRing expr() {
    skip();
    const std::size_t start = pos_;
    const std::string head = word();
    if (head.empty()) error("expected a ring expression");
    if (head == "table") return table();
    expect('(');
    FiniteRing out;
    if (head == "Z") {
      auto m = number();
      out = at(start, [&] { return make_zmod(m); });
    } else if (head == "GF") {
      auto p = number();
      expect(',');
      auto n = number();
      out = at(start, [&] { return make_galois_field(p, static_cast<unsigned>(n)); });
    } else if (head == "M" || head == "T") {
      auto n = number();
      expect(',');
      auto field = expr();
      out = at(start, [&] {
        return head == "M" ? make_matrix_ring(field, static_cast<unsigned>(n)) : make_upper_triangular(field, static_cast<unsigned>(n));
      });
    } else if (head == "sum") {
      std::vector<FiniteRing> parts{expr()};
      while (peek(',')) {
        ++pos_;
        parts.push_back(expr());
      }
      out = at(start, [&] { return direct_sum(parts); });
    } else {
      pos_ = start;
      error("unknown constructor '" + head + "'");
    }
    expect(')');
    return out;
  }

  template <class F>
  FiniteRing at(std::size_t start, F&& build) {
    try {
      return build();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      pos_ = start;
      error(e.what());
    }
  }

  std::vector<std::vector<std::uint64_t>> matrix() {
    std::vector<std::vector<std::uint64_t>> rows;
    expect('[');
    do {
      expect('[');
      std::vector<std::uint64_t> row{number()};
      while (peek(',')) {
        ++pos_;
        row.push_back(number());
      }
      expect(']');
      rows.push_back(std::move(row));
    } while (peek(',') && (++pos_, true));
    expect(']');
    return rows;
  }

  FiniteRing table() {
    const std::size_t start = pos_;
    expect('{');
    std::uint64_t order = 0, one = 0;
    std::vector<std::vector<std::uint64_t>> add, mul;
    bool have_order = false, have_add = false, have_mul = false, have_one = false;
    while (!peek('}')) {
      const std::string key = word();
      expect(':');
      if (key == "order") {
        order = number();
        have_order = true;
      } else if (key == "add") {
        add = matrix();
        have_add = true;
      } else if (key == "mul") {
        mul = matrix();
        have_mul = true;
      } else if (key == "one") {
        one = number();
        have_one = true;
      } else {
        error("unknown table field '" + key + "'");
      }
      if (peek(';')) ++pos_;
      else if (!peek('}')) error("expected ';' or '}'");
    }
    expect('}');
    if (!have_order || !have_add || !have_mul || !have_one) {
      pos_ = start;
      error("table needs order, add, mul and one");
    }
    auto flatten = [&](const std::vector<std::vector<std::uint64_t>>& m, const char* name) {
      if (m.size() != order) {
        pos_ = start;
        error(std::string(name) + " table must have " + std::to_string(order) + " rows");
      }
      std::vector<index_type> flat;
      for (const auto& row : m) {
        if (row.size() != order) {
          pos_ = start;
          error(std::string(name) + " table rows must have " + std::to_string(order) + " entries");
        }
        for (auto v : row) {
          if (v >= order) {
            pos_ = start;
            error(std::string(name) + " table entry " + std::to_string(v) + " out of range");
          }
          flat.push_back(static_cast<index_type>(v));
        }
      }
      return flat;
    };
    if (order < 1 || order > order_cap()) {
      pos_ = start;
      error("table order must be between 1 and the order cap " + std::to_string(order_cap()));
    }
    auto add_flat = flatten(add, "add");
    auto mul_flat = flatten(mul, "mul");
    if (one >= order) {
      pos_ = start;
      error("identity index out of range");
    }
    return at(start, [&] {
      auto ring = normalize_tables(order, add_flat, mul_flat, static_cast<index_type>(one), "table").ring;
      auto report = validate(ring);
      if (!report.ok()) {
        const auto& v = report.violations.front();
        fail(ErrorKind::invalid_parameter, "table violates " + v.law + " at (" + std::to_string(v.a) + ", " +
                                               std::to_string(v.b) + ", " + std::to_string(v.c) + ")");
      }
      return ring;
    });
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FiniteRing parse_ring(std::string_view text) { return detail::RingSpecParser(text).parse_document(); }

inline FiniteRing load_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_parameter, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_ring(buffer.str());
}

/// Raw-table text form, parseable by parse_ring. Element indices are the
/// ring's own indices; the label goes in a leading comment.
inline std::string export_table(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  std::ostringstream out;
  out << "# " << r.label() << "\n";
  out << "table{\n  order: " << n << ";\n";
  auto dump = [&](const char* name, auto op) {
    out << "  " << name << ": [";
    for (index_type a = 0; a < n; ++a) {
      out << (a ? ",\n        [" : "[");
      for (index_type b = 0; b < n; ++b) out << (b ? "," : "") << op(a, b);
      out << "]";
    }
    out << "];\n";
  };
  dump("add", [&](index_type a, index_type b) { return r.add(a, b); });
  dump("mul", [&](index_type a, index_type b) { return r.mul(a, b); });
  out << "  one: " << r.one() << "\n}\n";
  return out.str();
}

}  // namespace ring_atlas
