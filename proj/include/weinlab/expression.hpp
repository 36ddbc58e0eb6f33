#pragma once

// Tiny call-expression grammar shared by set and function specs:
//   expr := number | name [ '(' [ expr { ',' expr } ] ')' ]
// plus the shorthand "name:a,b" for "name(a,b)".

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "weinlab/errors.hpp"

namespace weinlab {

struct Expr {
  std::string name;  // empty for numbers
  double number = 0.0;
  std::vector<Expr> args;

  bool is_number() const noexcept { return name.empty(); }

  double arg(std::size_t k) const {
    if (k >= args.size() || !args[k].is_number()) {
      throw DomainError("'" + name + "': argument " + std::to_string(k + 1) + " must be a number");
    }
    return args[k].number;
  }
};

/// Shortest round-trip decimal form of a double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string to_string(const Expr& e) {
  if (e.is_number()) return format_number(e.number);
  std::string out = e.name + "(";
  for (std::size_t k = 0; k < e.args.size(); ++k) {
    if (k) out += ",";
    out += to_string(e.args[k]);
  }
  return out + ")";
}

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  Expr parse_all() {
    Expr e = parse();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("cannot parse '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " +
                      msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Expr parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected an expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      return parse_number();
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a name or a number");
    Expr e;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      e.name += s_[pos_++];
    }
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return e;
      }
      for (;;) {
        e.args.push_back(parse());
        skip_ws();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        if (s_[pos_] != ',') fail("expected ',' or ')'");
        ++pos_;
      }
    } else if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      for (;;) {
        e.args.push_back(parse());
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    return e;
  }

  Expr parse_number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    if (*begin == '+') ++begin;
    Expr e;
    auto res = std::from_chars(begin, end, e.number);
    if (res.ec != std::errc{} || !std::isfinite(e.number)) fail("malformed number");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return e;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expression(const std::string& text) {
  return detail::ExprParser(text).parse_all();
}

}  // namespace weinlab
