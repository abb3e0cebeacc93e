#pragma once

// Function expressions for the command line:
//
//   expr   := term ("+" term)*
//   term   := NUMBER "*" "x" "^" NUMBER | NUMBER
//   NUMBER := decimal literal, optional sign and exponent
//
// Whitespace between tokens is ignored. The coefficient is mandatory, so "x^2"
// is rejected; write "1*x^2".

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sconvex/errors.hpp"
#include "sconvex/funcmodel.hpp"

namespace sconvex {

namespace detail {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : text_(text) {}

  PowerSum parse() {
    std::vector<PowerTerm> terms;
    terms.push_back(term());
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '+') throw ParseError(pos_, "'+' or end of input");
      ++pos_;
      terms.push_back(term());
      skip_space();
    }
    return PowerSum(std::move(terms));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, std::string("'") + c + "'");
  }

  PowerTerm term() {
    const double coeff = number();
    if (!accept('*')) return {coeff, 0.0};
    expect('x');
    expect('^');
    return {coeff, number()};
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digits = [&] {
      const std::size_t from = i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      return i - from;
    };
    if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
    std::size_t mantissa = digits();
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "number");
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      i = j;
      if (digits() == 0) throw ParseError(i, "exponent digits");
    }
    // from_chars rejects a leading '+'.
    const std::size_t from = text_[start] == '+' ? start + 1 : start;
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + from, text_.data() + i, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + i) {
      throw ParseError(start, "representable number");
    }
    pos_ = i;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression into a power sum, keeping term order.
inline PowerSum parse_function_dsl(std::string_view text) {
  return detail::DslParser(text).parse();
}

/// Prints a power sum in the expression grammar; parsing the result gives back
/// the same terms.
inline std::string print_function_dsl(const PowerSum& ps) { return ps.describe(); }

}  // namespace sconvex
