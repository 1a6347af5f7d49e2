#ifndef BOOLINV_RATIONAL_HPP_
#define BOOLINV_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "error.hpp"

namespace boolinv {

  using Rational = mpq_class;

  /// p/q in canonical form. GMP requires canonical operands, and the
  /// two-argument constructor does not reduce.
  template <typename N, typename D>
  Rational make_rational(N num, D den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  /// "p/q" in lowest terms; integers are written "p/1" so every value has
  /// the same shape on the wire.
  inline std::string to_string(Rational const& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
  }

  inline Rational parse_rational(std::string const& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
      throw ParseError("not a rational: \"" + text + "\"");
    }
    if (q.get_den() == 0) {
      throw ParseError("zero denominator: \"" + text + "\"");
    }
    q.canonicalize();
    return q;
  }

  inline std::vector<std::string> to_strings(std::vector<Rational> const& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (auto const& q : v) {
      out.push_back(to_string(q));
    }
    return out;
  }

}  // namespace boolinv

#endif  // BOOLINV_RATIONAL_HPP_
