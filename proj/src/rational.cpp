#include "wmdim/rational.hpp"

#include <cctype>

namespace wmdim {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto bad = [&] {
    return std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  };
  std::string t = s;
  bool negative = false;
  if (t[0] == '+' || t[0] == '-') {
    negative = t[0] == '-';
    t.erase(0, 1);
  }
  if (t.empty()) throw bad();

  auto digits = [&](const std::string& d) {
    if (d.empty()) throw bad();
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    return Integer(d);
  };

  Rational value;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    Integer num = digits(t.substr(0, slash));
    Integer den = digits(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    value = Rational(num, den);
  } else if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string whole = t.substr(0, dot), frac = t.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    Integer num = whole.empty() ? Integer(0) : digits(whole);
    Integer den(1);
    if (!frac.empty()) {
      for (char c : frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
        num = num * 10 + (c - '0');
        den *= 10;
      }
    }
    value = Rational(num, den);
  } else {
    value = Rational(digits(t));
  }
  return negative ? -value : value;
}

}  // namespace wmdim
