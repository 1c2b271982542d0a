#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kcomplete {

// Exact rational scalar used by every engine. Floating point appears only in
// the Monte Carlo lane and in rendered output.
using Rat = mpq_class;

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

// Accepts "p", "-p" or "p/q" with decimal digits; anything else (including
// decimal points and whitespace) is rejected.
inline Rat parse_rational(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("not a rational: '" + text + "'"); };
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
  if (digits == 0) fail();
  if (i < text.size()) {
    if (text[i] != '/') fail();
    ++i;
    digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
    if (digits == 0 || i != text.size()) fail();
  }
  Rat q(text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace kcomplete
