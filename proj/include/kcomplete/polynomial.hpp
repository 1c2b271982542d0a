#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kcomplete/rational.hpp"

namespace kcomplete {

// Dense univariate polynomial over the rationals, coefficients low to high,
// no trailing zeros. The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rat& constant) { if (constant != 0) c_.push_back(constant); }
  Polynomial(int constant) : Polynomial(Rat(constant)) {}
  explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial x() { return Polynomial(std::vector<Rat>{0, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const {
    if (c_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  Rat eval(const Rat& t) const {
    Rat v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rat> c(std::max(a.coeffs().size(), b.coeffs().size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return Polynomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rat> c(std::max(a.coeffs().size(), b.coeffs().size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rat> c(a.coeffs().size() + b.coeffs().size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Polynomial(std::move(c));
}

inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> rem(num.coeffs());
  std::vector<Rat> quo;
  const int dd = den.degree();
  int dr = num.degree();
  if (dr >= dd) quo.assign(dr - dd + 1, Rat(0));
  while (dr >= dd) {
    Rat factor = rem[dr] / den.leading();
    quo[dr - dd] = factor;
    for (int i = 0; i <= dd; ++i) rem[dr - dd + i] -= factor * den.coeff(i);
    rem.pop_back();
    dr = static_cast<int>(rem.size()) - 1;
    while (dr >= 0 && rem[dr] == 0) {
      rem.pop_back();
      --dr;
    }
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial();
  std::vector<Rat> c(p.degree());
  for (int i = 1; i <= p.degree(); ++i) c[i - 1] = p.coeff(i) * i;
  return Polynomial(std::move(c));
}

// Monic gcd; gcd(0, 0) = 0.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  std::vector<Rat> c(a.coeffs());
  for (auto& v : c) v /= a.leading();
  return Polynomial(std::move(c));
}

// Quotient of polynomials, kept in lowest terms with a monic denominator.
// That canonical form makes equality a coefficient comparison. Satisfies the
// exact-scalar concept, so interval functions over it work directly.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int v) : num_(v), den_(1) {}
  RationalFunction(const Rat& v) : num_(v), den_(1) {}
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  Rat eval(const Rat& t) const {
    Rat d = den_.eval(t);
    if (d == 0) throw std::domain_error("rational function evaluated at pole t = " + rat_str(t));
    return num_.eval(t) / d;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = poly_gcd(num_, den_);
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
    Rat lead = den_.leading();
    std::vector<Rat> nc(num_.coeffs()), dc(den_.coeffs());
    for (auto& v : nc) v /= lead;
    for (auto& v : dc) v /= lead;
    num_ = Polynomial(std::move(nc));
    den_ = Polynomial(std::move(dc));
  }

  Polynomial num_;
  Polynomial den_;
};

inline RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

inline RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

inline RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.num(), a.den() * b.den());
}

inline RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num().is_zero()) throw std::domain_error("rational function division by zero");
  return RationalFunction(a.num() * b.den(), a.den() * b.num());
}

inline RationalFunction derivative(const RationalFunction& f) {
  return RationalFunction(derivative(f.num()) * f.den() - f.num() * derivative(f.den()), f.den() * f.den());
}

}  // namespace kcomplete
