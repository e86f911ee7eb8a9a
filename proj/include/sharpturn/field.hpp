#pragma once

#include "sharpturn/qsqrt2.hpp"
#include "sharpturn/rational.hpp"

#include <concepts>
#include <string>
#include <string_view>

namespace sharpturn {

/// Coefficient fields supported by the polynomial and certification layers.
template <class F>
concept ExactField = std::same_as<F, Rational> || std::same_as<F, QSqrt2>;

template <ExactField F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr const char* name = "Rational";
  static int sign(const Rational& v) { return sgn(v); }
  static Rational parse(std::string_view s) { return parse_rational(s); }
  static std::string str(const Rational& v) { return to_string(v); }
  static double approx(const Rational& v) { return to_double(v); }
};

template <>
struct FieldTraits<QSqrt2> {
  static constexpr const char* name = "QSqrt2";
  static int sign(const QSqrt2& v) { return v.sign(); }
  static QSqrt2 parse(std::string_view s) { return QSqrt2::parse(s); }
  static std::string str(const QSqrt2& v) { return v.str(); }
  static double approx(const QSqrt2& v) { return v.to_double(); }
};

/// Lift a coefficient into a (possibly larger) evaluation domain.
template <class To, class From>
To embed(const From& v) {
  if constexpr (std::same_as<To, From>) {
    return v;
  } else {
    return To(v);
  }
}

}  // namespace sharpturn
