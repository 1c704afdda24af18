#pragma once

#include <concepts>
#include <string>

#include "ctforge/errors.hpp"

namespace ctforge {

template <std::integral T>
T checked_add(T a, T b) {
  T out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("exponent overflow in addition: " + std::to_string(a) +
                        " + " + std::to_string(b));
  }
  return out;
}

template <std::integral T>
T checked_sub(T a, T b) {
  T out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw OverflowError("exponent overflow in subtraction: " +
                        std::to_string(a) + " - " + std::to_string(b));
  }
  return out;
}

template <std::integral T>
T checked_mul(T a, T b) {
  T out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("exponent overflow in multiplication: " +
                        std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

}  // namespace ctforge
