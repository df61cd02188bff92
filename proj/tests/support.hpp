#pragma once

// Random generators shared by the property tests. Seeds are fixed so a
// failure reproduces.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "realkn/monodromy.hpp"

namespace testing_support {

using realkn::AffineElement;
using realkn::AffineMonodromyRep;
using realkn::GF2Vector;
using realkn::Int;
using realkn::IntMatrix;
using realkn::IntVector;

inline Int uniform(std::mt19937& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

// Product of `steps` elementary row operations and sign flips.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 4) {
  IntMatrix m = IntMatrix::identity(n);
  if (n == 0) return m;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, Int(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, Int(n) - 1));
    IntMatrix e = IntMatrix::identity(n);
    if (i == j) e(i, i) = -1;
    else e(i, j) = uniform(rng, -1, 1);
    m = realkn::mat_mul(e, m);
  }
  return m;
}

inline IntVector random_vector(std::mt19937& rng, std::size_t n, Int lo, Int hi) {
  IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

inline GF2Vector random_bits(std::mt19937& rng, std::size_t n) {
  GF2Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, uniform(rng, 0, 1) == 1);
  return v;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, Int lo, Int hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

// Free presentation (no relations) with random unimodular generators.
inline AffineMonodromyRep random_rep(std::mt19937& rng, std::size_t n, std::size_t gens) {
  std::vector<std::string> names;
  std::vector<AffineElement> elems;
  for (std::size_t g = 0; g < gens; ++g) {
    names.push_back("g" + std::to_string(g));
    elems.push_back({random_unimodular(rng, n, 3), random_vector(rng, n, -2, 2), random_bits(rng, n)});
  }
  return AffineMonodromyRep(realkn::Presentation(n, std::move(names), {}), std::move(elems));
}

inline realkn::Word random_word(std::mt19937& rng, std::size_t gens, std::size_t max_len) {
  realkn::Word w;
  const auto len = static_cast<std::size_t>(uniform(rng, 0, Int(max_len)));
  for (std::size_t k = 0; k < len; ++k)
    w.push_back({static_cast<std::size_t>(uniform(rng, 0, Int(gens) - 1)), uniform(rng, 0, 1) ? 1 : -1});
  return w;
}

// Code of the realkn::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<realkn::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const realkn::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing_support
