#pragma once

#include <cstdint>
#include <random>

#include "wiresafe/gf.hpp"

namespace wiresafe {

/// Every random draw in the library comes from one of these, seeded by the caller.
/// mt19937_64 output is fixed by the standard, so draws are reproducible across
/// platforms; elements and bits are taken by masking, never via distributions.
using Rng = std::mt19937_64;

inline Word draw_element(Rng& rng, const FieldSpec& spec) { return rng() & spec.mask(); }
inline bool draw_bit(Rng& rng) { return (rng() & 1U) != 0; }

inline ExtVector draw_vector(Rng& rng, const FieldSpec& spec, std::size_t n) {
  ExtVector v(spec, n);
  for (std::size_t i = 0; i < n; ++i) v[i] = draw_element(rng, spec);
  return v;
}

}  // namespace wiresafe
