#pragma once

#include <random>

#include "incidence/element.hpp"
#include "incidence/operator.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// Small random scalar: integers in [-3, 3], fractions with denominators up to
/// 3, residues uniform.
template <class Rng>
Scalar random_scalar(const RingDescriptor& ring, Rng& rng, bool nonzero = false) {
  while (true) {
    Scalar s;
    switch (ring.kind()) {
      case RingKind::integers: s = Scalar(ring, std::uniform_int_distribution<long>(-3, 3)(rng)); break;
      case RingKind::rationals: {
        long num = std::uniform_int_distribution<long>(-3, 3)(rng);
        long den = std::uniform_int_distribution<long>(1, 3)(rng);
        s = Scalar(ring, mpq_class(num, den));
        break;
      }
      case RingKind::prime_field:
      case RingKind::modular: {
        auto r = std::uniform_int_distribution<unsigned long>(0, ring.modulus() - 1)(rng);
        s = Scalar(ring, mpz_class(r));
        break;
      }
    }
    if (!nonzero || !s.is_zero()) return s;
  }
}

/// Each basis coefficient is drawn with probability `density`.
template <class Rng>
IncidenceElement random_element(const PreorderPtr& p, const RingDescriptor& ring, Rng& rng, double density = 0.7) {
  IncidenceElement f(p, ring);
  std::bernoulli_distribution keep(density);
  for (std::size_t pos = 0; pos < p->basis_size(); ++pos) {
    if (keep(rng)) f.set(pos, random_scalar(ring, rng));
  }
  return f;
}

template <class Rng>
LinearOperator random_operator(const PreorderPtr& p, const RingDescriptor& ring, Rng& rng, double density = 0.3) {
  LinearOperator d(p, ring);
  std::bernoulli_distribution keep(density);
  const auto n = p->basis_size();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (keep(rng)) d.set(s, t, random_scalar(ring, rng));
    }
  }
  return d;
}

}  // namespace incidence
