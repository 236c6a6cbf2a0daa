#pragma once

#include <vector>

#include "congraph/poly.hpp"

namespace congraph {

struct PrimePower {
  Poly prime;  // monic irreducible
  int multiplicity = 0;
};

/// f = unit * prod prime^multiplicity, primes sorted by (degree, code).
struct Factorization {
  FieldElem unit;
  std::vector<PrimePower> factors;

  Poly product(const FieldPtr& field) const;
  bool is_squarefree() const;
};

/// Deterministic factorization by trial division over monic polynomials of
/// increasing degree. Throws std::invalid_argument for the zero polynomial.
Factorization factor(const Poly& f);

/// True iff f has no repeated irreducible factor. Constants count as
/// squarefree; a nonconstant f with f' = 0 is a p-th power and is not.
bool is_squarefree(const Poly& f);

bool is_irreducible(const Poly& f);

}  // namespace congraph
