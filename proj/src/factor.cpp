#include "congraph/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace congraph {

Poly Factorization::product(const FieldPtr& field) const {
  Poly acc = Poly::constant(field, unit);
  for (const auto& [prime, mult] : factors) acc = acc * pow(prime, static_cast<unsigned>(mult));
  return acc;
}

bool Factorization::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.multiplicity == 1; });
}

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  const FieldPtr& field = f.field_ptr();
  Factorization out{f.lead(), {}};
  Poly rest = make_monic(f);
  const uint32_t q = field->order();

  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (uint64_t m = 0; m < count && 2 * d <= rest.degree(); ++m) {
      std::vector<FieldElem> c(static_cast<size_t>(d) + 1);
      uint64_t x = m;
      for (int i = 0; i < d; ++i) {
        c[static_cast<size_t>(i)] = FieldElem{static_cast<uint32_t>(x % q)};
        x /= q;
      }
      c.back() = FieldElem{1};
      Poly cand(field, std::move(c));
      int mult = 0;
      for (;;) {
        DivRem qr = divrem(rest, cand);
        if (!qr.remainder.is_zero()) break;
        rest = std::move(qr.quotient);
        ++mult;
      }
      if (mult > 0) out.factors.push_back({std::move(cand), mult});
    }
  }
  if (rest.degree() > 0) {
    // rest is irreducible; it may repeat a factor only if found above, which
    // trial division would already have removed.
    out.factors.push_back({std::move(rest), 1});
  }
  std::stable_sort(out.factors.begin(), out.factors.end(), [](const PrimePower& a, const PrimePower& b) {
    if (a.prime.degree() != b.prime.degree()) return a.prime.degree() < b.prime.degree();
    return a.prime.code() < b.prime.code();
  });
  return out;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree test of the zero polynomial");
  if (f.degree() <= 0) return true;
  const Poly d = derivative(f);
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  const Factorization fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace congraph
