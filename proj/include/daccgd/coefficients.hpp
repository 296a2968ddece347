#pragma once

#include <cmath>
#include <stdexcept>

namespace daccgd {

// alpha^{k+1} is the larger root of L a^2 = (A^k + a)(1 + A^k mu); templated
// so the growth checks can run in long double (A^k overflows double fast when
// mu/L is large).
template <typename Real>
struct AlphaStep {
  Real alpha;
  Real a;  // A^{k+1} = A^k + alpha^{k+1}
};

template <typename Real>
AlphaStep<Real> next_alpha_a(Real a_prev, Real l, Real mu) {
  if (!(l > Real(0))) throw std::invalid_argument("next_alpha_a: L must be positive");
  if (mu < Real(0) || a_prev < Real(0))
    throw std::invalid_argument("next_alpha_a: negative input");
  Real s = Real(1) + a_prev * mu;
  Real alpha = (s + std::sqrt(s * s + Real(4) * l * a_prev * s)) / (Real(2) * l);
  return {alpha, a_prev + alpha};
}

// Defect of the defining quadratic at a candidate root; zero for exact alpha.
template <typename Real>
Real alpha_residual(Real alpha, Real a_prev, Real l, Real mu) {
  return l * alpha * alpha - (a_prev + alpha) * (Real(1) + a_prev * mu);
}

// Running state for the optimizer: starts at k = 0 with A^0 = 0, so the first
// advance yields alpha^1 = A^1 = 1/L.
struct CoefficientState {
  double alpha = 0.0;
  double a = 0.0;
  double sum_a = 0.0;  // sum of A^1..A^k
  long k = 0;
};

inline CoefficientState next_coefficients(const CoefficientState& s, double l, double mu) {
  auto step = next_alpha_a<double>(s.a, l, mu);
  return {step.alpha, step.a, s.sum_a + step.a, s.k + 1};
}

}  // namespace daccgd
