#pragma once

// Test-only floating-point oracle. It evaluates q-numbers straight from
// their defining formula, with no dependency on the exact engine, so the
// exact results can be sampled against it at random points.

#include <complex>
#include <random>

namespace oracle {

using cplx = std::complex<double>;

inline cplx qpow(cplx q, double e) { return std::exp(e * std::log(q)); }

inline cplx bracket(cplx q, double x) { return (qpow(q, x) - qpow(q, -x)) / (q - 1.0 / q); }

inline cplx half_ratio(cplx q, double x) { return 1.0 / (qpow(q, x) + qpow(q, -x)); }

/// a_{l,m}: the m-raising coefficient of I32 in the square-root-free basis.
inline cplx a_coeff(cplx q, double l, double m) {
  return half_ratio(q, m) * half_ratio(q, m + 1) * bracket(q, l + m + 1) * bracket(q, l - m);
}

/// b_{l,m}: the l-raising coefficient of I43.
inline cplx b_coeff(cplx q, double p, double r, double l, double m) {
  cplx num = bracket(q, p + l + 2) * bracket(q, p - l) * bracket(q, l + r + 1) * bracket(q, l - r + 1) *
             bracket(q, l + m + 1);
  cplx den = bracket(q, l + 1) * bracket(q, l + 1) * bracket(q, 2 * l + 1) * bracket(q, 2 * l + 3);
  return num / den;
}

inline cplx c_coeff(cplx q, double p, double r, double l, double m) {
  return bracket(q, p + 1) * bracket(q, r) * bracket(q, m) / (bracket(q, l + 1) * bracket(q, l));
}

inline bool close(cplx a, cplx b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

/// Deterministic sample points for q and parameter values.
struct Sampler {
  std::mt19937_64 rng{20240611};
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  cplx q() { return {uniform(1.05, 1.6), uniform(-0.2, 0.2)}; }
};

}  // namespace oracle
