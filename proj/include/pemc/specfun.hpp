#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "pemc/constants.hpp"
#include "pemc/errors.hpp"

namespace pemc::specfun {

using Complex = std::complex<double>;

namespace detail {

// |z| within this distance of 1 is treated as lying on the unit circle.
inline constexpr double unit_circle_slack = 1e-12;

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

/// Certified bound on |Li_n(z) - sum_{k=1}^{terms} z^k / k^n| for |z| = modulus <= 1.
///
/// On the unit circle the bound is the integral tail sum_{k>K} k^-n < 1/((n-1) K^(n-1)),
/// which for n = 4 is 1/(3K^3). Inside the disk the geometric tail is used.
/// Non-increasing in `terms`.
inline double polylog_tail_bound(int n, double modulus, long terms) {
  if (n < 1) throw DomainError("polylog order must be a positive integer");
  if (modulus > 1.0 + detail::unit_circle_slack) throw DomainError("polylog series needs |z| <= 1");
  if (modulus >= 1.0 - detail::unit_circle_slack) {
    if (n < 2) throw DomainError("polylog series diverges on |z| = 1 for n < 2");
    if (terms <= 0) return std::numeric_limits<double>::infinity();
    return 1.0 / ((n - 1) * std::pow(static_cast<double>(terms), n - 1));
  }
  if (modulus == 0.0) return 0.0;
  const double next = static_cast<double>(terms + 1);
  return std::pow(modulus, next) / (std::pow(next, n) * (1.0 - modulus));
}

/// Li_n(z) = sum_{k>=1} z^k / k^n for |z| <= 1, truncated once the certified tail
/// bound drops below `tol`. Terms are summed smallest first.
inline Complex polylog_series(int n, Complex z, double tol) {
  if (!detail::finite(z)) throw DomainError("polylog argument must be finite");
  if (!(tol > 0.0)) throw DomainError("polylog tolerance must be positive");
  const double modulus = std::abs(z);
  polylog_tail_bound(n, modulus, 0);  // domain checks
  if (modulus == 0.0) return {0.0, 0.0};

  long terms = 1;
  while (polylog_tail_bound(n, modulus, terms) > tol) {
    if (terms > (1L << 40)) throw DomainError("polylog series cannot reach the requested tolerance");
    terms *= 2;
  }
  // Bisect down to the smallest admissible cutoff.
  long lo = terms / 2;
  while (terms - lo > 1) {
    const long mid = lo + (terms - lo) / 2;
    if (polylog_tail_bound(n, modulus, mid) > tol) lo = mid;
    else terms = mid;
  }

  const bool on_circle = modulus >= 1.0 - detail::unit_circle_slack;
  const double phase = std::arg(z);
  Complex sum{0.0, 0.0};
  for (long k = terms; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const Complex power = on_circle ? std::polar(1.0, kd * phase) : std::pow(z, static_cast<int>(k));
    sum += power / std::pow(kd, n);
  }
  return sum;
}

/// Reduces an angle into [0, 2 pi).
inline double reduce_to_period(double phi) {
  if (!std::isfinite(phi)) throw DomainError("angle must be finite");
  const double two_pi = 2.0 * constants::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

/// Re Li_4(e^{i phi}) = pi^4/90 - pi^2 phi^2/12 + pi phi^3/12 - phi^4/48
///                   = pi^4/90 - [phi (2 pi - phi)]^2 / 48,
/// valid on one period only. Reduce with reduce_to_period first.
inline double re_li4_quartic(double phi) {
  constexpr double pi = constants::pi;
  if (!(phi >= 0.0 && phi <= 2.0 * pi)) {
    throw DomainError("re_li4_quartic: phi must lie in [0, 2 pi], got " + std::to_string(phi));
  }
  const double w = phi * (2.0 * pi - phi);
  return pi * pi * pi * pi / 90.0 - w * w / 48.0;
}

}  // namespace pemc::specfun
