#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <string_view>

#include "pemc/constants.hpp"
#include "pemc/errors.hpp"
#include "pemc/media.hpp"
#include "pemc/quadrature.hpp"
#include "pemc/specfun.hpp"

namespace pemc::force {

enum class UnitSystem { si, normalized };
enum class Method { analytic, quartic, quadrature };

inline std::string_view to_string(UnitSystem u) { return u == UnitSystem::si ? "si" : "normalized"; }

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::quartic: return "quartic";
    case Method::quadrature: return "quadrature";
  }
  return "unknown";
}

/// Unit label attached to force values.
inline std::string_view unit_label(UnitSystem u) { return u == UnitSystem::si ? "N/m^2" : "hbar*c/L^4"; }

/// Two PEMC plates: theta_minus at z = 0, theta_plus at z = L.
struct PlatePair {
  media::DualityAngle theta_plus;
  media::DualityAngle theta_minus;
  double separation = 1.0;  // meters in SI mode

  static PlatePair from_m(media::PemcParameter m_plus, media::PemcParameter m_minus, double separation) {
    return {media::theta_from_m(m_plus), media::theta_from_m(m_minus), separation};
  }

  double delta() const { return theta_plus.theta - theta_minus.theta; }

  void validate() const {
    if (!(separation > 0.0) || !std::isfinite(separation)) throw DomainError("plate separation must be positive");
    if (!std::isfinite(theta_plus.theta) || !std::isfinite(theta_minus.theta)) {
      throw DomainError("plate angles must be finite");
    }
  }
};

/// Force per unit area on the plate at z = L. Negative is attractive.
struct ForceResult {
  double value = 0.0;
  Method method = Method::analytic;
  double abs_error_estimate = 0.0;
  UnitSystem units = UnitSystem::normalized;
};

struct QuadratureConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_subdivisions = 200;
  double x_cutoff = 40.0;

  /// Bound on int_{x_cutoff}^inf x^3 e^{-2x} / (1 - e^{-2x}) dx, which dominates the
  /// discarded tail of the force integral for every delta.
  double tail_bound() const {
    const double x = x_cutoff;
    const double poly = x * x * x / 2.0 + 3.0 * x * x / 4.0 + 3.0 * x / 4.0 + 3.0 / 8.0;
    return std::exp(-2.0 * x) * poly / (-std::expm1(-2.0 * x));
  }

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
    if (!(x_cutoff > 0.0)) throw DomainError("x_cutoff must be positive");
    if (tail_bound() > abs_tol) throw DomainError("x_cutoff too small: discarded tail exceeds abs_tol");
  }
};

// Series tolerance for Re Li_4 on the unit circle (about 7e4 terms).
inline constexpr double li4_series_tol = 1e-15;

/// Reduces delta into [0, pi]; the force has period pi in delta and is even.
inline double reduce_delta(double delta) {
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
  double d = std::fmod(delta, constants::pi);
  if (d < 0.0) d += constants::pi;
  return d;
}

namespace detail {

inline double scale(UnitSystem units, double separation) {
  if (units == UnitSystem::normalized) return 1.0;
  const double l2 = separation * separation;
  return constants::hbar_c / (l2 * l2);
}

}  // namespace detail

/// x^3 (e^{2x} cos 2delta - 1) / (1 - 2 e^{2x} cos 2delta + e^{4x}),
/// evaluated as x^3 u (cos 2delta - u) / ((1 - u)^2 + 4u sin^2 delta) with u = e^{-2x}
/// so small x and small delta do not cancel.
inline double force_integrand(double x, double delta) {
  if (!(x >= 0.0)) throw DomainError("force_integrand needs x >= 0");
  if (x == 0.0) return 0.0;
  const double u = std::exp(-2.0 * x);
  const double one_minus_u = -std::expm1(-2.0 * x);
  const double sd = std::sin(delta);
  const double numer = u * (one_minus_u - 2.0 * sd * sd);
  const double denom = one_minus_u * one_minus_u + 4.0 * u * sd * sd;
  // Underflowed denominator: delta ~ 0 and x tiny, where the integrand is x^3 u / (1 - u).
  if (denom == 0.0) return (x / one_minus_u) * x * x * u;
  return x * x * x * numer / denom;
}

/// f = -(hbar c / pi^2 L^4) int_0^inf force_integrand(x, delta) dx, truncated at x_cutoff.
inline ForceResult force_quadrature(const PlatePair& pair, const QuadratureConfig& cfg,
                                    UnitSystem units = UnitSystem::normalized) {
  pair.validate();
  cfg.validate();
  const double delta = pair.delta();
  const quadrature::AdaptiveOptions opts{cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions};
  const double prefactor = -detail::scale(units, pair.separation) / (constants::pi * constants::pi);
  quadrature::Estimate est;
  try {
    est = quadrature::integrate([delta](double x) { return force_integrand(x, delta); }, 0.0, cfg.x_cutoff, opts);
  } catch (const AccuracyError& e) {
    throw AccuracyError(e.what(), prefactor * e.best_estimate(),
                        std::abs(prefactor) * (e.error_estimate() + cfg.tail_bound()));
  }
  return {prefactor * est.value, Method::quadrature, std::abs(prefactor) * (est.abs_error + cfg.tail_bound()), units};
}

/// f = -(3 hbar c / 8 pi^2 L^4) Re Li_4(e^{2i delta}).
inline ForceResult force_analytic(const PlatePair& pair, UnitSystem units = UnitSystem::normalized) {
  pair.validate();
  const double delta = pair.delta();
  const auto li4 = specfun::polylog_series(4, std::polar(1.0, 2.0 * delta), li4_series_tol);
  const double prefactor = -3.0 * detail::scale(units, pair.separation) / (8.0 * constants::pi * constants::pi);
  return {prefactor * li4.real(), Method::analytic, std::abs(prefactor) * li4_series_tol, units};
}

/// f = -(hbar c / 8 pi^2 L^4) [pi^4/30 - delta^2 (pi - delta)^2], delta in [0, pi].
inline ForceResult force_quartic(double delta, double separation, UnitSystem units = UnitSystem::normalized) {
  constexpr double pi = constants::pi;
  if (!(delta >= 0.0 && delta <= pi)) throw DomainError("force_quartic: delta must lie in [0, pi]");
  if (!(separation > 0.0)) throw DomainError("plate separation must be positive");
  const double w = delta * (pi - delta);
  const double bracket = pi * pi * pi * pi / 30.0 - w * w;
  const double prefactor = -detail::scale(units, separation) / (8.0 * pi * pi);
  const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * pi * pi * pi * pi / 30.0;
  return {prefactor * bracket, Method::quartic, std::abs(prefactor) * rounding, units};
}

/// Quartic path for a plate pair, reducing delta into [0, pi] first.
inline ForceResult force_quartic(const PlatePair& pair, UnitSystem units = UnitSystem::normalized) {
  pair.validate();
  return force_quartic(reduce_delta(pair.delta()), pair.separation, units);
}

/// PEC-PEC reference -hbar c pi^2 / (240 L^4).
inline double casimir_reference(double separation, UnitSystem units = UnitSystem::normalized) {
  return -constants::pi * constants::pi / 240.0 * detail::scale(units, separation);
}

/// Zero-force phase shift (pi/2)(1 - sqrt(1 - 2 sqrt(2/15))).
inline double delta_crit() {
  return constants::pi / 2.0 * (1.0 - std::sqrt(1.0 - 2.0 * std::sqrt(2.0 / 15.0)));
}

/// Bisection root of force_quartic on [lo, hi]; the endpoints must bracket a sign change.
inline double bisect_zero_force(double lo = 0.0, double hi = constants::pi / 2.0, double tol = 1e-15) {
  double f_lo = force_quartic(lo, 1.0).value;
  const double f_hi = force_quartic(hi, 1.0).value;
  if (f_lo * f_hi > 0.0) throw DomainError("bisect_zero_force: interval does not bracket a zero");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = force_quartic(mid, 1.0).value;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// int_{delta_lo}^{delta_hi} f(delta) d delta of force_analytic in normalized units.
inline quadrature::Estimate sum_rule(const QuadratureConfig& cfg, double delta_lo = 0.0,
                                     double delta_hi = constants::pi / 2.0) {
  cfg.validate();
  const quadrature::AdaptiveOptions opts{cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions};
  return quadrature::integrate(
      [](double d) { return force_analytic(PlatePair{{d}, {0.0}, 1.0}).value; }, delta_lo, delta_hi, opts);
}

}  // namespace pemc::force
