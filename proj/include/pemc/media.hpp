#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "pemc/constants.hpp"
#include "pemc/errors.hpp"

namespace pemc::media {

using Complex = std::complex<double>;

/// Scalar bi-isotropic response: D = eps0 eps E + xi H / c, B = mu0 mu H + zeta E / c.
struct BiIsotropicConstants {
  double eps = 1.0;
  double mu = 1.0;
  double xi = 0.0;
  double zeta = 0.0;

  static constexpr BiIsotropicConstants vacuum() { return {}; }
};

/// PEMC pseudoscalar M. +-infinity is a perfect electric conductor, 0 a perfect
/// magnetic conductor.
struct PemcParameter {
  double m = std::numeric_limits<double>::infinity();
};

/// Duality angle theta with M = cot(theta). Canonical values live in [0, pi).
struct DualityAngle {
  double theta = 0.0;

  /// theta reduced modulo pi (cot and the reflection matrix are pi-periodic).
  DualityAngle canonical() const {
    double t = std::fmod(theta, constants::pi);
    if (t < 0.0) t += constants::pi;
    if (t >= constants::pi) t = 0.0;
    return {t};
  }
};

/// 2x2 reflection matrix in (s, p) polarization space, v_refl = R v_inc.
template <class Scalar>
struct BasicReflectionMatrix {
  Eigen::Matrix<Scalar, 2, 2> value = Eigen::Matrix<Scalar, 2, 2>::Zero();

  Scalar ss() const { return value(0, 0); }
  Scalar sp() const { return value(0, 1); }
  Scalar ps() const { return value(1, 0); }
  Scalar pp() const { return value(1, 1); }
};

using ReflectionMatrix = BasicReflectionMatrix<double>;
using ComplexReflectionMatrix = BasicReflectionMatrix<Complex>;

enum class Orientation { plus, minus };

/// Summed multiple reflections at one frequency point.
struct Resolvent {
  Eigen::Matrix2cd value = Eigen::Matrix2cd::Zero();
  Complex b{0.0, 0.0};
  std::optional<double> delta;
};

// ---------------------------------------------------------------------------
// Parameterizations

/// theta = arccot(m) in [0, pi): m = +-inf -> 0 (PEC), m = 0 -> pi/2 (PMC).
inline DualityAngle theta_from_m(PemcParameter m) {
  if (std::isnan(m.m)) throw DomainError("PEMC parameter is NaN");
  if (std::isinf(m.m)) return {0.0};
  if (m.m == 0.0) return {constants::pi / 2};
  const double t = std::atan(1.0 / m.m);
  return {t > 0.0 ? t : t + constants::pi};
}

inline PemcParameter m_from_theta(DualityAngle theta) {
  const double t = theta.canonical().theta;
  if (t == 0.0) return {std::numeric_limits<double>::infinity()};
  return {std::cos(t) / std::sin(t)};
}

/// R(M) = 1/(1+M^2) [[1-M^2, -2M], [-2M, M^2-1]]. Independent of the incoming
/// wavevector; exactly diag(-1, 1) at M = +-inf.
inline ReflectionMatrix pemc_reflection_from_m(PemcParameter param) {
  const double m = param.m;
  if (std::isnan(m)) throw DomainError("PEMC parameter is NaN");
  ReflectionMatrix r;
  if (std::abs(m) <= 1.0) {
    const double m2 = m * m;
    const double norm = 1.0 + m2;
    r.value << (1.0 - m2) / norm, -2.0 * m / norm, -2.0 * m / norm, (m2 - 1.0) / norm;
    return r;
  }
  // Large |M|: divide through by M^2 to avoid overflow; 1/inf = 0 gives the PEC limit.
  const double inv = 1.0 / m;
  const double inv2 = inv * inv;
  const double norm = inv2 + 1.0;
  const double off = -2.0 * inv / norm + 0.0;  // + 0.0 turns -0 into +0
  r.value << (inv2 - 1.0) / norm, off, off, (1.0 - inv2) / norm;
  return r;
}

/// R(theta) = [[-cos 2theta, -sin 2theta], [-sin 2theta, cos 2theta]], the M-matrix
/// with M = cot(theta).
inline ReflectionMatrix pemc_reflection_from_theta(DualityAngle theta) {
  const double t = theta.canonical().theta;
  // Exact at the PEC (t = 0) and PMC (t = pi/2) angles, where sin 2t would round to ~1e-16.
  const double c = t == constants::pi / 2 ? -1.0 : std::cos(2.0 * t);
  const double s = t == constants::pi / 2 ? 0.0 : std::sin(2.0 * t);
  ReflectionMatrix r;
  r.value << -c, -s, -s, c;
  return r;
}

// ---------------------------------------------------------------------------
// Finite-constant interface

/// k_perp = sqrt(n^2 (omega/c)^2 - k_par^2), n^2 = eps mu - xi zeta, on the branch
/// with Im k_perp >= 0 (decaying away from the interface).
inline Complex perp_wavevector(const BiIsotropicConstants& mat, double omega_over_c, double k_par) {
  if (!(omega_over_c >= 0.0) || !(k_par >= 0.0)) {
    throw DomainError("perp_wavevector needs omega/c >= 0 and k_par >= 0");
  }
  const double n2 = mat.eps * mat.mu - mat.xi * mat.zeta;
  Complex k = std::sqrt(Complex{n2 * omega_over_c * omega_over_c - k_par * k_par, 0.0});
  if (k.imag() < 0.0) k = -k;
  return k;
}

/// Reflection of a wave incident from vacuum (perpendicular wavenumber k1_perp)
/// on a Tellegen half-space (xi = zeta, perpendicular wavenumber k2_perp).
///
/// With eps' = eps - xi^2/mu and
///   N = (mu k1 + k2) mu (eps' k1 + k2) + xi^2 k1 k2,
/// the entries are
///   r_ss = [(mu k1 - k2) mu (eps' k1 + k2) - xi^2 k1 k2] / N
///   r_sp = r_ps = -2 mu xi k1 k2 / N
///   r_pp = [mu (mu k1 + k2)(eps' k1 - k2) + xi^2 k1 k2] / N
/// The p amplitude refers to the tangential magnetic field. Under eps = s M^2,
/// mu = s, xi = s M and s -> inf this tends to pemc_reflection_from_m(M).
inline ComplexReflectionMatrix fresnel_cross_coeffs(const BiIsotropicConstants& mat, Complex k1_perp, Complex k2_perp) {
  if (mat.xi != mat.zeta) throw DomainError("fresnel_cross_coeffs needs a Tellegen medium (xi == zeta)");
  if (mat.mu == 0.0) throw DomainError("fresnel_cross_coeffs needs mu != 0");
  const double mu = mat.mu;
  const double xi = mat.xi;
  const double eps_eff = mat.eps - xi * xi / mu;
  const Complex k1 = k1_perp;
  const Complex k2 = k2_perp;

  const Complex omega_mu = mu * k1 + k2;
  const Complex omega_eps = mu * (eps_eff * k1 + k2);
  const Complex cross = xi * xi * k1 * k2;
  const Complex denom = omega_mu * omega_eps + cross;
  if (std::abs(denom) == 0.0) throw SingularConfigurationError("fresnel_cross_coeffs: vanishing denominator");

  ComplexReflectionMatrix r;
  const Complex off = -2.0 * mu * xi * k1 * k2 / denom;
  r.value(0, 0) = ((mu * k1 - k2) * omega_eps - cross) / denom;
  r.value(0, 1) = off;
  r.value(1, 0) = off;
  r.value(1, 1) = (mu * omega_mu * (eps_eff * k1 - k2) + cross) / denom;
  return r;
}

// ---------------------------------------------------------------------------
// Multiple reflections

/// (I - b * first * second)^{-1}: the exact sum over round trips that start with a
/// reflection at `second` and end at `first`.
inline Eigen::Matrix2cd round_trip_sum(const ReflectionMatrix& first, const ReflectionMatrix& second, Complex b) {
  const Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity() - b * (first.value * second.value).cast<Complex>();
  const Complex det = a.determinant();
  if (std::abs(det) == 0.0) throw ResonanceError("round_trip_sum: singular multiple-reflection matrix");
  Eigen::Matrix2cd inv;
  inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return inv / det;
}

/// Closed-form multiple-reflection matrix for two PEMC plates with phase shift delta:
///   b / (1 - 2b cos 2delta + b^2) [[b - cos 2delta, +-sin 2delta], [-+sin 2delta, b - cos 2delta]].
/// For R(theta+) R(theta-) with delta = theta+ - theta- this equals
/// I - (I - b R+ R-)^{-1} = -sum_{n>=1} (b R+ R-)^n for the plus orientation;
/// the minus orientation is its transpose.
inline Resolvent resolvent_closed_form(Complex b, double delta, Orientation sign) {
  const double c = std::cos(2.0 * delta);
  const double s = std::sin(2.0 * delta);
  const Complex denom = 1.0 - 2.0 * b * c + b * b;
  if (std::abs(denom) == 0.0) throw ResonanceError("resolvent_closed_form: 1 - 2b cos 2delta + b^2 vanishes");
  const double sgn = sign == Orientation::plus ? 1.0 : -1.0;
  Resolvent r;
  r.b = b;
  r.delta = delta;
  r.value << b - c, sgn * s, -sgn * s, b - c;
  r.value *= b / denom;
  return r;
}

/// Partial Neumann sum sum_{n=0}^{terms} (b R+ R-)^n, the truncated (I - b R+ R-)^{-1}.
inline Resolvent resolvent_neumann(const ReflectionMatrix& r_plus, const ReflectionMatrix& r_minus, Complex b, int terms) {
  if (terms < 0) throw DomainError("resolvent_neumann: terms must be non-negative");
  const Eigen::Matrix2cd step = b * (r_plus.value * r_minus.value).cast<Complex>();
  Eigen::Matrix2cd power = Eigen::Matrix2cd::Identity();
  Resolvent r;
  r.b = b;
  r.value = power;
  for (int n = 1; n <= terms; ++n) {
    power = power * step;
    r.value += power;
  }
  return r;
}

}  // namespace pemc::media
