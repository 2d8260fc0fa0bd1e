#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pemc/constants.hpp"
#include "pemc/errors.hpp"
#include "pemc/media.hpp"
#include "pemc/quadrature.hpp"

namespace pemc::scatter {

using Complex = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

enum class FrequencyAxis { real, imaginary };

/// One plane-wave component in the vacuum gap.
///
/// omega_over_c is the frequency magnitude |k| (xi/c on the imaginary axis). The
/// dispersion relation is k_par^2 + k_perp^2 = +(omega/c)^2 on the real axis and
/// -(xi/c)^2 on the imaginary axis, where k_perp = i kappa.
struct PlaneWaveBasis {
  double k_par = 0.0;
  double phi = 0.0;
  Complex k_perp{0.0, 0.0};
  double omega_over_c = 0.0;
  FrequencyAxis axis = FrequencyAxis::real;

  static PlaneWaveBasis real_frequency(double k_par, double phi, double omega_over_c) {
    return {k_par, phi, media::perp_wavevector(media::BiIsotropicConstants::vacuum(), omega_over_c, k_par), omega_over_c,
            FrequencyAxis::real};
  }

  static PlaneWaveBasis imaginary_frequency(double k_par, double phi, double xi_over_c) {
    const double kappa = std::hypot(k_par, xi_over_c);
    return {k_par, phi, Complex{0.0, kappa}, xi_over_c, FrequencyAxis::imaginary};
  }

  Vec3c e_par() const { return Vec3c(std::cos(phi), std::sin(phi), 0.0); }
  Vec3c e_z() const { return Vec3c(0.0, 0.0, 1.0); }
  Vec3c k_up() const { return k_par * e_par() + k_perp * e_z(); }
  Vec3c k_down() const { return k_par * e_par() - k_perp * e_z(); }

  /// |k_par^2 + k_perp^2 -/+ (omega/c)^2| relative to (omega/c)^2.
  double dispersion_residual() const {
    const double sign = axis == FrequencyAxis::real ? 1.0 : -1.0;
    const double w2 = omega_over_c * omega_over_c;
    return std::abs(k_par * k_par + k_perp * k_perp - sign * w2) / w2;
  }
};

struct PolarizationVectors {
  Vec3c e_s;
  Vec3c e_p_plus;
  Vec3c e_p_minus;

  // e_p^- is transverse to k_up, e_p^+ to k_down.
  const Vec3c& p_up() const { return e_p_minus; }
  const Vec3c& p_down() const { return e_p_plus; }
};

/// e_s = e_par x e_z, e_p^+- = (i/|k|)(k_par e_z +- k_perp e_par).
inline PolarizationVectors polarization_vectors(const PlaneWaveBasis& basis) {
  if (!(basis.omega_over_c > 0.0)) throw DomainError("polarization_vectors: degenerate basis, |k| = 0");
  const Vec3c e_par = basis.e_par();
  const Vec3c e_z = basis.e_z();
  const Complex scale = Complex{0.0, 1.0} / basis.omega_over_c;
  PolarizationVectors v;
  v.e_s = e_par.cross(e_z);
  v.e_p_plus = scale * (basis.k_par * e_z + basis.k_perp * e_par);
  v.e_p_minus = scale * (basis.k_par * e_z - basis.k_perp * e_par);
  return v;
}

// ---------------------------------------------------------------------------
// Reflected-wave sum

enum class Polarization { s = 0, p = 1 };

/// The four multiple-reflection families, in order of their z-phases
///   exp(i k_perp (2L + z - z')), exp(i k_perp (2L - z + z')),
///   exp(i k_perp (z + z')),      exp(i k_perp (2L - z - z')).
/// The first two carry an even number of reflections.
enum class ReflectionTerm { up_up = 0, down_down = 1, up_from_down = 2, down_from_up = 3 };

inline bool is_even(ReflectionTerm t) { return t == ReflectionTerm::up_up || t == ReflectionTerm::down_down; }

enum class Parity { even, odd, all };

/// One (term, sigma1, sigma2) contribution to the scattering Green's tensor integrand:
/// value = M_{sigma1 sigma2} exp(i k_perp(...)) e_{sigma1} (x) e_{sigma2}.
/// The field point dependence is exp(i k_left . r), the source point dependence
/// exp(-i k_right . r'). The in-plane phase exp(i k_par . (r - r')) and the
/// 1/(8 pi^2 k_perp) measure are not included in value.
struct DyadicBlock {
  Mat3c value = Mat3c::Zero();
  ReflectionTerm term = ReflectionTerm::up_up;
  Polarization sigma1 = Polarization::s;
  Polarization sigma2 = Polarization::s;
  Vec3c k_left = Vec3c::Zero();
  Vec3c k_right = Vec3c::Zero();
};

struct GreenIntegrand {
  std::vector<DyadicBlock> blocks;

  Mat3c sum(Parity parity = Parity::all) const {
    Mat3c out = Mat3c::Zero();
    for (const auto& b : blocks) {
      if (parity == Parity::all || (parity == Parity::even) == is_even(b.term)) out += b.value;
    }
    return out;
  }
  Mat3c even() const { return sum(Parity::even); }
  Mat3c odd() const { return sum(Parity::odd); }
};

/// Bracketed plane-wave integrand of G^(1)(r, r') between a plate R_minus at z = 0
/// and a plate R_plus at z = L. Both points must lie in the gap, 0 <= z, z' <= L.
inline GreenIntegrand green_scatter_integrand(const PlaneWaveBasis& basis, const Eigen::Vector3d& r,
                                              const Eigen::Vector3d& r_prime, const media::ReflectionMatrix& r_plus,
                                              const media::ReflectionMatrix& r_minus, double L) {
  if (!(L > 0.0)) throw DomainError("green_scatter_integrand: L must be positive");
  const double z = r.z();
  const double zp = r_prime.z();
  if (z < 0.0 || z > L || zp < 0.0 || zp > L) throw DomainError("green_scatter_integrand: points outside the gap");

  const Complex i{0.0, 1.0};
  const Complex kp = basis.k_perp;
  const Complex b = std::exp(2.0 * i * kp * L);
  const Eigen::Matrix2cd rp = r_plus.value.cast<Complex>();
  const Eigen::Matrix2cd rm = r_minus.value.cast<Complex>();
  const Eigen::Matrix2cd n_minus = media::round_trip_sum(r_minus, r_plus, b);
  const Eigen::Matrix2cd n_plus = media::round_trip_sum(r_plus, r_minus, b);

  const auto pol = polarization_vectors(basis);
  const std::array<Vec3c, 2> up{pol.e_s, pol.p_up()};
  const std::array<Vec3c, 2> down{pol.e_s, pol.p_down()};
  const Vec3c k_up = basis.k_up();
  const Vec3c k_down = basis.k_down();

  struct Family {
    ReflectionTerm term;
    Eigen::Matrix2cd amplitude;
    Complex phase;
    const std::array<Vec3c, 2>* left;
    const std::array<Vec3c, 2>* right;
    Vec3c k_left, k_right;
  };
  const std::array<Family, 4> families{{
      {ReflectionTerm::up_up, n_minus * rm * rp, std::exp(i * kp * (2.0 * L + z - zp)), &up, &up, k_up, k_up},
      {ReflectionTerm::down_down, n_plus * rp * rm, std::exp(i * kp * (2.0 * L - z + zp)), &down, &down, k_down,
       k_down},
      {ReflectionTerm::up_from_down, n_minus * rm, std::exp(i * kp * (z + zp)), &up, &down, k_up, k_down},
      {ReflectionTerm::down_from_up, n_plus * rp, std::exp(i * kp * (2.0 * L - z - zp)), &down, &up, k_down, k_up},
  }};

  GreenIntegrand g;
  g.blocks.reserve(16);
  for (const auto& f : families) {
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        DyadicBlock blk;
        blk.term = f.term;
        blk.sigma1 = static_cast<Polarization>(s1);
        blk.sigma2 = static_cast<Polarization>(s2);
        blk.value = f.amplitude(s1, s2) * f.phase * ((*f.left)[s1] * (*f.right)[s2].transpose());
        blk.k_left = f.k_left;
        blk.k_right = f.k_right;
        g.blocks.push_back(blk);
      }
    }
  }
  return g;
}

/// Block of G^T(r', r) seen as a function of (r, r'), built from a block of G(r', r).
inline DyadicBlock swap_arguments(const DyadicBlock& blk) {
  DyadicBlock out = blk;
  out.value = blk.value.transpose();
  out.k_left = -blk.k_right;
  out.k_right = -blk.k_left;
  return out;
}

inline Mat3c cross_matrix(const Vec3c& k) {
  Mat3c m;
  m << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return m;
}

/// curl x block x curl' acting on a plane-wave dyadic: -(k_left x) D (k_right x)^T.
inline Mat3c curl_both(const DyadicBlock& blk) {
  return -cross_matrix(blk.k_left) * blk.value * cross_matrix(blk.k_right).transpose();
}

/// A_zz - tr(A)/2, the zz entry of the stress combination A - tr(A) I / 2.
inline Complex zz_minus_half_trace(const Mat3c& a) { return a(2, 2) - 0.5 * a.trace(); }

struct StressZz {
  Complex plain{0.0, 0.0};
  Complex curl{0.0, 0.0};
};

/// zz stress integrand split into the (xi/c)^2 [G + G^T] part and the
/// curl [G(r,r') + G^T(r',r)] curl' part.
inline StressZz stress_zz_parts(const GreenIntegrand& g_r_rp, const GreenIntegrand& g_rp_r, double xi_over_c,
                                Parity parity) {
  Mat3c plain = Mat3c::Zero();
  Mat3c curl = Mat3c::Zero();
  const auto take = [parity](const DyadicBlock& b) {
    return parity == Parity::all || (parity == Parity::even) == is_even(b.term);
  };
  for (const auto& b : g_r_rp.blocks) {
    if (!take(b)) continue;
    plain += b.value;
    curl += curl_both(b);
  }
  for (const auto& b : g_rp_r.blocks) {
    if (!take(b)) continue;
    const DyadicBlock t = swap_arguments(b);
    plain += t.value;
    curl += curl_both(t);
  }
  return {xi_over_c * xi_over_c * zz_minus_half_trace(plain), zz_minus_half_trace(curl)};
}

/// stress_zz_parts at coincident points (0, 0, z) integrated over the azimuth of
/// k_par on the imaginary frequency axis. PEMC plates theta+ = delta, theta- = 0.
inline StressZz azimuthal_stress_zz(double k_par, double xi_over_c, double delta, double z, double L, Parity parity,
                                    int azimuth_points = 32) {
  const media::ReflectionMatrix r_plus = media::pemc_reflection_from_theta({delta});
  const media::ReflectionMatrix r_minus = media::pemc_reflection_from_theta({0.0});
  const Eigen::Vector3d point(0.0, 0.0, z);
  StressZz acc;
  const double weight = 2.0 * constants::pi / azimuth_points;
  for (int j = 0; j < azimuth_points; ++j) {
    const auto basis = PlaneWaveBasis::imaginary_frequency(k_par, weight * j, xi_over_c);
    const auto g = green_scatter_integrand(basis, point, point, r_plus, r_minus, L);
    const StressZz parts = stress_zz_parts(g, g, xi_over_c, parity);
    acc.plain += weight * parts.plain;
    acc.curl += weight * parts.curl;
  }
  return acc;
}

struct CurlEquality {
  double curl_part = 0.0;
  double plain_part = 0.0;
};

/// Even-reflection zz stress integrand at z = L/2 for fixed kappa = sqrt(k_par^2 + (xi/c)^2),
/// split into its curl and non-curl parts. With k_par = kappa cos(a), xi/c = kappa sin(a)
/// the polar angle a is integrated with weight cos(a) over (0, pi/2), whose total is 1.
/// zz and the trace are invariant under rotations about z, so on the axis the azimuth
/// integral is 2 pi times its phi = 0 value, where the s-p cross terms drop out exactly.
inline CurlEquality curl_term_equality_check(double kappa, double delta, double L) {
  if (!(kappa > 0.0) || !(L > 0.0)) throw DomainError("curl_term_equality_check needs kappa > 0 and L > 0");
  constexpr int order = 12;
  std::vector<double> nodes, weights;
  quadrature::gauss_legendre(order, nodes, weights);
  const double half = constants::pi / 4.0;
  CurlEquality out;
  for (int j = 0; j < order; ++j) {
    const double a = half * (nodes[j] + 1.0);
    const double w = half * weights[j] * std::cos(a);
    const StressZz parts = azimuthal_stress_zz(kappa * std::cos(a), kappa * std::sin(a), delta, L / 2.0, L, Parity::even, 1);
    out.curl_part += w * parts.curl.real();
    out.plain_part += w * parts.plain.real();
  }
  return out;
}

/// Force integrand x^3 (...) at x = kappa L recovered from the even-reflection stress:
/// force_integrand(kappa L, delta) = -(kappa L^3 / 16 pi) (plain + curl).
inline double force_integrand_from_stress(double kappa, double delta, double L) {
  const CurlEquality parts = curl_term_equality_check(kappa, delta, L);
  return -kappa * L * L * L / (16.0 * constants::pi) * (parts.plain_part + parts.curl_part);
}

// ---------------------------------------------------------------------------
// Angular dyadic integrals, int_0^{2 pi} dphi a (x) b

enum class AngularKind { ss, pp_same, pp_opposite, sp_plus, sp_minus, ps_plus, ps_minus };

inline AngularKind parse_angular_kind(std::string_view name) {
  if (name == "ss") return AngularKind::ss;
  if (name == "pp" || name == "pp_same") return AngularKind::pp_same;
  if (name == "pp_opposite") return AngularKind::pp_opposite;
  if (name == "sp_plus") return AngularKind::sp_plus;
  if (name == "sp_minus") return AngularKind::sp_minus;
  if (name == "ps_plus") return AngularKind::ps_plus;
  if (name == "ps_minus") return AngularKind::ps_minus;
  throw DomainError("unknown angular dyadic kind: " + std::string(name));
}

inline constexpr std::array<AngularKind, 7> all_angular_kinds = {
    AngularKind::ss,      AngularKind::pp_same, AngularKind::pp_opposite, AngularKind::sp_plus,
    AngularKind::sp_minus, AngularKind::ps_plus, AngularKind::ps_minus};

/// Closed forms:
///   ss           pi (xx + yy)
///   pp_same      -(pi/|k|^2) [2 k_par^2 zz + k_perp^2 (xx + yy)]   (e_p^+- (x) e_p^+-)
///   pp_opposite  -(pi/|k|^2) [2 k_par^2 zz - k_perp^2 (xx + yy)]   (e_p^+- (x) e_p^-+)
///   sp_+-        +-(i pi k_perp/|k|) (xy - yx)                       (e_s (x) e_p^+-)
///   ps_+-        transpose of sp_+-
inline Mat3c angular_dyadic_integral(AngularKind kind, double k_par, Complex k_perp, double omega_over_c) {
  if (!(omega_over_c > 0.0)) throw DomainError("angular_dyadic_integral: |k| must be positive");
  const double pi = constants::pi;
  const Complex i{0.0, 1.0};
  Mat3c m = Mat3c::Zero();
  const double w2 = omega_over_c * omega_over_c;
  switch (kind) {
    case AngularKind::ss:
      m(0, 0) = m(1, 1) = pi;
      break;
    case AngularKind::pp_same:
    case AngularKind::pp_opposite: {
      const double sign = kind == AngularKind::pp_same ? 1.0 : -1.0;
      m(2, 2) = -pi / w2 * 2.0 * k_par * k_par;
      m(0, 0) = m(1, 1) = -pi / w2 * sign * k_perp * k_perp;
      break;
    }
    case AngularKind::sp_plus:
    case AngularKind::sp_minus:
    case AngularKind::ps_plus:
    case AngularKind::ps_minus: {
      const bool plus = kind == AngularKind::sp_plus || kind == AngularKind::ps_plus;
      const Complex c = (plus ? 1.0 : -1.0) * i * pi * k_perp / omega_over_c;
      m(0, 1) = c;
      m(1, 0) = -c;
      if (kind == AngularKind::ps_plus || kind == AngularKind::ps_minus) m.transposeInPlace();
      break;
    }
  }
  return m;
}

/// Trapezoidal azimuth sum of the same outer products; exact for the
/// degree-2 trigonometric integrands once points >= 3.
inline Mat3c angular_dyadic_numeric(AngularKind kind, double k_par, Complex k_perp, double omega_over_c, int points) {
  if (points < 1) throw DomainError("angular_dyadic_numeric: points must be positive");
  Mat3c acc = Mat3c::Zero();
  const double h = 2.0 * constants::pi / points;
  for (int j = 0; j < points; ++j) {
    PlaneWaveBasis basis{k_par, h * j, k_perp, omega_over_c, FrequencyAxis::real};
    const auto v = polarization_vectors(basis);
    Vec3c a, b;
    switch (kind) {
      case AngularKind::ss: a = v.e_s; b = v.e_s; break;
      case AngularKind::pp_same: a = v.e_p_plus; b = v.e_p_plus; break;
      case AngularKind::pp_opposite: a = v.e_p_plus; b = v.e_p_minus; break;
      case AngularKind::sp_plus: a = v.e_s; b = v.e_p_plus; break;
      case AngularKind::sp_minus: a = v.e_s; b = v.e_p_minus; break;
      case AngularKind::ps_plus: a = v.e_p_plus; b = v.e_s; break;
      case AngularKind::ps_minus: a = v.e_p_minus; b = v.e_s; break;
    }
    acc += h * (a * b.transpose());
  }
  return acc;
}

}  // namespace pemc::scatter
