#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <tuple>
#include <string>
#include <vector>

#include "pemc/force.hpp"
#include "pemc/media.hpp"
#include "pemc/scatter.hpp"

namespace pemc::verification {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Options {
  force::QuadratureConfig quadrature;
  // Relative perturbation applied to the quartic force before comparison. Test hook.
  double quartic_perturbation = 0.0;
};

namespace detail {

inline CheckResult make(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

inline double max_abs(const Eigen::Matrix2d& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace detail

inline CheckResult check_parameterization() {
  double worst = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const double m = std::pow(10.0, -6.0 + 12.0 * i / 120.0);
    for (double sign : {1.0, -1.0}) {
      const media::PemcParameter p{sign * m};
      const auto via_theta = media::pemc_reflection_from_theta(media::theta_from_m(p));
      worst = std::max(worst, detail::max_abs(via_theta.value - media::pemc_reflection_from_m(p).value));
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::Matrix2d pec = (Eigen::Matrix2d() << -1, 0, 0, 1).finished();
  const Eigen::Matrix2d pmc = -pec;
  const bool exact = media::pemc_reflection_from_m({inf}).value == pec &&
                     media::pemc_reflection_from_m({-inf}).value == pec &&
                     media::pemc_reflection_from_m({0.0}).value == pmc &&
                     media::pemc_reflection_from_theta({0.0}).value == pec;
  auto r = detail::make("parameterization_consistency", worst, 1e-12, exact ? "PEC/PMC limits exact" : "limits inexact");
  r.passed = r.passed && exact;
  return r;
}

inline CheckResult check_reflection_algebra() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = constants::pi * i / 100.0;
    const auto r = media::pemc_reflection_from_theta({theta}).value;
    worst = std::max(worst, detail::max_abs(r * r - Eigen::Matrix2d::Identity()));
    worst = std::max(worst, std::abs(r.determinant() + 1.0));
  }
  return detail::make("reflection_involution_det", worst, 1e-14);
}

/// Closed form vs I - (60-term Neumann sum), allowing the certified truncation
/// error |b|^61 / (1 - |b|).
inline CheckResult check_resolvent() {
  constexpr int terms = 60;
  double worst_excess = 0.0;
  double worst_err = 0.0;
  for (double mag : {0.0, 0.1, 0.3, 0.5, 0.7, 0.8}) {
    for (double arg : {0.0, 1.0, 2.5}) {
      const std::complex<double> b = std::polar(mag, arg);
      for (int j = 0; j <= 8; ++j) {
        const double theta_plus = constants::pi * j / 8.0;
        const double theta_minus = 0.3;
        const auto rp = media::pemc_reflection_from_theta({theta_plus});
        const auto rm = media::pemc_reflection_from_theta({theta_minus});
        const auto closed = media::resolvent_closed_form(b, theta_plus - theta_minus, media::Orientation::plus);
        const auto neumann = media::resolvent_neumann(rp, rm, b, terms);
        const double err = (closed.value - (Eigen::Matrix2cd::Identity() - neumann.value)).cwiseAbs().maxCoeff();
        const double bound = std::pow(mag, terms + 1) / (1.0 - mag);
        worst_err = std::max(worst_err, err);
        worst_excess = std::max(worst_excess, err - bound);
      }
    }
  }
  return detail::make("resolvent_oracle", std::max(worst_excess, 0.0), 1e-12,
                      "max |closed - (I - neumann_60)| = " + std::to_string(worst_err) +
                          " within geometric bound |b|^61/(1-|b|)");
}

/// s * max entrywise |fresnel(s-scaled) - M-matrix| must stay below 10.
inline CheckResult check_fresnel_limit() {
  double worst = 0.0;
  for (double m : {-3.0, -0.5, 0.25, 1.0, 2.0}) {
    const auto target = media::pemc_reflection_from_m({m}).value.cast<std::complex<double>>();
    for (double s : {1e3, 1e4, 1e5, 1e6}) {
      const media::BiIsotropicConstants mat{s * m * m, s, s * m, s * m};
      const auto r = media::fresnel_cross_coeffs(mat, 1.0, 1.0);
      worst = std::max(worst, s * (r.value - target).cwiseAbs().maxCoeff());
    }
  }
  return detail::make("fresnel_pemc_limit", worst, 10.0, "s * entrywise error");
}

inline CheckResult check_angular_integrals() {
  double worst = 0.0;
  for (const auto& [kp, kz, w] : {std::tuple{3.0, 4.0, 5.0}, std::tuple{1.0, 0.5, 2.0}, std::tuple{0.0, 2.0, 2.0}}) {
    for (auto kind : scatter::all_angular_kinds) {
      const auto closed = scatter::angular_dyadic_integral(kind, kp, kz, w);
      const auto numeric = scatter::angular_dyadic_numeric(kind, kp, kz, w, 512);
      worst = std::max(worst, (closed - numeric).cwiseAbs().maxCoeff());
    }
  }
  return detail::make("angular_dyadic_integrals", worst, 1e-10);
}

inline CheckResult check_curl_equality() {
  double worst = 0.0;
  for (double kl : {0.05, 0.5, 2.0, 10.0}) {
    for (int j = 0; j <= 6; ++j) {
      const double delta = constants::pi * j / 6.0;
      const auto parts = scatter::curl_term_equality_check(kl, delta, 1.0);
      const double scale = std::max(std::abs(parts.curl_part), std::abs(parts.plain_part));
      worst = std::max(worst, std::abs(parts.curl_part - parts.plain_part) / scale);
    }
  }
  return detail::make("curl_term_equality", worst, 1e-11, "relative");
}

inline CheckResult check_stress_reduction() {
  double worst = 0.0;
  for (double kl : {0.05, 0.5, 2.0, 10.0}) {
    for (int j = 0; j <= 6; ++j) {
      const double delta = constants::pi * j / 6.0;
      const double from_stress = scatter::force_integrand_from_stress(kl, delta, 1.0);
      worst = std::max(worst, detail::rel(from_stress, force::force_integrand(kl, delta)));
    }
  }
  return detail::make("stress_zz_reduction", worst, 1e-11, "relative");
}

inline CheckResult check_three_way(const Options& opts) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double delta = constants::pi * i / 49.0;
    const force::PlatePair pair{{delta}, {0.0}, 1.0};
    const double analytic = force::force_analytic(pair).value;
    const double quartic = force::force_quartic(pair).value * (1.0 + opts.quartic_perturbation);
    const double quad = force::force_quadrature(pair, opts.quadrature).value;
    worst = std::max({worst, detail::rel(quad, analytic), detail::rel(quartic, analytic)});
  }
  return detail::make("three_way_agreement", worst, 1e-10, "relative, 50 points in [0, pi]");
}

inline CheckResult check_sum_rule(const Options& opts) {
  const auto est = force::sum_rule(opts.quadrature);
  const double norm = std::abs(force::casimir_reference(1.0)) * constants::pi / 2.0;
  return detail::make("sum_rule", std::abs(est.value) / norm, 1e-10, "|int f| / (|f(0)| pi/2)");
}

inline CheckResult check_duality_invariance() {
  const double f0 = std::abs(force::casimir_reference(1.0));
  double worst = 0.0;
  for (double tp : {0.0, 0.4, 1.3, 2.9}) {
    for (double tm : {0.0, 0.7, 2.2}) {
      const double base = force::force_analytic({{tp}, {tm}, 1.0}).value;
      for (double a : {-1.1, 0.37, 3.0}) {
        worst = std::max(worst, std::abs(force::force_analytic({{tp + a}, {tm + a}, 1.0}).value - base) / f0);
      }
      const double d = tp - tm;
      worst = std::max(worst, std::abs(force::force_analytic({{d + constants::pi}, {0.0}, 1.0}).value - base) / f0);
      worst = std::max(worst, std::abs(force::force_analytic({{-d}, {0.0}, 1.0}).value - base) / f0);
    }
  }
  return detail::make("duality_invariance_periodicity", worst, 1e-12, "relative to |f(0)|");
}

inline CheckResult check_scaling_law() {
  double worst = 0.0;
  for (double delta : {0.0, 0.6, 1.2}) {
    const force::PlatePair ref{{delta}, {0.0}, 1e-6};
    const double base = force::force_analytic(ref, force::UnitSystem::si).value * std::pow(1e-6, 4);
    for (double l : {1e-8, 3e-7, 2e-6, 5e-5}) {
      const double v = force::force_analytic({{delta}, {0.0}, l}, force::UnitSystem::si).value * std::pow(l, 4);
      worst = std::max(worst, detail::rel(v, base));
    }
  }
  return detail::make("scaling_law", worst, 1e-12, "f L^4 relative spread");
}

inline CheckResult check_limits() {
  const double f0 = force::force_analytic({{0.0}, {0.0}, 1.0}).value;
  const double fb = force::force_analytic({{constants::pi / 2}, {0.0}, 1.0}).value;
  const double err = std::max(detail::rel(f0, -constants::pi * constants::pi / 240.0), detail::rel(fb / f0, -7.0 / 8.0));
  return detail::make("casimir_boyer_limits", err, 1e-12);
}

inline CheckResult check_zero_force_angle() {
  return detail::make("zero_force_angle", std::abs(force::delta_crit() - force::bisect_zero_force()), 1e-10);
}

inline std::vector<CheckResult> run_all(const Options& opts = {}) {
  return {check_parameterization(), check_reflection_algebra(), check_resolvent(),     check_fresnel_limit(),
          check_angular_integrals(), check_curl_equality(),      check_stress_reduction(), check_three_way(opts),
          check_sum_rule(opts),      check_duality_invariance(), check_scaling_law(),     check_limits(),
          check_zero_force_angle()};
}

}  // namespace pemc::verification
