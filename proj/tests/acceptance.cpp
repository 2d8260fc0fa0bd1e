// Acceptance gate: one [PASS]/[FAIL] line per criterion.
// Usage: acceptance [N]   (runs criterion N only; exit status 1 if any run criterion fails)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pemc/pemc.hpp"

namespace {

using namespace pemc;
constexpr double pi = constants::pi;

struct Outcome {
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

Outcome casimir_limit() {
  const auto t0 = std::chrono::steady_clock::now();
  const double exact = -pi * pi / 240.0;
  const force::PlatePair pec{{0.0}, {0.0}, 1.0};
  const double analytic = force::force_analytic(pec).value;
  const double quartic = force::force_quartic(pec).value;
  const double quad = force::force_quadrature(pec, {}).value;
  // Quadrature oracle: int_0^inf x^3 / (e^{2x} - 1) dx = pi^4 / 240.
  const auto integral = quadrature::integrate([](double x) { return force::force_integrand(x, 0.0); }, 0.0, 40.0);
  const double err = std::max({rel(analytic, exact), rel(quartic, exact), rel(quad, exact),
                               rel(integral.value, pi * pi * pi * pi / 240.0)});
  const double elapsed = seconds_since(t0);
  return {err <= 1e-10 && elapsed < 1.0, err, 1e-10, "runtime " + fmt(elapsed) + " s (limit 1 s)"};
}

Outcome boyer_ratio() {
  const double f0 = force::force_analytic({{0.0}, {0.0}, 1.0}).value;
  const double fb = force::force_analytic({{pi / 2}, {0.0}, 1.0}).value;
  const double fb_m = force::force_analytic(force::PlatePair::from_m({std::numeric_limits<double>::infinity()}, {0.0}, 1.0)).value;
  const double err = std::max(std::abs(fb / f0 + 7.0 / 8.0), std::abs(fb_m / f0 + 7.0 / 8.0));
  return {err <= 1e-12, err, 1e-12, "f(pi/2)/f(0) = " + fmt(fb / f0)};
}

Outcome zero_force_angle() {
  const double closed = force::delta_crit();
  const double root = force::bisect_zero_force(0.0, pi / 2);
  const double diff = std::abs(closed - root);
  const double ratio = closed / (pi / 4);
  const bool ok = diff <= 1e-10 && std::abs(ratio - 0.96) <= 0.005;
  return {ok, diff, 1e-10, "delta_crit = " + fmt(closed) + ", ratio to pi/4 = " + fmt(ratio)};
}

Outcome sum_rule() {
  const auto est = force::sum_rule({});
  const double normalized = std::abs(est.value) / (std::abs(force::casimir_reference(1.0)) * pi / 2);
  // Symbolic: int_0^{pi/2} [pi^4/30 - d^2 (pi - d)^2] dd = pi^5/60 - pi^5/60 = 0.
  const double d = pi / 2;
  const double antiderivative =
      pi * pi * pi * pi / 30.0 * d - (pi * pi * d * d * d / 3.0 - pi * d * d * d * d / 2.0 + d * d * d * d * d / 5.0);
  const double symbolic = std::abs(antiderivative) / (pi * pi * pi * pi * pi);
  const bool ok = normalized <= 1e-10 && symbolic <= 1e-15;
  return {ok, normalized, 1e-10, "antiderivative residual " + fmt(symbolic)};
}

Outcome three_way() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const force::PlatePair pair{{pi * i / 49.0}, {0.0}, 1.0};
    const double analytic = force::force_analytic(pair).value;
    const double quartic = force::force_quartic(pair).value;
    const double quad = force::force_quadrature(pair, {}).value;
    worst = std::max({worst, rel(quartic, analytic), rel(quad, analytic), rel(quad, quartic)});
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-10 && elapsed < 10.0, worst, 1e-10, "runtime " + fmt(elapsed) + " s (limit 10 s)"};
}

Outcome duality_invariance() {
  // Exact shift invariance on angles where theta + alpha is exact in binary.
  bool bitwise = true;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double tp = 0.125 * i;
      const double tm = 0.125 * j;
      const double base = force::force_analytic({{tp}, {tm}, 1.0}).value;
      for (double a : {-0.5, 0.25, 1.0, 2.0}) {
        bitwise = bitwise && force::force_analytic({{tp + a}, {tm + a}, 1.0}).value == base;
      }
    }
  }
  const double scale = std::abs(force::casimir_reference(1.0));
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double tp = -2.0 + 6.0 * i / 40.0;
    for (double tm : {0.0, 0.3, 1.7, -2.4}) {
      const double base = force::force_analytic({{tp}, {tm}, 1.0}).value;
      for (double a : {-1.3, 0.77, 2.9}) {
        worst = std::max(worst, std::abs(force::force_analytic({{tp + a}, {tm + a}, 1.0}).value - base) / scale);
      }
      const double delta = tp - tm;
      const double f = force::force_analytic({{delta}, {0.0}, 1.0}).value;
      worst = std::max(worst, std::abs(force::force_analytic({{delta + pi}, {0.0}, 1.0}).value - f) / scale);
      worst = std::max(worst, std::abs(force::force_analytic({{-delta}, {0.0}, 1.0}).value - f) / scale);
    }
  }
  return {bitwise && worst <= 1e-12, worst, 1e-12, bitwise ? "shift invariance bitwise on dyadic grid" : "shift invariance not bitwise"};
}

Outcome parameterization() {
  double worst = 0.0;
  for (int i = 0; i <= 240; ++i) {
    const double m = std::pow(10.0, -8.0 + 16.0 * i / 240.0);
    for (double sign : {1.0, -1.0}) {
      const media::PemcParameter p{sign * m};
      const auto a = media::pemc_reflection_from_theta(media::theta_from_m(p)).value;
      const auto b = media::pemc_reflection_from_m(p).value;
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::Matrix2d pec = (Eigen::Matrix2d() << -1, 0, 0, 1).finished();
  const bool exact = media::pemc_reflection_from_m({inf}).value == pec &&
                     media::pemc_reflection_from_m({-inf}).value == pec &&
                     media::pemc_reflection_from_m({0.0}).value == -pec &&
                     media::pemc_reflection_from_theta(media::theta_from_m({inf})).value == pec &&
                     media::pemc_reflection_from_theta(media::theta_from_m({0.0})).value == -pec;
  return {exact && worst <= 1e-12, worst, 1e-12, exact ? "PEC/PMC limits exact" : "PEC/PMC limits inexact"};
}

Outcome resolvent_oracle() {
  constexpr int terms = 60;
  double worst = 0.0;
  double worst_b = 0.0;
  for (double mag : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    for (double arg : {0.0, 0.9, 2.2, pi}) {
      const std::complex<double> b = std::polar(mag, arg);
      for (int j = 0; j <= 12; ++j) {
        const double tp = pi * j / 12.0;
        const double tm = 0.2;
        const auto rp = media::pemc_reflection_from_theta({tp});
        const auto rm = media::pemc_reflection_from_theta({tm});
        const auto closed = media::resolvent_closed_form(b, tp - tm, media::Orientation::plus);
        const auto neumann = media::resolvent_neumann(rp, rm, b, terms);
        const double err = (closed.value - (Eigen::Matrix2cd::Identity() - neumann.value)).cwiseAbs().maxCoeff();
        if (err > worst) {
          worst = err;
          worst_b = mag;
        }
      }
    }
  }
  return {worst <= 1e-12, worst, 1e-12,
          "worst at |b| = " + fmt(worst_b) + "; 60-term truncation error is of order |b|^61/(1-|b|) = " +
              fmt(std::pow(0.8, 61) / 0.2)};
}

Outcome fresnel_limit() {
  double worst_scaled = 0.0;
  double worst_rate = 0.0;
  for (double m : {-2.0, -0.4, 0.3, 1.0, 3.0}) {
    const auto target = media::pemc_reflection_from_m({m}).value.cast<std::complex<double>>();
    std::vector<double> errs;
    for (double s : {1e3, 1e4, 1e5, 1e6}) {
      const media::BiIsotropicConstants mat{s * m * m, s, s * m, s * m};
      const auto r = media::fresnel_cross_coeffs(mat, 1.0, 1.0);
      const double err = (r.value - target).cwiseAbs().maxCoeff();
      worst_scaled = std::max(worst_scaled, s * err);
      errs.push_back(err);
    }
    // O(1/s): each decade in s must shrink the error by a factor close to 10.
    for (std::size_t k = 1; k < errs.size(); ++k) {
      worst_rate = std::max(worst_rate, std::abs(std::log10(errs[k - 1] / errs[k]) - 1.0));
    }
  }
  const bool ok = worst_scaled <= 10.0 && worst_rate <= 0.05;
  return {ok, worst_rate, 0.05, "|log10 decade ratio - 1|; max s*err = " + fmt(worst_scaled)};
}

Outcome angular_integrals() {
  double worst = 0.0;
  for (const auto& [kp, kz, w] : {std::tuple{3.0, std::complex<double>{4.0, 0.0}, 5.0},
                                  std::tuple{0.7, std::complex<double>{0.0, 1.1}, 0.8},
                                  std::tuple{2.0, std::complex<double>{0.5, 0.0}, 2.5}}) {
    for (auto kind : scatter::all_angular_kinds) {
      const auto closed = scatter::angular_dyadic_integral(kind, kp, kz, w);
      const auto numeric = scatter::angular_dyadic_numeric(kind, kp, kz, w, 512);
      worst = std::max(worst, (closed - numeric).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-10, worst, 1e-10, "entrywise, 512-point phi quadrature"};
}

Outcome curl_equality() {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double kl = 0.05 * std::pow(200.0, i / 20.0);
    for (int j = 0; j <= 24; ++j) {
      const double delta = pi * j / 24.0;
      const auto parts = scatter::curl_term_equality_check(kl, delta, 1.0);
      const double scale = std::max(std::abs(parts.curl_part), std::abs(parts.plain_part));
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(parts.curl_part - parts.plain_part) / scale);
    }
  }
  return {worst <= 1e-11, worst, 1e-11, "relative, kappa L in [0.05, 10], delta in [0, pi]"};
}

Outcome si_sanity() {
  const double f = force::force_analytic({{0.0}, {0.0}, 1e-6}, force::UnitSystem::si).value;
  const double err = rel(f, -1.30e-3);
  return {err <= 0.005, err, 0.005, "f = " + fmt(f) + " N/m^2"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"casimir_limit", casimir_limit},         {"boyer_ratio", boyer_ratio},
      {"zero_force_angle", zero_force_angle},   {"sum_rule", sum_rule},
      {"three_way_agreement", three_way},       {"duality_invariance", duality_invariance},
      {"parameterization", parameterization},   {"resolvent_oracle", resolvent_oracle},
      {"fresnel_pemc_limit", fresnel_limit},    {"angular_dyadic_integrals", angular_integrals},
      {"curl_term_equality", curl_equality},    {"si_sanity", si_sanity}};
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  const auto& list = criteria();
  std::size_t first = 0;
  std::size_t last = list.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(list.size())) {
      std::cerr << "criterion must be in 1.." << list.size() << '\n';
      return 2;
    }
    first = static_cast<std::size_t>(n - 1);
    last = first + 1;
  }

  bool all = true;
  for (std::size_t i = first; i < last; ++i) {
    Outcome o;
    try {
      o = list[i].run();
    } catch (const std::exception& e) {
      o = {false, std::numeric_limits<double>::quiet_NaN(), 0.0, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << std::setfill('0') << i + 1
              << std::setfill(' ') << ' ' << list[i].name << "  measured=" << std::setprecision(3)
              << std::scientific << o.measured << " tol=" << o.tolerance << std::defaultfloat << "  " << o.note
              << '\n';
  }
  return all ? 0 : 1;
}
