#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/rational.hpp"
#include "moduli/exact/rational_function.hpp"
#include "moduli/exact/series.hpp"

namespace moduli::tr {

using exact::Param;
using exact::Rational;
using exact::RationalFunction;
using Series = exact::LocalSeries<Rational>;

// z -> (a z + b) / (c z + d) with rational coefficients.
struct Mobius {
  Rational a{1}, b{0}, c{0}, d{1};

  static Mobius identity() { return {}; }
  Rational operator()(const Rational& z) const;
  // this o inner
  Mobius after(const Mobius& inner) const;
  // Equal as maps (coefficients up to a common scalar).
  bool same_map(const Mobius& o) const;
  // psi(xi + t) and psi'(xi + t) as series in t; psi must be finite at xi.
  Series value_series(const Rational& xi, int precision) const;
  Series derivative_series(const Rational& xi, int precision) const;
  std::string str() const;
};

// Genus-zero spectral curve with a global rational deck transformation.
// All c-dependence is a pure power: x carries c^{x_c_power}, the local
// series of y(sigma(z)) - y(z) carries c^{y_c_power}, and the recursion
// kernel therefore a single power c^{-(x_c_power + y_c_power)}.
struct SpectralCurve {
  std::string name;
  std::string coordinate;
  RationalFunction x{Param(0)};         // exact, coefficients in Q[c, 1/c]
  std::optional<RationalFunction> dy;   // dy/dz when rational
  int x_c_power = 0;
  int y_c_power = 0;
  Mobius sigma;
  // Group elements acting on the curve, identity first. B is the sum over
  // the group of d(phi z1) dz2 / (phi z1 - z2)^2.
  std::vector<Mobius> group;
  int chi = 1, upsilon = 1, beta = 1;   // characters of the generator (Z2 only)
  std::vector<Rational> critical_points;
  // Poles of the n-point differentials: orbits of the critical points.
  std::vector<Rational> poles;
  // Series in t of y(sigma(xi + t)) - y(xi + t) with c^{y_c_power} removed.
  std::function<Series(const Rational& xi, int precision)> y_difference;

  int pole_index(const Rational& p) const;
};

// x = c (z + 1/z), y = 2 log z, iota(z) = -1/z, sigma(z) = 1/z, c^2 = -Q/2.
SpectralCurve build_spin_curve();
// x = w^2 / 2, y = 2 arcsinh(w / sqrt(2 eps)) / sqrt(w^2 + 2 eps), written in
// the rescaled coordinate u = w / c (so x = c^2 u^2 / 2, y = F(u)/c), sigma(u) = -u.
SpectralCurve build_kn_curve();

// Re-runs every identity the curve data must satisfy; throws CurveBuildError.
void verify_curve(const SpectralCurve& curve);

// Local data of the recursion kernel at a critical point: the series of
// y(sigma(z)) - y(z) and of dx/dz (each with its c-power removed) and their
// product, the kernel denominator.
struct KernelSeries {
  Series y_difference;
  Series dx;
  Series denominator;
};
KernelSeries kernel_series(const SpectralCurve& curve, const Rational& xi, int precision);

// Evaluation helpers for rational functions over Q[c, 1/c].
Param evaluate(const RationalFunction& f, const Rational& z);
RationalFunction compose(const RationalFunction& f, const Mobius& m);
// B(z1, z2) / (dz1 dz2) at a rational point.
Rational evaluate_B(const SpectralCurve& curve, const Rational& z1, const Rational& z2);

}  // namespace moduli::tr
