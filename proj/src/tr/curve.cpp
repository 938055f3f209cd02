#include "moduli/tr/curve.hpp"

#include <algorithm>
#include <sstream>

#include "moduli/errors.hpp"

namespace moduli::tr {

using exact::ZPoly;

Rational Mobius::operator()(const Rational& z) const {
  Rational den = c * z + d;
  if (den.is_zero()) throw DomainError("Mobius map evaluated at its pole");
  return (a * z + b) / den;
}

Mobius Mobius::after(const Mobius& in) const {
  return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d};
}

bool Mobius::same_map(const Mobius& o) const {
  // proportional coefficient vectors
  return a * o.b == b * o.a && a * o.c == c * o.a && a * o.d == d * o.a && b * o.c == c * o.b && b * o.d == d * o.b &&
         c * o.d == d * o.c;
}

namespace {

Series linear_series(const Rational& c0, const Rational& c1, int precision) {
  std::vector<Rational> v(static_cast<std::size_t>(std::max(precision, 2)));
  v[0] = c0;
  v[1] = c1;
  v.resize(static_cast<std::size_t>(std::max(precision, 0)));
  return Series::from_coefficients(0, std::move(v));
}

}  // namespace

Series Mobius::value_series(const Rational& xi, int precision) const {
  Series den = linear_series(c * xi + d, c, precision);
  if ((c * xi + d).is_zero()) throw DomainError("Mobius series at a pole");
  return linear_series(a * xi + b, a, precision) * den.inverse();
}

Series Mobius::derivative_series(const Rational& xi, int precision) const {
  Series den = linear_series(c * xi + d, c, precision);
  if ((c * xi + d).is_zero()) throw DomainError("Mobius series at a pole");
  return (den * den).inverse() * (a * d - b * c);
}

std::string Mobius::str() const {
  std::ostringstream os;
  os << "(" << a << "*z + " << b << ")/(" << c << "*z + " << d << ")";
  return os.str();
}

int SpectralCurve::pole_index(const Rational& p) const {
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (poles[i] == p) return static_cast<int>(i);
  return -1;
}

Param evaluate(const RationalFunction& f, const Rational& z) {
  auto eval = [&](const ZPoly& p) {
    Param acc;
    Rational power(1);
    for (auto& coef : p.coefficients()) {
      acc += coef * power;
      power *= z;
    }
    return acc;
  };
  Param den = eval(f.denominator());
  if (den.is_zero()) throw DomainError("rational function evaluated at a pole");
  return eval(f.numerator()) * den.inverse();
}

RationalFunction compose(const RationalFunction& f, const Mobius& m) {
  int k = std::max(f.numerator().degree(), f.denominator().degree());
  ZPoly lin_num(std::vector<Param>{Param(m.b), Param(m.a)});
  ZPoly lin_den(std::vector<Param>{Param(m.d), Param(m.c)});
  auto lift = [&](const ZPoly& p) {
    ZPoly acc;
    for (int i = 0; i <= p.degree(); ++i) {
      ZPoly term(p.coefficient(i));
      for (int j = 0; j < i; ++j) term = term * lin_num;
      for (int j = i; j < k; ++j) term = term * lin_den;
      acc = acc + term;
    }
    return acc;
  };
  return RationalFunction(lift(f.numerator()), lift(f.denominator()));
}

namespace {

RationalFunction mobius_derivative(const Mobius& m) {
  ZPoly lin_den(std::vector<Param>{Param(m.d), Param(m.c)});
  return RationalFunction(ZPoly(Param(m.a * m.d - m.b * m.c)), lin_den * lin_den);
}

// Rational polynomial from a ZPoly whose coefficients are all r * c^power.
std::vector<Rational> strip_c(const ZPoly& p, int power, const std::string& what) {
  std::vector<Rational> out;
  for (auto& coef : p.coefficients()) {
    if (coef.is_zero()) {
      out.emplace_back(0);
      continue;
    }
    if (!coef.is_monomial() || coef.lowest_exponent() != power)
      throw CurveBuildError(what + ": coefficient " + coef.str() + " is not a multiple of c^" + std::to_string(power));
    out.push_back(coef.coefficient(power));
  }
  return out;
}

Series poly_series(const std::vector<Rational>& p, const Rational& xi, int precision) {
  // p(xi + t) by Horner in t
  std::vector<Rational> acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    std::vector<Rational> next(acc.size() + 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * xi;
      next[i + 1] += acc[i];
    }
    next[0] += *it;
    acc = std::move(next);
  }
  acc.resize(static_cast<std::size_t>(std::max(precision, 0)));
  return Series::from_coefficients(0, std::move(acc));
}

// f(xi + t) for a rational function with coefficients r * c^power (numerator)
// and rational denominator.
Series rational_series(const RationalFunction& f, int power, const Rational& xi, int precision, const std::string& what) {
  Series num = poly_series(strip_c(f.numerator(), power, what), xi, precision);
  Series den = poly_series(strip_c(f.denominator(), 0, what), xi, precision);
  // precision is absolute; extra room covers the denominator's valuation
  int v = den.valuation();
  if (v > 0) {
    num = poly_series(strip_c(f.numerator(), power, what), xi, precision + v);
    den = poly_series(strip_c(f.denominator(), 0, what), xi, precision + v);
  }
  return (num * den.inverse()).with_precision(precision);
}

// y(sigma z) - y(z) = integral from xi of sigma^* dy - dy.
std::function<Series(const Rational&, int)> integrated_y_difference(const RationalFunction& dy, const Mobius& sigma) {
  RationalFunction pulled = compose(dy, sigma) * mobius_derivative(sigma) - dy;
  return [pulled](const Rational& xi, int precision) {
    Series d = rational_series(pulled, 0, xi, precision - 1, "sigma^* dy - dy");
    return d.integral();
  };
}

}  // namespace

Rational evaluate_B(const SpectralCurve& curve, const Rational& z1, const Rational& z2) {
  Rational total;
  for (auto& phi : curve.group) {
    Rational diff = phi(z1) - z2;
    if (diff.is_zero()) throw DomainError("B evaluated on a pole");
    Rational den = phi.c * z1 + phi.d;
    total += (phi.a * phi.d - phi.b * phi.c) / (den * den) / (diff * diff);
  }
  return total;
}

KernelSeries kernel_series(const SpectralCurve& curve, const Rational& xi, int precision) {
  if (std::find(curve.critical_points.begin(), curve.critical_points.end(), xi) == curve.critical_points.end())
    throw DomainError("kernel_series: not a critical point");
  KernelSeries k;
  k.y_difference = curve.y_difference(xi, precision);
  if (k.y_difference.is_zero() || k.y_difference.valuation() != 1)
    throw DegenerateRamification("y(sigma(z)) - y(z) must vanish simply at " + xi.str());
  k.dx = rational_series(curve.x.derivative(), curve.x_c_power, xi, precision, "dx");
  if (k.dx.is_zero() || k.dx.valuation() != 1) throw DegenerateRamification("dx must vanish simply at " + xi.str());
  k.denominator = k.y_difference * k.dx;
  return k;
}

void verify_curve(const SpectralCurve& curve) {
  auto fail = [&](const std::string& what) { throw CurveBuildError(curve.name + ": " + what); };
  if (!(compose(curve.x, curve.sigma) == curve.x)) fail("x o sigma != x");
  if (curve.group.empty() || !curve.group[0].same_map(Mobius::identity())) fail("group must start with the identity");
  RationalFunction dx = curve.x.derivative();
  for (auto& xi : curve.critical_points) {
    if (curve.pole_index(xi) < 0) fail("critical point missing from the pole list");
    if (!(curve.sigma(xi) == xi)) fail("sigma does not fix " + xi.str());
    if (!evaluate(dx, xi).is_zero()) fail("dx does not vanish at " + xi.str());
    if (evaluate(dx.derivative(), xi).is_zero()) fail("dx vanishes to higher order at " + xi.str());
    kernel_series(curve, xi, 4);
  }
  for (auto& p : curve.poles) {
    bool critical = std::find(curve.critical_points.begin(), curve.critical_points.end(), p) != curve.critical_points.end();
    if (!critical && evaluate(dx, p).is_zero()) fail("dx vanishes at an unlisted pole");
    for (auto& phi : curve.group)
      if (curve.pole_index(phi(p)) < 0) fail("pole set is not closed under the group");
  }
  // sample points avoiding +-1, 0 and the group images
  std::vector<Rational> samples{Rational(2), Rational(1, 3), Rational(-5, 2), Rational(7, 4)};
  for (auto& s : samples)
    for (auto& t : samples) {
      if (s == t) continue;
      if (evaluate_B(curve, s, t) != evaluate_B(curve, t, s)) fail("B is not symmetric");
    }
  if (curve.group.size() == 2) {
    const Mobius& iota = curve.group[1];
    if (!iota.after(iota).same_map(Mobius::identity())) fail("iota is not an involution");
    RationalFunction diota = mobius_derivative(iota);
    if (!(compose(dx, iota) * diota == dx * RationalFunction(Param(curve.chi)))) fail("dx o iota != chi dx");
    if (curve.dy && !(compose(*curve.dy, iota) * diota == *curve.dy * RationalFunction(Param(curve.upsilon))))
      fail("dy o iota != upsilon dy");
    // B(iota z1, z2) = beta B(z1, z2): the group is closed under composition
    for (auto& phi : curve.group) {
      Mobius composed = phi.after(iota);
      bool found = std::any_of(curve.group.begin(), curve.group.end(), [&](const Mobius& m) { return m.same_map(composed); });
      if (!found) fail("group not closed under iota");
    }
    for (auto& s : samples)
      for (auto& t : samples) {
        if (s == t || iota(s) == t) continue;
        Rational lhs = evaluate_B(curve, iota(s), t) * (iota.a * iota.d - iota.b * iota.c) /
                       ((iota.c * s + iota.d) * (iota.c * s + iota.d));
        if (lhs != evaluate_B(curve, s, t) * Rational(curve.beta)) fail("B o iota != beta B");
      }
  }
}

SpectralCurve build_spin_curve() {
  SpectralCurve c;
  c.name = "spin";
  c.coordinate = "z";
  Param cpar = Param::monomial(Rational(1), 1);
  c.x = RationalFunction(ZPoly(std::vector<Param>{cpar, Param(0), cpar}), ZPoly::z());
  c.dy = RationalFunction(ZPoly(Param(2)), ZPoly::z());
  c.x_c_power = 1;
  c.y_c_power = 0;
  c.sigma = Mobius{Rational(0), Rational(1), Rational(1), Rational(0)};
  c.group = {Mobius::identity(), Mobius{Rational(0), Rational(-1), Rational(1), Rational(0)}};
  c.chi = -1;
  c.upsilon = -1;
  c.beta = 1;
  c.critical_points = {Rational(1), Rational(-1)};
  c.poles = {Rational(1), Rational(-1)};
  c.y_difference = integrated_y_difference(*c.dy, c.sigma);
  verify_curve(c);
  return c;
}

SpectralCurve build_kn_curve() {
  SpectralCurve c;
  c.name = "kn";
  c.coordinate = "u";
  c.x = RationalFunction(ZPoly(std::vector<Param>{Param(0), Param(0), Param::monomial(Rational(1, 2), 2)}), ZPoly(Param(1)));
  c.x_c_power = 2;
  c.y_c_power = -1;
  c.sigma = Mobius{Rational(-1), Rational(0), Rational(0), Rational(1)};
  c.group = {Mobius::identity()};
  c.critical_points = {Rational(0)};
  c.poles = {Rational(0)};
  // F(u) = 2 arcsinh(u/2) / sqrt(u^2 + 4) solves (u^2 + 4) F' + u F = 2;
  // y = F/c is odd, so y(sigma u) - y(u) = -2 F(u) / c.
  c.y_difference = [](const Rational& xi, int precision) {
    if (!xi.is_zero()) throw DomainError("kn curve has a single critical point at 0");
    std::vector<Rational> f(static_cast<std::size_t>(std::max(precision, 2)));
    f[1] = Rational(1, 2);
    for (int m = 3; m < precision; m += 2) f[m] = -Rational(m - 1) * f[m - 2] / Rational(4 * m);
    for (auto& v : f) v = v * Rational(-2);
    f.resize(static_cast<std::size_t>(std::max(precision, 0)));
    return Series::from_coefficients(0, std::move(f));
  };
  verify_curve(c);
  return c;
}

}  // namespace moduli::tr
