#include "jacobi/ldp.hpp"

#include <cmath>
#include <stdexcept>

#include "jacobi/quadrature.hpp"
#include "jacobi/semigroup.hpp"

namespace jacobi {

namespace {

double radicand(double phi, double x, double b) {
  return (b + 1.0) * (b + 1.0) + 2.0 * phi * (x + 1.0);
}

void check_b(double b) {
  if (!(b <= -1.0)) throw std::domain_error("ldp: requires b <= -1");
}

bool in_domain(double phi, double x, double b) {
  return radicand(phi, x, b) >= 0.0 && cgf_constraint(phi, x, b) < 0.0;
}

}  // namespace

double b_of_phi(double phi, double x, double b) {
  double r = radicand(phi, x, b);
  if (r < 0.0)
    throw std::domain_error("b_of_phi: outside D_1 (negative radicand)");
  return -1.0 - std::sqrt(r);
}

double cgf_constraint(double phi, double x, double b) {
  return b + b_of_phi(phi, x, b) + phi;
}

double Lambda(double phi, double x, double b) {
  if (cgf_constraint(phi, x, b) >= 0.0)
    throw std::domain_error("Lambda: phi outside D (G >= 0)");
  return -(phi + b - b_of_phi(phi, x, b)) / 2.0;
}

CgfDomain domain(double x, double b) {
  check_b(b);
  if (x == -1.0) throw std::domain_error("domain: x = -1 excluded");
  const double threshold = (b * b + 3.0) / (2.0 * (b - 1.0));
  if (x == threshold)
    throw std::domain_error("domain: x at the case-i/ii threshold");

  CgfDomain dom;
  dom.x = x;
  dom.b = b;
  dom.phi0 = -(b + 1.0) * (b + 1.0) / (2.0 * (x + 1.0));
  if (x < threshold) {
    dom.kase = DomainCase::i;
    dom.steep = true;
    dom.phi1 = std::nullopt;
    return dom;
  }
  dom.kase = x < -1.0 ? DomainCase::ii : DomainCase::iii;
  dom.steep = false;

  // explicit quadratic for G(phi)=0: phi^2 + 2(b-x-2) phi - 4b = 0
  double half_b = b - x - 2.0;
  double disc = half_b * half_b + 4.0 * b;
  std::optional<double> phi1;
  if (disc >= 0.0) {
    double r1 = -half_b + std::sqrt(disc);
    double r2 = -half_b - std::sqrt(disc);
    bool ok1 = b + r1 - 1.0 >= 0.0 && radicand(r1, x, b) >= 0.0;
    bool ok2 = b + r2 - 1.0 >= 0.0 && radicand(r2, x, b) >= 0.0;
    if (ok1 != ok2) phi1 = ok1 ? r1 : r2;
  }
  if (!phi1) {
    // ambiguous filter: bracketed bisection of G on D_1
    double lo = x > -1.0 ? dom.phi0 : 0.0;
    double hi = lo + 1.0;
    while (cgf_constraint(hi, x, b) < 0.0) hi += hi - lo + 1.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (cgf_constraint(mid, x, b) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    phi1 = 0.5 * (lo + hi);
  }
  dom.phi1 = phi1;
  return dom;
}

double x0(double b) {
  check_b(b);
  // 3x^2 + (4+2b)x - b^2 = 0, root < -1
  double p = 4.0 + 2.0 * b;
  double disc = p * p + 12.0 * b * b;
  return (-p - std::sqrt(disc)) / 6.0;
}

RateEval rate_J(double x, double b) {
  check_b(b);
  if (x <= x0(b)) {
    return {x, -0.25 * (x - b) * (x - b) / (x + 1.0), RateBranch::quadratic};
  }
  return {x, x + 2.0 + std::sqrt((b - x) * (b - x) + 4.0 * (x + 1.0)),
          RateBranch::linear_tail};
}

double x1(double nu) {
  return (-(nu + 2.0) + 2.0 * std::sqrt(nu * nu + nu + 1.0)) / 3.0;
}

RateEval rate_I(double x, double nu) {
  if (x >= x1(nu)) {
    if (x == 0.0)
      throw std::domain_error("rate_I: singular at x = 0 on quadratic branch");
    return {x, (x - nu) * (x - nu) / (4.0 * x), RateBranch::quadratic};
  }
  return {x, 1.0 - x + std::sqrt((nu - x) * (nu - x) - 4.0 * x),
          RateBranch::linear_tail};
}

double nonsteep_rate(const std::function<double(double)>& cgf, double phi1,
                     double y, double dLambda0, double dLambda1) {
  if (!(phi1 > 0.0)) throw std::domain_error("nonsteep_rate: phi1 > 0");
  if (!(y > dLambda0))
    throw std::domain_error("nonsteep_rate: y <= Lambda'(0), not a tail");

  // convexity probe
  const int n_probe = 41;
  double h = phi1 / (n_probe + 1);
  double prev2 = cgf(h), prev1 = cgf(2.0 * h);
  for (int i = 3; i <= n_probe; ++i) {
    double cur = cgf(i * h);
    if (cur - 2.0 * prev1 + prev2 < -1e-8 * (1.0 + std::abs(cur)))
      throw std::runtime_error("nonsteep_rate: cgf probe not convex");
    prev2 = prev1;
    prev1 = cur;
  }

  if (y >= dLambda1) return y * phi1 - cgf(phi1);

  // golden-section maximization of the concave y*phi - Lambda(phi)
  auto obj = [&](double phi) { return y * phi - cgf(phi); };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = phi1;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = obj(c), fd = obj(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + phi1); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = obj(d);
    }
  }
  return obj(0.5 * (a + b));
}

double lambda_t_numeric(double phi, double x, double b, double t,
                        const SeriesControl& ctrl) {
  check_b(b);
  if (!(t > 0.0)) throw std::domain_error("lambda_t_numeric: t > 0");
  if (!in_domain(phi, x, b))
    throw std::domain_error("lambda_t_numeric: phi outside D");
  double bp = b_of_phi(phi, x, b);
  double e = phi + b - bp;
  double alpha_tilted = -bp - 1.0;  // tilted drift b(phi,x) <= -1
  auto integrand = [&](double y) {
    return std::pow(1.0 - y * y, -e / 2.0) *
           density_from_zero(t, y, alpha_tilted, ctrl);
  };
  double expectation = integrate_tanh_sinh(integrand, -1.0, 1.0, 1e-11);
  return -e / 2.0 + std::log(expectation) / t;
}

}  // namespace jacobi
