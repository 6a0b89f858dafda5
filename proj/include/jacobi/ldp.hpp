#ifndef JACOBI_LDP_HPP
#define JACOBI_LDP_HPP

#include <functional>
#include <optional>

#include "jacobi/params.hpp"

namespace jacobi {

enum class DomainCase { i, ii, iii };

// Domain of the limiting cumulant generating function phi -> Lambda(phi, x)
// for the drift-MLE tail problem at level x, true drift b <= -1.
struct CgfDomain {
  DomainCase kase;
  double phi0;
  std::optional<double> phi1;  // present in cases ii and iii
  bool steep;                  // case i only
  double x;
  double b;
};

enum class RateBranch { quadratic, linear_tail };

struct RateEval {
  double x;
  double value;  // >= 0
  RateBranch branch;
};

// b(phi, x) = -1 - sqrt((b+1)^2 + 2 phi (x+1)); domain D_1 is where the
// radicand is nonnegative.
double b_of_phi(double phi, double x, double b);

// G(phi) = b + b(phi,x) + phi; Lambda's domain D is {G < 0} within D_1.
double cgf_constraint(double phi, double x, double b);

// Limiting n.c.g.f. Lambda(phi, x) = -(phi + b - b(phi,x))/2 on D.
double Lambda(double phi, double x, double b);

// Lemma-1 case analysis; phi1 from the explicit quadratic
// phi^2 + 2(b-x-2) phi - 4b = 0 with admissibility b + phi - 1 >= 0,
// bisection of G as fallback.
CgfDomain domain(double x, double b);

// Unique root x < -1 of (b-x)^2 = 4x(x+1).
double x0(double b);

// Rate function of the drift MLE (speed t).
RateEval rate_J(double x, double b);

// Rate function of the squared-Bessel index MLE; x1 is the branch point.
double x1(double nu);
RateEval rate_I(double x, double nu);

// Generic non-steep Gartner-Ellis evaluation: rate for P(Y_t >= y) given
// the limiting cgf on (0, phi1) and its one-sided endpoint derivatives.
// Interior case maximizes y*phi - Lambda(phi); beyond dLambda1 the rate
// is linear in y with slope phi1.  Throws if the probe grid shows Lambda
// non-convex.
double nonsteep_rate(const std::function<double(double)>& cgf, double phi1,
                     double y, double dLambda0, double dLambda1);

// Finite-t n.c.g.f. Lambda_t(phi, x) computed by quadrature against the
// from-zero transition density of the tilted process.
double lambda_t_numeric(double phi, double x, double b, double t,
                        const SeriesControl& ctrl = SeriesControl());

}  // namespace jacobi

#endif  // JACOBI_LDP_HPP
