#ifndef JACOBI_SPECFUN_HPP
#define JACOBI_SPECFUN_HPP

#include "jacobi/params.hpp"

namespace jacobi {

// (a)_n = a(a+1)...(a+n-1); empty product = 1.
double pochhammer(double a, unsigned n);

// log of |(a)_n| for a > 0, via lgamma; avoids overflow for large n.
double log_pochhammer(double a, unsigned n);

// Jacobi polynomial P_n^{alpha,beta}(x), three-term recurrence.
double jacobi_poly(unsigned n, const JacobiParams& params, double x);

// Squared L2 norm R_n of P_n^{alpha,beta} w.r.t. the stationary
// *probability* measure W(y) dy; R_0 = 1.
double jacobi_norm(unsigned n, const JacobiParams& params);

// Gauss hypergeometric series.  Terminating when a or b is a non-positive
// integer; otherwise requires |z| < 1.
double hyp2F1(double a, double b, double c, double z,
              const SeriesControl& ctrl = SeriesControl());

// Confluent limit 0F1(c; z), entire in z.
double hyp0F1(double c, double z, const SeriesControl& ctrl = SeriesControl());

struct F4ConvergenceRegion {
  double u;
  double v;
  bool converges;  // sqrt|u| + sqrt|v| < 1
};

F4ConvergenceRegion f4_region(double u, double v);

// Appell F4(a,b,c,d; u,v), summed along anti-diagonals m+n=k.
// Throws std::domain_error outside sqrt|u|+sqrt|v| < 1.
double appell_F4(double a, double b, double c, double d, double u, double v,
                 const SeriesControl& ctrl = SeriesControl());

// Theta(x) = sum_{l in Z} exp(-pi l^2 x), x > 0.  Modular identity
// Theta(x) = Theta(1/x)/sqrt(x) applied for x < 1.
double theta(double x);

}  // namespace jacobi

#endif  // JACOBI_SPECFUN_HPP
