#ifndef JACOBI_LEVY_HPP
#define JACOBI_LEVY_HPP

#include "jacobi/params.hpp"

namespace jacobi {

// First hitting time of level delta*t by a Brownian motion with drift mu.
struct IGParams {
  double mu;     // drift, > 0
  double delta;  // level slope, > 0
  double t;      // time index, > 0

  IGParams(double mu_, double delta_, double t_)
      : mu(mu_), delta(delta_), t(t_) {
    if (!(mu > 0.0) || !(delta > 0.0) || !(t > 0.0))
      throw std::domain_error("IGParams: all fields must be > 0");
  }
};

// Density nu_t(s) of the inverse Gaussian subordinator; 0 for s <= 0.
double ig_density(double s, const IGParams& ig);

// E exp(-u T_t) = exp(-t delta (sqrt(2u + mu^2) - mu)), u >= 0.
double ig_laplace(double u, const IGParams& ig);

// Density of tau(c) = inf{r : B_r = c}, the stable-1/2 hitting time.
double tau_density(double c, double s);

// Density of C_h (Biane-Pitman-Yor), whose Laplace transform in t^2/8
// is sech(t/2)^h.  Alternating series over tau(2p+h) densities.
double density_C(double h, double s, const SeriesControl& ctrl = SeriesControl());

// Density of T_1, Laplace transform tanh(t/2)/(t/2).  Direct series for
// moderate s, theta-transformed series for small s.
double density_T1(double s, const SeriesControl& ctrl = SeriesControl());

// Convolution (f_T1 * f_C_h)(s).  Returns 0 for s below the underflow
// floor 1e-6 where both factors are super-exponentially small.
double conv_T1_C(double h, double s, const SeriesControl& ctrl = SeriesControl());

}  // namespace jacobi

#endif  // JACOBI_LEVY_HPP
