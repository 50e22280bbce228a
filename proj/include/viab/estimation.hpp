#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "viab/types.hpp"
#include "viab/viable_control.hpp"

namespace viab {

// An annual series of observed biomasses and catches.  weight_y/weight_z may
// be empty, in which case residuals are weighted by 1/observation^2 (relative
// errors).  All populated columns have equal length >= 3.
struct ObservationSeries {
  std::vector<double> years;
  std::vector<double> y_obs, z_obs;
  std::vector<double> catch_y, catch_z;
  std::vector<double> weight_y, weight_z;

  std::size_t size() const { return years.size(); }
  void validate() const;  // throws DataError
};

// Reads "year,y_obs,z_obs,catch_y,catch_z[,weight_y,weight_z]" CSV.
ObservationSeries load_observations_csv(std::istream& in);
ObservationSeries load_observations_csv_file(const std::string& path);

// Efforts implied by the records: v_t = catch_y[t]/y_obs[t], likewise w_t.
std::vector<Control> efforts_from_observations(const ObservationSeries& obs);

// One-step-ahead weighted sum of squared residuals of the Lotka-Volterra
// model against the series, efforts taken from the observations.
double weighted_ssr(const LotkaVolterraParams& p, const ObservationSeries& obs);

// Central-difference gradient of weighted_ssr in the parameter order
// (R, L, alpha, beta, kappa); K adjusts so kappa moves alone.  Component i is
// (SSR(p + h*s_i e_i) - SSR(p - h*s_i e_i)) / (2 h s_i) with s_i =
// max(|p_i|, 1e-12).  Steps that would leave the valid parameter region are
// halved until valid; step[i] reports the h*s_i actually used.
struct CentralGradient {
  std::array<double, 5> value{};
  std::array<double, 5> step{};
};
CentralGradient central_gradient(const ObservationSeries& obs,
                                 const LotkaVolterraParams& p,
                                 double h = 1e-5);

struct FitOptions {
  double tol = 1e-8;     // on the inf-norm of the internal gradient
  int max_iter = 500;    // accepted line-search steps
  double fd_step = 1e-5; // relative central-difference step
};

struct FitResult {
  LotkaVolterraParams params;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;          // final inf-norm, internal coordinates
  std::vector<double> objective_trace; // objective after each accepted step
};

// Minimises weighted_ssr by Polak-Ribiere nonlinear conjugate gradient over
// the unconstrained coordinates (log(R-1), logit L, log alpha, log beta,
// log kappa), so every iterate is a valid parameter set.  Restarts to steepest
// descent every 5 iterations or on a non-descent direction; Armijo
// backtracking line search (factor 0.5, slope fraction 1e-4); gradients by
// central differences.  converged implies gradient_norm <= tol.
FitResult fit_conjugate_gradient(const ObservationSeries& obs,
                                 const LotkaVolterraParams& init,
                                 const FitOptions& opts = {});

}  // namespace viab
