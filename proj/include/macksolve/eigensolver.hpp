#pragma once

#include <vector>

#include "macksolve/common.hpp"
#include "macksolve/thermo.hpp"

namespace macksolve {

inline constexpr double kShootCiFloor = 1e-13;

struct ShootOptions {
  double rtol = 1e-11;
  // Start of the inward integration; negative picks the point where
  // alpha w_0 reaches 46 (or the grid end when that lies beyond it).
  double y_start = -1.0;
  double h_out = 0.0025;  // spacing of the stored profile
};

// Decaying solution of P'' - 2 (Mbar'/Mbar) P' - alpha^2 F P = 0, shot from y_start
// to the wall. Tables are ascending in Y and scaled so that max|P| = 1 with P real
// and positive at the maximum.
struct ShootResult {
  std::vector<double> y;
  std::vector<cd> p, dp;
  cd p0, dp0;
  double y_start = 0.0;
  int steps = 0;
  // log of the factor removed from the raw solution seeded with P(y_start) = seed.
  double log_norm = 0.0;
  // Newton function dP(0) / (alpha P(0)); independent of the normalisation.
  cd ratio() const;
};

double default_shoot_start(const MeanFlow& mean, double alpha, double cr);

ShootResult shoot_pressure(const MeanFlow& mean, double alpha, cd c, const ShootOptions& opt = {},
                           cd seed = 1.0);

struct FieldTables {
  std::vector<double> y;
  std::vector<cd> p, rho, u, v, t;
};

struct Residuals {
  // sup-norm of each equation over nodes outside the guard band, divided by the
  // sup-norm of the largest term of that equation.
  double continuity = 0.0, momentum_x = 0.0, momentum_y = 0.0, energy = 0.0, state = 0.0;
  double guard = 0.0;
  double max() const;
};

struct Mode {
  double alpha = 0.0;
  cd c;
  ShootResult shot;
  double boundary_residual = 0.0;  // |dP(0)| with max|P| = 1
  int iterations = 0;
  FieldTables fields;
  Residuals residuals;
};

struct EigenOptions {
  ShootOptions shoot;
  int max_iter = 50;
  int max_halvings = 8;
  double fd_rel = 1e-7;
  double res_tol = 1e-8;
  double step_tol = 1e-12;
};

// Newton iteration in complex c on dP(0) = 0 with a forward-difference derivative
// and step halving.
Mode find_eigenvalue(const MeanFlow& mean, double alpha, cd c_guess, const EigenOptions& opt = {});

// (rho, U, V, T) from P and dP; dP'' is never differenced.
FieldTables reconstruct_fields(const MeanFlow& mean, double alpha, cd c, const std::vector<double>& y,
                               const std::vector<cd>& p, const std::vector<cd>& dp);

// Residuals of the linearised Euler system with fourth-order differences, skipping
// |Y - Y_c| <= 10 max(c_i, h). The grid must be uniform.
Residuals residual_check(const FieldTables& f, const MeanFlow& mean, double alpha, cd c);

}  // namespace macksolve
