#pragma once

#include <string>
#include <vector>

#include "macksolve/common.hpp"

namespace macksolve {

// U_B and its first three derivatives at one point.
struct ProfileJet {
  double u = 0.0, du = 0.0, d2u = 0.0, d3u = 0.0;
};

class BaseFlow {
 public:
  enum class Kind { Blasius, Tanh, Table };

  Kind kind = Kind::Table;
  std::vector<double> grid, u, du, d2u, d3u;
  double decay_rate = 0.0;
  // f''(0) of the similarity solution; zero for other kinds.
  double wall_shear = 0.0;

  std::string kind_name() const;
  double y_max() const { return grid.back(); }
  int size() const { return static_cast<int>(grid.size()); }

  // Evaluates the profile at any Y in [0, y_max]. Blasius uses the local
  // Taylor expansion of the similarity ODE, tanh is closed form, tables use
  // Hermite interpolation of the supplied derivatives.
  ProfileJet eval(double y) const;

  // Stream function f at the nodes (Blasius only).
  std::vector<double> stream;
};

// Shoots on f''(0) so that f'(y_max) = 1 for f''' + f f''/2 = 0.
BaseFlow blasius(double y_max = 20.0, int n = 2000);
BaseFlow tanh_profile(double y_max = 20.0, int n = 2000);
// Wraps a user-supplied table. Derivatives must be supplied; nothing is differentiated.
BaseFlow table_profile(std::vector<double> grid, std::vector<double> u, std::vector<double> du,
                       std::vector<double> d2u, std::vector<double> d3u);

struct Clause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<Clause> clauses;
  bool all_passed() const;
  const Clause* find(const std::string& name) const;
};

AssumptionReport check_structure_assumptions(const BaseFlow& flow);

// Largest rate r with |d^k(u-1)/dY^k| <= 10 exp(-r Y) at every node with Y >= 5, k = 0..3.
double envelope_decay_rate(const BaseFlow& flow);

// Least-squares slope of log|u - 1| over Y in [y_max/2, y_max], skipping nodes
// at the rounding floor. Returns 0 when fewer than three usable nodes remain.
double lsq_decay_rate(const BaseFlow& flow);

}  // namespace macksolve
