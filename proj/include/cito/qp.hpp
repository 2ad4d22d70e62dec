#pragma once

#include <iosfwd>

#include "cito/linearize.hpp"

namespace cito {

// Condensed convex subproblem in the control deviation dU (dx_1 = 0,
// dX = G dU). The deviation vector y = [dX; dU] is constrained to the
// state/control boxes and the joint L1 trust region ||dX||_1 + ||dU||_1
// <= r. The objective is the exact quadratic expansion of the final
// pose cost plus the linear stiffness penalty:
//   L(dU) = c0 + g^T dU + 1/2 dU^T H dU.
struct ConvexSubproblem {
  int N = 0, nx = 0, nu = 0;
  Mat G;        // (N*nx) x (N*nu), rows are dx_2 .. dx_{N+1}
  Mat H;        // (N*nu)^2, rank <= 3
  Vec g;        // N*nu
  double c0 = 0;
  Vec y_lo, y_hi;  // N*(nx+nu): dX rows then dU rows
  double r = 0;
  double omega = 0;
  Vec Xs, Us;   // flattened nominal (Xs includes x_1)

  int num_controls() const { return N * nu; }
  int num_y() const { return N * (nx + nu); }

  // y = [G dU; dU]
  Vec lift(const Vec& dU) const;
};

ConvexSubproblem build_subproblem(const Problem& p, const StateTraj& X,
                                  const ControlTraj& U,
                                  const Linearization& lin, double omega,
                                  double r);

struct QpSolution {
  Vec dU;          // N*nu
  Mat dX;          // nx x (N+1), first column zero
  double L = 0;    // predicted total cost at dU
  double kkt_primal = 0;
  double kkt_dual = 0;
  double kkt_comp = 0;
  int iterations = 0;
  bool polished = false;
};

struct QpSettings {
  double eps = 1e-9;       // ADMM primal/dual stopping tolerance
  double kkt_tol = 1e-6;   // contract: SolverError beyond this
  int max_iterations = 200000;
  double rho = 1.0;
};

QpSolution solve_subproblem(const ConvexSubproblem& sp, QpSettings s = {});

// Model cost at a given control deviation (dX implied).
double predicted_cost(const ConvexSubproblem& sp, const Vec& dU);

// Exact projection of v onto {l <= y <= u} \cap {||y||_1 <= r}.
// Requires l <= 0 <= u.
Vec project_box_l1(const Vec& v, const Vec& lo, const Vec& hi, double r);

// Plain-text dump: one "name rows cols" header per matrix followed by
// %.17g rows; vectors are single-column matrices.
void dump_subproblem(const ConvexSubproblem& sp, std::ostream& os);

}  // namespace cito
