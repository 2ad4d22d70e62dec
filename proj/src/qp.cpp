#include "cito/qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <cstdlib>
#include <fstream>
#include <vector>

namespace cito {

Vec ConvexSubproblem::lift(const Vec& dU) const {
  Vec y(num_y());
  y.head(N * nx) = G * dU;
  y.tail(N * nu) = dU;
  return y;
}

ConvexSubproblem build_subproblem(const Problem& p, const StateTraj& X,
                                  const ControlTraj& U,
                                  const Linearization& lin, double omega,
                                  double r) {
  const int N = static_cast<int>(U.size());
  if (static_cast<int>(X.size()) != N + 1 ||
      static_cast<int>(lin.A.size()) != N)
    throw ValidationError("subproblem dimension mismatch");
  if (!(r > 0)) throw ValidationError("trust radius must be positive");
  if (omega < 0) throw ValidationError("omega must be non-negative");

  ConvexSubproblem sp;
  sp.N = N;
  sp.nx = p.nx();
  sp.nu = p.nu();
  sp.r = r;
  sp.omega = omega;

  const int M = N * sp.nu;
  sp.G = Mat::Zero(N * sp.nx, M);
  for (int i = 0; i < N; ++i) {
    // dx_{i+2..} rows build on the previous block row.
    if (i > 0)
      sp.G.middleRows(i * sp.nx, sp.nx).leftCols(i * sp.nu) =
          lin.A[static_cast<size_t>(i)] *
          sp.G.middleRows((i - 1) * sp.nx, sp.nx).leftCols(i * sp.nu);
    sp.G.block(i * sp.nx, i * sp.nu, sp.nx, sp.nu) =
        lin.B[static_cast<size_t>(i)];
  }

  // Final-cost model: pose rows of dx_{N+1} through the affine pose map.
  const PoseMap pm = p.pose_map();
  Mat Px = Mat::Zero(3, sp.nx);
  Px.leftCols(p.model.ndof()) = pm.P;
  const Mat E = Px * sp.G.bottomRows(sp.nx);
  const Pose2 pose = p.target_pose(X.back());
  Vec3 e0(pose.p.x() - p.goal.pos.x(), pose.p.y() - p.goal.pos.y(),
          wrap_angle(pose.th - p.goal.th));
  const Vec3 w(p.goal.w1, p.goal.w1, p.goal.w2);

  sp.H = 2.0 * E.transpose() * w.asDiagonal() * E;
  sp.g = 2.0 * E.transpose() * (w.asDiagonal() * e0);
  sp.c0 = e0.dot(w.asDiagonal() * e0);

  // Stiffness penalty is linear since k >= 0.
  double k_nominal = 0;
  for (const Control& u : U) k_nominal += u.k.sum();
  sp.c0 += omega * k_nominal;
  for (int i = 0; i < N; ++i)
    sp.g.segment(i * sp.nu + p.model.n_actuated(), p.n_pairs())
        .array() += omega;

  sp.y_lo = Vec(sp.num_y());
  sp.y_hi = Vec(sp.num_y());
  const Vec xlo = p.state_lo(), xhi = p.state_hi();
  const Vec ulo = p.control_lo(), uhi = p.control_hi();
  const double tol = 1e-9;
  sp.Xs = Vec((N + 1) * sp.nx);
  sp.Us = Vec(M);
  for (int i = 0; i <= N; ++i)
    sp.Xs.segment(i * sp.nx, sp.nx) = p.state_vec(X[static_cast<size_t>(i)]);
  for (int i = 0; i < N; ++i) {
    const Vec xi = p.state_vec(X[static_cast<size_t>(i + 1)]);
    const Vec ui = p.flat(U[static_cast<size_t>(i)]);
    sp.Us.segment(i * sp.nu, sp.nu) = ui;
    for (int j = 0; j < sp.nx; ++j) {
      if (xi[j] < xlo[j] - tol || xi[j] > xhi[j] + tol)
        throw ValidationError("nominal state outside bounds");
      sp.y_lo[i * sp.nx + j] = std::min(xlo[j] - xi[j], 0.0);
      sp.y_hi[i * sp.nx + j] = std::max(xhi[j] - xi[j], 0.0);
    }
    for (int j = 0; j < sp.nu; ++j) {
      if (ui[j] < ulo[j] - tol || ui[j] > uhi[j] + tol)
        throw ValidationError("nominal control outside bounds");
      const int row = N * sp.nx + i * sp.nu + j;
      sp.y_lo[row] = std::min(ulo[j] - ui[j], 0.0);
      sp.y_hi[row] = std::max(uhi[j] - ui[j], 0.0);
    }
  }
  return sp;
}

double predicted_cost(const ConvexSubproblem& sp, const Vec& dU) {
  return sp.c0 + sp.g.dot(dU) + 0.5 * dU.dot(sp.H * dU);
}

Vec project_box_l1(const Vec& v, const Vec& lo, const Vec& hi, double r) {
  const Eigen::Index n = v.size();
  Vec y(n);
  double sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = std::clamp(v[i], lo[i], hi[i]);
    sum += std::abs(y[i]);
  }
  if (sum <= r) return y;

  // Shrink by lambda: |y_i(lambda)| = min(max(|v_i| - lambda, 0), cap_i).
  // The total is piecewise linear and decreasing; walk its breakpoints.
  struct Event {
    double lambda;
    double dslope;
  };
  std::vector<Event> events;
  events.reserve(static_cast<size_t>(2 * n));
  double g0 = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(v[i]);
    const double cap = v[i] >= 0 ? hi[i] : -lo[i];
    if (cap <= 0 || a <= 0) continue;
    g0 += std::min(a, cap);
    events.push_back({std::max(a - cap, 0.0), -1});
    events.push_back({a, +1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.lambda < b.lambda; });

  double cur_l = 0, cur_g = g0, slope = 0;
  size_t idx = 0;
  while (idx < events.size() && events[idx].lambda <= 0)
    slope += events[idx++].dslope;
  double lambda = 0;
  while (true) {
    const double next_l =
        idx < events.size() ? events[idx].lambda : cur_l + 1;
    if (slope < 0) {
      const double hit = cur_l + (r - cur_g) / slope;
      if (hit <= next_l || idx >= events.size()) {
        lambda = hit;
        break;
      }
    }
    if (idx >= events.size()) {
      lambda = cur_l;  // cannot happen for r < g0; guard
      break;
    }
    cur_g += slope * (next_l - cur_l);
    cur_l = next_l;
    while (idx < events.size() && events[idx].lambda <= cur_l)
      slope += events[idx++].dslope;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::max(std::abs(v[i]) - lambda, 0.0);
    y[i] = std::clamp(v[i] >= 0 ? mag : -mag, lo[i], hi[i]);
  }
  return y;
}

namespace {

struct KktResiduals {
  double primal, dual, comp;
};

// Stationarity, feasibility and cone residuals for a candidate
// (dU, nu); nu is the multiplier of the lifting constraint y = K dU.
KktResiduals kkt_residuals(const ConvexSubproblem& sp, const Vec& dU,
                           const Vec& nu) {
  const Vec y = sp.lift(dU);
  double primal = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    primal = std::max(primal, sp.y_lo[i] - y[i]);
    primal = std::max(primal, y[i] - sp.y_hi[i]);
  }
  primal = std::max(primal, y.lpNorm<1>() - sp.r);
  const Vec kt_nu = sp.G.transpose() * nu.head(sp.N * sp.nx) +
                    nu.tail(sp.N * sp.nu);
  const double dual = (sp.H * dU + sp.g + kt_nu).lpNorm<Eigen::Infinity>();
  const Vec proj = project_box_l1(y + nu, sp.y_lo, sp.y_hi, sp.r);
  const double comp = (y - proj).lpNorm<Eigen::Infinity>();
  return {std::max(primal, 0.0), dual, comp};
}

// Equality-constrained polish on the active set detected from y.
bool try_polish(const ConvexSubproblem& sp, const Vec& y, double tol,
                QpSolution& out) {
  const int D = sp.num_y();
  const int M = sp.num_controls();
  Mat K(D, M);
  K.topRows(sp.N * sp.nx) = sp.G;
  K.bottomRows(M) = Mat::Identity(M, M);

  std::vector<int> act_lo, act_hi, act_zero;
  const double atol = tol * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  for (int i = 0; i < D; ++i) {
    if (std::isfinite(sp.y_lo[i]) && y[i] <= sp.y_lo[i] + atol &&
        sp.y_lo[i] != 0)
      act_lo.push_back(i);
    else if (std::isfinite(sp.y_hi[i]) && y[i] >= sp.y_hi[i] - atol &&
             sp.y_hi[i] != 0)
      act_hi.push_back(i);
    else if (std::abs(y[i]) <= atol)
      act_zero.push_back(i);
  }
  const bool l1_active =
      std::abs(y.lpNorm<1>() - sp.r) <= atol * std::max(1.0, sp.r);

  const int ne = static_cast<int>(act_lo.size() + act_hi.size() +
                                  act_zero.size()) +
                 (l1_active ? 1 : 0);
  Mat C = Mat::Zero(ne, D);  // selection in y-space
  Vec b = Vec::Zero(ne);
  int row = 0;
  for (int i : act_lo) {
    C(row, i) = 1;
    b[row++] = sp.y_lo[i];
  }
  for (int i : act_hi) {
    C(row, i) = 1;
    b[row++] = sp.y_hi[i];
  }
  for (int i : act_zero) {
    C(row, i) = 1;
    b[row++] = 0;
  }
  if (l1_active) {
    for (int i = 0; i < D; ++i)
      C(row, i) = std::abs(y[i]) > atol ? (y[i] > 0 ? 1.0 : -1.0) : 0.0;
    b[row++] = sp.r;
  }

  const Mat E = C * K;  // ne x M
  Mat kkt = Mat::Zero(M + ne, M + ne);
  kkt.topLeftCorner(M, M) = sp.H;
  kkt.topRightCorner(M, ne) = E.transpose();
  kkt.bottomLeftCorner(ne, M) = E;
  Vec rhs(M + ne);
  rhs.head(M) = -sp.g;
  rhs.tail(ne) = b;
  const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  const Vec dU = sol.head(M);
  const Vec nu_p = C.transpose() * sol.tail(ne);

  const KktResiduals res = kkt_residuals(sp, dU, nu_p);
  if (res.primal <= tol && res.dual <= tol && res.comp <= tol) {
    out.dU = dU;
    out.kkt_primal = res.primal;
    out.kkt_dual = res.dual;
    out.kkt_comp = res.comp;
    out.polished = true;
    return true;
  }
  return false;
}

}  // namespace

QpSolution solve_subproblem(const ConvexSubproblem& sp, QpSettings settings) {
  const int M = sp.num_controls();
  const int D = sp.num_y();
  QpSolution out;
  if (M == 0) {
    out.dU = Vec::Zero(0);
    out.dX = Mat::Zero(sp.nx, 1);
    out.L = sp.c0;
    return out;
  }

  const Mat KtK = sp.G.transpose() * sp.G + Mat::Identity(M, M);
  // Proximal term scaled to the problem so the z-step stays well posed
  // even when the linearized dynamics carry enormous entries.
  const double sigma =
      1e-12 * std::max({1.0, sp.H.lpNorm<Eigen::Infinity>(),
                        KtK.lpNorm<Eigen::Infinity>()});
  double rho = settings.rho;
  Eigen::LDLT<Mat> llt(sp.H + sigma * Mat::Identity(M, M) + rho * KtK);
  if (llt.info() != Eigen::Success || !llt.isPositive())
    throw SolverError("subproblem factorization failed");

  Vec y = Vec::Zero(D), w = Vec::Zero(D), z = Vec::Zero(M);
  double rp = kInf, rd = kInf;
  bool done = false;
  int it = 0;
  const int poll = 250;
  for (; it < settings.max_iterations && !done; ++it) {
    const Vec rhs = -sp.g + sigma * z +
                    rho * (sp.G.transpose() * (y - w).head(sp.N * sp.nx) +
                           (y - w).tail(M));
    z = llt.solve(rhs);
    const Vec kz = sp.lift(z);
    const Vec y_prev = y;
    y = project_box_l1(kz + w, sp.y_lo, sp.y_hi, sp.r);
    w += kz - y;

    rp = (kz - y).lpNorm<Eigen::Infinity>();
    const Vec dy = y - y_prev;
    rd = rho * (sp.G.transpose() * dy.head(sp.N * sp.nx) + dy.tail(M))
             .lpNorm<Eigen::Infinity>();
    const bool settled = rp <= settings.eps && rd <= settings.eps;

    // The active set stabilizes long before the iterates do; a polished
    // solve from it ends the loop early whenever it certifies.
    if (settled || (it + 1) % poll == 0) {
      QpSolution polished;
      if (try_polish(sp, y, 1e-9, polished)) {
        polished.iterations = it + 1;
        polished.L = predicted_cost(sp, polished.dU);
        out = polished;
        done = true;
        break;
      }
      if (settled) break;
    }

    if ((it + 1) % 100 == 0 && rp > settings.eps) {
      // Relative-residual rho adaptation; a frozen y (rd = 0) with a
      // primal gap means rho is far too small.
      const double pscale =
          std::max({kz.lpNorm<Eigen::Infinity>(), y.lpNorm<Eigen::Infinity>(),
                    1e-12});
      const Vec kt_nu = sp.G.transpose() * w.head(sp.N * sp.nx) + w.tail(M);
      const double dscale = std::max(
          {(sp.H * z).lpNorm<Eigen::Infinity>(), sp.g.lpNorm<Eigen::Infinity>(),
           rho * kt_nu.lpNorm<Eigen::Infinity>(), 1e-12});
      const double rp_rel = rp / pscale;
      const double rd_rel = std::max(rd / dscale, 1e-14);
      const double scale = std::sqrt(rp_rel / rd_rel);
      if (scale > 5 || scale < 0.2) {
        const double rho_new = std::clamp(rho * std::clamp(scale, 0.1, 10.0),
                                          1e-4, 1e6);
        if (rho_new != rho) {
          w *= rho / rho_new;
          rho = rho_new;
          llt.compute(sp.H + sigma * Mat::Identity(M, M) + rho * KtK);
        }
      }
    }
  }

  if (!done) {
    out.dU = z;
    out.iterations = it;
    const KktResiduals res = kkt_residuals(sp, out.dU, rho * w);
    out.kkt_primal = res.primal;
    out.kkt_dual = res.dual;
    out.kkt_comp = res.comp;
  }

  // Stationarity is judged relative to the magnitude of its own terms:
  // linearizations taken near contact kinks can carry huge entries, and
  // an absolute dual tolerance would be unattainable there.
  const Vec kt_nu = sp.G.transpose() * (rho * w).head(sp.N * sp.nx) +
                    (rho * w).tail(M);
  const double dual_scale =
      std::max({1.0, sp.g.lpNorm<Eigen::Infinity>(),
                (sp.H * out.dU).lpNorm<Eigen::Infinity>(),
                kt_nu.lpNorm<Eigen::Infinity>()});
  if (out.kkt_primal > settings.kkt_tol ||
      out.kkt_comp > settings.kkt_tol ||
      out.kkt_dual > settings.kkt_tol * dual_scale) {
    if (const char* dump = std::getenv("CITO_QP_DUMP_ON_FAIL")) {
      std::ofstream f(dump);
      dump_subproblem(sp, f);
    }
    throw SolverError("subproblem did not reach the KKT tolerance",
                      out.kkt_primal, out.kkt_dual, out.kkt_comp);
  }

  out.L = predicted_cost(sp, out.dU);
  out.dX = Mat::Zero(sp.nx, sp.N + 1);
  const Vec dX = sp.G * out.dU;
  for (int i = 0; i < sp.N; ++i) out.dX.col(i + 1) = dX.segment(i * sp.nx, sp.nx);
  return out;
}

void dump_subproblem(const ConvexSubproblem& sp, std::ostream& os) {
  auto emit = [&os](const char* name, const Mat& m) {
    os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
        os << buf << (j + 1 == m.cols() ? '\n' : ' ');
      }
    }
  };
  os << "cito_qp 1\n";
  os << "dims " << sp.N << ' ' << sp.nx << ' ' << sp.nu << '\n';
  char buf[128];
  std::snprintf(buf, sizeof buf, "r %.17g\nomega %.17g\nc0 %.17g\n", sp.r,
                sp.omega, sp.c0);
  os << buf;
  emit("G", sp.G);
  emit("H", sp.H);
  emit("g", sp.g);
  emit("y_lo", sp.y_lo);
  emit("y_hi", sp.y_hi);
  emit("Xs", sp.Xs);
  emit("Us", sp.Us);
}

}  // namespace cito
