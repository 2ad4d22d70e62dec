#include "cito/linearize.hpp"

#include "cito/parallel.hpp"

namespace cito {

namespace {

Vec step_vec(const Problem& p, const State& x, const Control& u, int step) {
  return p.state_vec(rollout_step(p, x, u, step));
}

// One Jacobian column. col < nx perturbs the state, otherwise the
// control entry col - nx.
Vec fd_column(const Problem& p, const State& x, const Control& u, int col,
              double eps, int step) {
  try {
    if (col < p.nx()) {
      Vec xv = p.state_vec(x);
      Vec hi = xv, lo = xv;
      hi[col] += eps;
      lo[col] -= eps;
      const Vec fp = step_vec(p, p.state_from_vec(hi), u, step);
      const Vec fm = step_vec(p, p.state_from_vec(lo), u, step);
      return (fp - fm) / (2 * eps);
    }
    const int j = col - p.nx();
    const Vec ulo = p.control_lo(), uhi = p.control_hi();
    Vec uv = p.flat(u);
    const bool up_ok = uv[j] + eps <= uhi[j];
    const bool down_ok = uv[j] - eps >= ulo[j];
    if (up_ok && down_ok) {
      Vec hi = uv, lo = uv;
      hi[j] += eps;
      lo[j] -= eps;
      const Vec fp = step_vec(p, x, p.unflat(hi), step);
      const Vec fm = step_vec(p, x, p.unflat(lo), step);
      return (fp - fm) / (2 * eps);
    }
    if (!up_ok && !down_ok) return Vec::Zero(p.nx());  // pinned entry
    Vec other = uv;
    other[j] += up_ok ? eps : -eps;
    const Vec f0 = step_vec(p, x, u, step);
    const Vec f1 = step_vec(p, x, p.unflat(other), step);
    return up_ok ? Vec((f1 - f0) / eps) : Vec((f0 - f1) / eps);
  } catch (const RolloutError& e) {
    throw LinearizeError(std::string("rollout failed while differentiating: ") +
                             e.what(),
                         col);
  }
}

}  // namespace

std::pair<Mat, Mat> linearize_step(const Problem& p, const State& x,
                                   const Control& u, double eps) {
  Mat A(p.nx(), p.nx()), B(p.nx(), p.nu());
  for (int c = 0; c < p.nx(); ++c) A.col(c) = fd_column(p, x, u, c, eps, 0);
  for (int c = 0; c < p.nu(); ++c)
    B.col(c) = fd_column(p, x, u, p.nx() + c, eps, 0);
  return {A, B};
}

Linearization linearize_trajectory(const Problem& p, const StateTraj& X,
                                   const ControlTraj& U, int workers,
                                   double eps) {
  const int N = static_cast<int>(U.size());
  if (static_cast<int>(X.size()) != N + 1)
    throw ModelError("trajectory length mismatch");
  Linearization lin;
  lin.A.assign(static_cast<size_t>(N), Mat(p.nx(), p.nx()));
  lin.B.assign(static_cast<size_t>(N), Mat(p.nx(), p.nu()));
  const int cols = p.nx() + p.nu();
  parallel_for(N * cols, workers, [&](int t) {
    const int i = t / cols;
    const int c = t % cols;
    const Vec col = fd_column(p, X[static_cast<size_t>(i)],
                              U[static_cast<size_t>(i)], c, eps, i);
    if (c < p.nx())
      lin.A[static_cast<size_t>(i)].col(c) = col;
    else
      lin.B[static_cast<size_t>(i)].col(c - p.nx()) = col;
  });
  return lin;
}

}  // namespace cito
