#include "mmdual/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mmdual/kernels.hpp"
#include "mmdual/linalg.hpp"
#include "mmdual/operators.hpp"

namespace mmdual {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> dtd_diagonal(const Grid& g) {
  const Index3 os = g.omega_shape();
  std::vector<double> diag(g.omega_cells(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const double inv_h2 = 1.0 / (g.spacing()[a] * g.spacing()[a]);
    for (std::size_t o = 0; o < diag.size(); ++o) {
      const std::size_t c = g.omega_coord(o, a);
      if (c > 0) diag[o] += inv_h2;
      if (c + 1 < os[a]) diag[o] += inv_h2;
    }
  }
  return diag;
}

Eigen::MatrixXd dense_dtd(const Grid& g) {
  const std::size_t n = g.omega_cells();
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    omega_dtd_apply(g, e.data(), col.data());
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

// Strict positive definiteness of alpha D^T D + diag(lambda3).
bool shifted_exchange_pd(const Grid& g, const ScalarField& lambda3,
                         double alpha) {
  const std::size_t n = g.omega_cells();
  double scale = 1.0;
  for (double l : lambda3.v) scale = std::max(scale, std::abs(l));
  if (n <= 256) {
    Eigen::MatrixXd m = alpha * dense_dtd(g);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += lambda3.v[i];
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > 1e-10 * scale;
  }
  DualState probe;
  probe.lambda3 = lambda3;
  return in_A2(g, probe, alpha).member;
}

// Fixed pieces of J*(lambda, ., .) for one set of multipliers.
struct InnerContext {
  const Grid& g;
  const ModelParams& p;
  VectorField3 b0;          // -grad lambda2 + H on Omega
  std::vector<double> den;  // lambda3 + K
  std::vector<double> m_diag;
  ScalarField lambda3;
  double constant = 0.0;    // 1/2 int lambda3 - int beta + G2*
  bool a2 = false;

  InnerContext(const Grid& grid, const DualState& lambda,
               const ModelParams& params)
      : g(grid), p(params) {
    const A1Report a1 = in_A1(lambda, p.K);
    if (!a1.member)
      throw AdmissibilityError("inner_minimize: lambda outside A1");
    lambda3 = lambda.lambda3;
    den.resize(g.omega_cells());
    for (std::size_t o = 0; o < den.size(); ++o)
      den[o] = lambda.lambda3.v[o] + p.K;
    b0 = VectorField3::zeros(g, Support::Omega);
    const VectorField3 gl2 = gradient(g, lambda.lambda2);
    for (std::size_t o = 0; o < g.omega_cells(); ++o)
      for (int i = 0; i < 3; ++i)
        b0.c[i][o] = -gl2.c[i][g.omega_to_box(o)] + p.H.c[i][o];
    m_diag = dtd_diagonal(g);
    for (std::size_t o = 0; o < m_diag.size(); ++o)
      m_diag[o] = 1.0 / (p.alpha * m_diag[o] + lambda.lambda3.v[o]);
    const double vol = g.cell_volume();
    constant = 0.5 * integral(g, lambda.lambda3) -
               p.beta * vol * static_cast<double>(g.omega_cells()) +
               g2_star(g, lambda);
    a2 = shifted_exchange_pd(g, lambda.lambda3, p.alpha);
  }

  VectorField3 forcing(const ScalarField& t) const {
    VectorField3 b = b0;
    for (std::size_t o = 0; o < g.omega_cells(); ++o) {
      const double w = p.beta * (1.0 - 2.0 * t.v[o]);
      for (int i = 0; i < 3; ++i) b.c[i][o] += w * p.easy_axis[i];
    }
    return b;
  }

  struct YStep {
    VectorField3 m_hat;
    VectorField3 y;
    double value = -kInf;
    bool ok = false;
  };

  // Exact minimization over y = D^T z* + zeta for fixed t: the stationary
  // point solves (alpha D^T D + diag(lambda3)) m^ = b and y = A m^.
  YStep solve_y(const ScalarField& t) const {
    YStep r;
    if (!a2) return r;
    const std::size_t n = g.omega_cells();
    const VectorField3 b = forcing(t);
    LinearOp op = [&](std::span<const double> x, std::span<double> out) {
      omega_dtd_apply(g, x.data(), out.data());
      for (std::size_t o = 0; o < n; ++o)
        out[o] = p.alpha * out[o] + lambda3.v[o] * x[o];
    };
    r.m_hat = VectorField3::zeros(g, Support::Omega);
    r.y = VectorField3::zeros(g, Support::Omega);
    std::vector<double> tmp(n);
    double ym = 0.0;
    for (int i = 0; i < 3; ++i) {
      CgResult cg = conjugate_gradient(op, b.c[i], r.m_hat.c[i], {}, m_diag);
      if (cg.indefinite) return r;
      omega_dtd_apply(g, r.m_hat.c[i].data(), tmp.data());
      for (std::size_t o = 0; o < n; ++o)
        r.y.c[i][o] = p.K * r.m_hat.c[i][o] - p.alpha * tmp[o];
      ym += kernels::dot(r.y.c[i], r.m_hat.c[i]);
    }
    r.value = evaluate(r.y, b, ym);
    r.ok = true;
    return r;
  }

  double evaluate(const VectorField3& y, const VectorField3& b,
                  double y_dot_mhat) const {
    const std::size_t n = g.omega_cells();
    std::array<std::vector<double>, 3> a;
    for (int i = 0; i < 3; ++i) {
      a[i] = b.c[i];
      kernels::axpy(1.0, y.c[i], a[i]);
    }
    const double q = kernels::active().quad_over_lin(
        a[0].data(), a[1].data(), a[2].data(), den.data(), n);
    const double vol = g.cell_volume();
    return 0.5 * vol * y_dot_mhat - 0.5 * vol * q - constant;
  }

  // Cellwise exact minimization over t in [0, 1] for fixed y. The t
  // dependence is concave, so the minimum sits at t = 0 or t = 1.
  ScalarField t_step(const VectorField3& y, const ScalarField& current) const {
    ScalarField t = current;
    for (std::size_t o = 0; o < g.omega_cells(); ++o) {
      double q[2];
      for (int v = 0; v < 2; ++v) {
        const double w = p.beta * (1.0 - 2.0 * v);
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
          const double u = b0.c[i][o] + y.c[i][o] + w * p.easy_axis[i];
          s += u * u;
        }
        q[v] = -s / (2.0 * den[o]);
      }
      if (q[0] < q[1]) {
        t.v[o] = 0.0;
      } else if (q[1] < q[0]) {
        t.v[o] = 1.0;
      } else if (t.v[o] != 0.0 && t.v[o] != 1.0) {
        t.v[o] = 0.0;
      }
    }
    return t;
  }
};

// Represents y as D^T z + zeta: zeta_i is the body mean of y_i and z_i = D w_i
// with D^T D w_i = y_i - zeta_i.
ZStar zstar_from_forcing(const Grid& g, const VectorField3& y,
                         const ScalarField& lambda2) {
  ZStar z = ZStar::zeros(g);
  const std::size_t n = g.omega_cells();
  // D^T D plus the projector onto body constants: SPD with the same
  // mean-free solution.
  double shift = 0.0;
  for (int a = 0; a < g.dim(); ++a)
    shift = std::max(shift, 1.0 / (g.spacing()[a] * g.spacing()[a]));
  LinearOp op = [&g, n, shift](std::span<const double> x, std::span<double> out) {
    omega_dtd_apply(g, x.data(), out.data());
    double m = 0.0;
    for (double v : x) m += v;
    m *= shift / static_cast<double>(n);
    for (double& v : out) v += m;
  };
  for (int i = 0; i < 3; ++i) {
    double mean = 0.0;
    for (double v : y.c[i]) mean += v;
    mean /= static_cast<double>(n);
    z.mean[i] = mean;
    std::vector<double> rhs(n), w(n, 0.0);
    for (std::size_t o = 0; o < n; ++o) rhs[o] = y.c[i][o] - mean;
    CgOptions opts;
    opts.rel_tol = 1e-14;
    opts.abs_tol = 1e-300;
    conjugate_gradient(op, rhs, w, opts);
    z.rows[i] = omega_gradient(g, ScalarField{Support::Omega, w});
  }
  return project_zstar_boundary(g, z, lambda2);
}

}  // namespace

InnerResult inner_minimize(const Grid& g, const DualState& lambda,
                           const ModelParams& p, const SolverOptions& o) {
  require_shape(g, lambda.lambda1, Support::Box, "inner_minimize: lambda1");
  require_shape(g, lambda.lambda2, Support::Box, "inner_minimize: lambda2");
  require_shape(g, lambda.lambda3, Support::Omega, "inner_minimize: lambda3");
  InnerContext ctx(g, lambda, p);
  InnerResult res;
  res.t = lambda.t.size() == g.omega_cells()
              ? lambda.t
              : ScalarField::constant(g, Support::Omega, 0.5);
  for (double& x : res.t.v) x = std::clamp(x, 0.0, 1.0);

  if (!ctx.a2) {
    res.unbounded = true;
    res.value = -kInf;
    res.zstar = project_zstar_boundary(g, ZStar::zeros(g), lambda.lambda2);
    res.m_hat = VectorField3::zeros(g, Support::Omega);
    return res;
  }

  const std::size_t n = g.omega_cells();
  InnerContext::YStep best;
  if (n <= o.exhaustive_t_cells && n < 31) {
    best.value = kInf;
    ScalarField t = ScalarField::zeros(g, Support::Omega);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      for (std::size_t c = 0; c < n; ++c) t.v[c] = (mask >> c) & 1U ? 1.0 : 0.0;
      InnerContext::YStep step = ctx.solve_y(t);
      ++res.rounds;
      if (!step.ok) {
        res.unbounded = true;
        break;
      }
      if (step.value < best.value) {
        best = std::move(step);
        res.t = t;
      }
    }
    res.converged = !res.unbounded;
  } else {
    if (o.t_first) {
      res.t = ctx.t_step(zstar_forcing(g, lambda.zstar), res.t);
    }
    double prev = kInf;
    for (std::size_t round = 0; round < o.inner_max_rounds; ++round) {
      best = ctx.solve_y(res.t);
      res.rounds = round + 1;
      if (!best.ok) {
        res.unbounded = true;
        break;
      }
      ScalarField t_new = ctx.t_step(best.y, res.t);
      const bool same = t_new.v == res.t.v;
      const bool small = prev - best.value <= o.inner_rel_tol * (1.0 + std::abs(best.value));
      if (same || small) {
        res.converged = true;
        if (!same) {
          // keep (y, t) consistent: re-solve on the improved vertex
          InnerContext::YStep again = ctx.solve_y(t_new);
          if (again.ok && again.value <= best.value) {
            best = std::move(again);
            res.t = std::move(t_new);
          }
        }
        break;
      }
      prev = best.value;
      res.t = std::move(t_new);
    }
  }
  if (res.unbounded) {
    res.value = -kInf;
    res.converged = false;
    res.zstar = project_zstar_boundary(g, ZStar::zeros(g), lambda.lambda2);
    res.m_hat = VectorField3::zeros(g, Support::Omega);
    return res;
  }
  res.value = best.value;
  res.m_hat = std::move(best.m_hat);
  res.zstar = zstar_from_forcing(g, best.y, lambda.lambda2);
  return res;
}

DualGradient dual_gradient(const Grid& g, const DualState& lambda,
                           const InnerResult& inner, const ModelParams&) {
  DualGradient d;
  const VectorField3 f = g2_maximizer(g, lambda);
  d.lambda1 = curl(g, f);
  d.lambda2 = divergence(g, f - extend_by_zero(g, inner.m_hat));
  d.lambda3 = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const Vec3 m = inner.m_hat.at(o);
    d.lambda3.v[o] = 0.5 * (dot3(m, m) - 1.0);
  }
  return d;
}

OuterResult outer_maximize(const Grid& g, const ModelParams& p,
                           const DualState& initial, const SolverOptions& o) {
  if (!in_A1(initial, p.K).member)
    throw AdmissibilityError("outer_maximize: initial lambda outside A1");
  const double lower = -p.K + o.projection_eps_rel * p.K;
  const double vol = g.cell_volume();

  OuterResult out;
  DualState x = initial;
  InnerResult inner = inner_minimize(g, x, p, o);
  out.inner_rounds += inner.rounds;
  if (inner.unbounded)
    throw AdmissibilityError("outer_maximize: initial lambda outside A2");
  DualGradient grad = dual_gradient(g, x, inner, p);
  out.trace.push_back(inner.value);

  auto project_step = [&](const DualState& base, const DualGradient& d,
                          double s) {
    DualState y = base;
    for (int k = 0; k < 3; ++k)
      kernels::axpy(s, d.lambda1.c[k], y.lambda1.c[k]);
    kernels::axpy(s, d.lambda2.v, y.lambda2.v);
    for (std::size_t c = 0; c < y.lambda3.size(); ++c)
      y.lambda3.v[c] = std::max(lower, y.lambda3.v[c] + s * d.lambda3.v[c]);
    return y;
  };
  // <g, y - x> and |y - x|^2 in the L2 metric.
  auto pair = [&](const DualState& a, const DualState& b, const DualGradient* d,
                  double& dot_g, double& dist2) {
    dot_g = 0.0;
    dist2 = 0.0;
    auto acc = [&](const std::vector<double>& u, const std::vector<double>& v,
                   const std::vector<double>* gv) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double diff = u[i] - v[i];
        dist2 += diff * diff;
        if (gv) dot_g += (*gv)[i] * diff;
      }
    };
    for (int k = 0; k < 3; ++k)
      acc(a.lambda1.c[k], b.lambda1.c[k], d ? &d->lambda1.c[k] : nullptr);
    acc(a.lambda2.v, b.lambda2.v, d ? &d->lambda2.v : nullptr);
    acc(a.lambda3.v, b.lambda3.v, d ? &d->lambda3.v : nullptr);
    dot_g *= vol;
    dist2 *= vol;
  };

  double step = 1.0;
  for (std::size_t it = 0; it < o.outer_max_iter; ++it) {
    {
      DualState probe = project_step(x, grad, 1.0);
      double dg, d2;
      pair(probe, x, nullptr, dg, d2);
      out.projected_gradient_norm = std::sqrt(d2);
    }
    if (out.projected_gradient_norm <= o.outer_grad_tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    DualState trial;
    InnerResult trial_inner;
    double s = step;
    while (s > 1e-20) {
      trial = project_step(x, grad, s);
      trial.t = inner.t;
      trial.zstar = inner.zstar;
      trial_inner = inner_minimize(g, trial, p, o);
      out.inner_rounds += trial_inner.rounds;
      double dg, d2;
      pair(trial, x, &grad, dg, d2);
      const std::size_t w =
          std::clamp<std::size_t>(o.nonmonotone_window, 1, out.trace.size());
      const double ref = *std::min_element(out.trace.end() - static_cast<std::ptrdiff_t>(w),
                                           out.trace.end());
      if (!trial_inner.unbounded && trial_inner.value >= ref + o.armijo * dg) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      out.line_search_failed = true;
      break;
    }
    DualGradient grad_new = dual_gradient(g, trial, trial_inner, p);
    // Barzilai-Borwein trial step for the next iteration.
    double sty = 0.0, sts = 0.0;
    {
      auto acc = [&](const std::vector<double>& xn, const std::vector<double>& xo,
                     const std::vector<double>& gn, const std::vector<double>& go) {
        for (std::size_t i = 0; i < xn.size(); ++i) {
          const double ds = xn[i] - xo[i];
          sts += ds * ds;
          sty -= ds * (gn[i] - go[i]);
        }
      };
      for (int k = 0; k < 3; ++k)
        acc(trial.lambda1.c[k], x.lambda1.c[k], grad_new.lambda1.c[k],
            grad.lambda1.c[k]);
      acc(trial.lambda2.v, x.lambda2.v, grad_new.lambda2.v, grad.lambda2.v);
      acc(trial.lambda3.v, x.lambda3.v, grad_new.lambda3.v, grad.lambda3.v);
    }
    step = sty > 0.0 ? std::clamp(sts / sty, 1e-12, 1e12) : std::min(2.0 * s, 1e12);
    x = std::move(trial);
    inner = std::move(trial_inner);
    grad = std::move(grad_new);
    out.trace.push_back(inner.value);
    out.iterations = it + 1;
  }
  x.zstar = inner.zstar;
  x.t = inner.t;
  out.lambda = std::move(x);
  out.inner = std::move(inner);
  return out;
}

RecoveredPrimal recover_primal(const Grid& g, const DualState& d,
                               const ModelParams& p) {
  RecoveredPrimal r;
  r.state.m = g1_maximizer(g, d, p);
  r.state.f = g2_maximizer(g, d);
  r.state.t = d.t;
  r.residuals = constraint_residuals(g, r.state);
  return r;
}

double duality_gap(const Grid& g, const PrimalState& primal,
                   const DualState& dual, const ModelParams& p) {
  const ConstraintResiduals r = constraint_residuals(g, primal);
  const double tol = p.feasibility_tol;
  if (!(r.r0 <= tol))
    throw InfeasibleError("duality_gap: |m| = 1 violated (r0 = " +
                          std::to_string(r.r0) + ")");
  if (!(r.r1 <= tol * std::max(1.0, norm(g, primal.m))))
    throw InfeasibleError("duality_gap: div(-f + m chi) = 0 violated (r1 = " +
                          std::to_string(r.r1) + ")");
  if (!(r.r2 <= tol))
    throw InfeasibleError("duality_gap: curl f = 0 violated (r2 = " +
                          std::to_string(r.r2) + ")");
  for (double t : dual.t.v)
    if (!(t >= 0.0 && t <= 1.0))
      throw AdmissibilityError("duality_gap: dual t outside [0, 1]");
  if (!in_A1(dual, p.K).member)
    throw AdmissibilityError("duality_gap: dual lambda outside A1");
  return total_energy(g, primal, p).total - dual_value(g, dual, p);
}

Lambda4Result compute_lambda4(const Grid& g, const DualState& d,
                              const ModelParams& p) {
  const VectorField3 m = g1_maximizer(g, d, p);
  Lambda4Result r;
  r.lambda4 = ScalarField::zeros(g, Support::Omega);
  r.t_derivative = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const double dt = 2.0 * p.beta * dot3(m.at(o), p.easy_axis);
    r.t_derivative.v[o] = dt;
    const double denom = 2.0 * d.t.v[o] - 1.0;
    if (std::abs(denom) < 1e-8) {
      r.degenerate_cells.push_back(o);
      if (std::abs(dt) > 1e-10 * (1.0 + p.beta)) r.inconsistent_cells.push_back(o);
      continue;
    }
    r.lambda4.v[o] = -dt / denom;
  }
  return r;
}

Certificate optimality_certificate(const Grid& g, const DualState& d,
                                   const Lambda4Result& l4,
                                   const ModelParams& p) {
  const std::size_t n = g.omega_cells();
  std::vector<double> den(n);
  for (std::size_t o = 0; o < n; ++o) {
    den[o] = d.lambda3.v[o] + p.K;
    if (!(den[o] > 0.0))
      throw AdmissibilityError("optimality_certificate: lambda outside A1");
  }
  LinearOp a_op = [&](std::span<const double> x, std::span<double> y) {
    omega_dtd_apply(g, x.data(), y.data());
    for (std::size_t o = 0; o < n; ++o) y[o] = p.K * x[o] - p.alpha * y[o];
  };
  auto a_inv = [&](std::span<const double> b, std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    CgResult cg = conjugate_gradient(a_op, b, x);
    if (!cg.converged && cg.residual > 1e-10 * (1.0 + std::sqrt(kernels::sum_sq(b))))
      throw ConvergenceError("optimality_certificate: A^-1 solve failed");
  };

  Certificate c;
  // z*z* block in the effective variable y = D^T z* + zeta: A^-1 - diag(1/d).
  LinearOp hzz = [&](std::span<const double> x, std::span<double> y) {
    a_inv(x, y);
    for (std::size_t o = 0; o < n; ++o) y[o] -= x[o] / den[o];
  };
  EigenEstimate e = smallest_eigenvalue(hzz, n, 1e-12, 20000);
  if (!e.converged)
    throw ConvergenceError("optimality_certificate: eigen iteration failed");
  c.zz_min_eigenvalue = e.value;
  c.zz_hessian_pd = e.value > 1e-12;

  // Per-cell 2x2 reduction on (y_c along e, t_c).
  std::vector<double> unit(n, 0.0), col(n);
  c.min_pointwise_det = kInf;
  std::vector<double> ainv_diag(n);
  for (std::size_t o = 0; o < n; ++o) {
    unit[o] = 1.0;
    a_inv(unit, col);
    unit[o] = 0.0;
    ainv_diag[o] = col[o];
    const double h11 = col[o] - 1.0 / den[o];
    const double h12 = 2.0 * p.beta / den[o];
    const double h22 = -4.0 * p.beta * p.beta / den[o] + 2.0 * l4.lambda4.v[o];
    c.min_pointwise_det = std::min(c.min_pointwise_det, h11 * h22 - h12 * h12);
  }
  c.pointwise_det_positive = c.min_pointwise_det > 0.0;
  c.degenerate = !l4.degenerate_cells.empty();

  if (n <= 64) {
    c.global_checked = true;
    const std::size_t m = 4 * n;
    Eigen::MatrixXd a = p.K * Eigen::MatrixXd::Identity(n, n) - p.alpha * dense_dtd(g);
    Eigen::MatrixXd ainv = a.llt().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < 3; ++i) {
      h.block(i * n, i * n, n, n) = ainv;
      for (std::size_t o = 0; o < n; ++o) {
        h(i * n + o, i * n + o) -= 1.0 / den[o];
        const double yt = 2.0 * p.beta * p.easy_axis[i] / den[o];
        h(i * n + o, 3 * n + o) = yt;
        h(3 * n + o, i * n + o) = yt;
      }
    }
    for (std::size_t o = 0; o < n; ++o)
      h(3 * n + o, 3 * n + o) =
          -4.0 * p.beta * p.beta / den[o] + 2.0 * l4.lambda4.v[o];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    c.global_min_eigenvalue = es.eigenvalues().minCoeff();
    c.global_positive = c.global_min_eigenvalue > 1e-12;
  }
  c.passed = c.zz_hessian_pd && c.pointwise_det_positive && !c.degenerate;
  return c;
}

DualState default_initial_dual(const Grid& g, const ModelParams& p) {
  double hmax = 0.0;
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const Vec3 h = p.H.at(o);
    hmax = std::max(hmax, std::sqrt(dot3(h, h)));
  }
  return DualState::initial(g, hmax + p.beta);
}

SolveReport solve(const Grid& g, const ModelParams& p, const SolverOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport r;
  r.outer = outer_maximize(g, p, default_initial_dual(g, p), o);
  r.dual_value = r.outer.inner.value;
  r.primal = recover_primal(g, r.outer.lambda, p);
  r.energy = total_energy(g, r.primal.state, p);
  r.gap = r.energy.total - r.dual_value;
  r.relative_gap = r.gap / (1.0 + std::abs(r.energy.total));
  r.lambda4 = compute_lambda4(g, r.outer.lambda, p);
  r.certificate = optimality_certificate(g, r.outer.lambda, r.lambda4, p);
  r.certificate.first_order_residual = r.outer.projected_gradient_norm;
  r.certificate.stationary = r.outer.projected_gradient_norm <= kStationarityTol;
  r.certificate.passed = r.certificate.passed && r.certificate.stationary;
  const A2Report a2 = in_A2(g, r.outer.lambda, p.alpha);
  r.in_A2 = a2.member;
  r.a2_min_eigenvalue = a2.min_eigenvalue;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace mmdual
