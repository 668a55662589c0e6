#include "mmdual/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "mmdual/operators.hpp"

namespace mmdual {

namespace {

void validate_probe(const ConjugateProbe& p) {
  if (p.dimension == 0) throw std::invalid_argument("numeric_sup: dimension must be > 0");
  if (!p.objective) throw std::invalid_argument("numeric_sup: missing objective");
  if (p.lo.size() != p.dimension || p.hi.size() != p.dimension)
    throw std::invalid_argument("numeric_sup: box size does not match dimension");
  if (!p.constrained.empty() && p.constrained.size() != p.dimension)
    throw std::invalid_argument("numeric_sup: constrained flags do not match dimension");
  if (p.refinement < 1) throw std::invalid_argument("numeric_sup: refinement must be >= 1");
  if (p.coarse_points < 3) throw std::invalid_argument("numeric_sup: coarse_points must be >= 3");
  for (std::size_t j = 0; j < p.dimension; ++j)
    if (!std::isfinite(p.lo[j]) || !std::isfinite(p.hi[j]) || !(p.lo[j] < p.hi[j]))
      throw std::invalid_argument("numeric_sup: box bounds must be finite with lo < hi");
}

}  // namespace

SupResult numeric_sup(const ConjugateProbe& probe) {
  validate_probe(probe);
  const std::size_t n = probe.dimension;
  const std::size_t pts = probe.coarse_points;
  SupResult r;
  auto eval = [&](const std::vector<double>& x) {
    ++r.evaluations;
    return probe.objective(x);
  };
  auto node = [&](std::size_t j, std::size_t k) {
    return probe.lo[j] + (probe.hi[j] - probe.lo[j]) * static_cast<double>(k) /
                             static_cast<double>(pts - 1);
  };

  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = 0.5 * (probe.lo[j] + probe.hi[j]);
  double best = eval(x);

  if (n <= 3) {
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= pts;
    std::vector<double> y(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t j = 0; j < n; ++j) {
        y[j] = node(j, rem % pts);
        rem /= pts;
      }
      const double v = eval(y);
      if (v > best) {
        best = v;
        x = y;
      }
    }
  } else {
    for (int sweep = 0; sweep < 3; ++sweep) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> y = x;
        for (std::size_t k = 0; k < pts; ++k) {
          y[j] = node(j, k);
          const double v = eval(y);
          if (v > best) {
            best = v;
            x[j] = y[j];
          }
        }
      }
    }
  }

  std::vector<double> step(n);
  for (std::size_t j = 0; j < n; ++j)
    step[j] = (probe.hi[j] - probe.lo[j]) / static_cast<double>(pts - 1);
  for (std::size_t level = 0; level <= probe.refinement; ++level) {
    for (std::size_t sweep = 0; sweep < 100000; ++sweep) {
      bool improved = false;
      for (std::size_t j = 0; j < n; ++j) {
        for (double dir : {1.0, -1.0}) {
          double s = step[j];
          while (true) {
            std::vector<double> y = x;
            y[j] = std::clamp(x[j] + dir * s, probe.lo[j], probe.hi[j]);
            if (y[j] == x[j]) break;
            const double v = eval(y);
            if (!(v > best)) break;
            best = v;
            x[j] = y[j];
            improved = true;
            s *= 2.0;
          }
        }
      }
      if (!improved) break;
    }
    if (level < probe.refinement)
      for (double& s : step) s *= 0.5;
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (!probe.constrained.empty() && probe.constrained[j]) continue;
    const double tol = 2.0 * step[j];
    if (x[j] - probe.lo[j] <= tol || probe.hi[j] - x[j] <= tol)
      throw BoxBoundaryError("numeric_sup: argmax on the search box boundary at coordinate " +
                                 std::to_string(j),
                             j);
  }
  r.value = best;
  r.argmax = std::move(x);
  return r;
}

SupResult numeric_sup_expanding(ConjugateProbe probe, std::size_t max_doublings) {
  for (std::size_t k = 0;; ++k) {
    try {
      return numeric_sup(probe);
    } catch (const BoxBoundaryError&) {
      if (k >= max_doublings) throw;
      for (std::size_t j = 0; j < probe.dimension; ++j) {
        if (!probe.constrained.empty() && probe.constrained[j]) continue;
        const double c = 0.5 * (probe.lo[j] + probe.hi[j]);
        const double h = probe.hi[j] - probe.lo[j];
        probe.lo[j] = c - h;
        probe.hi[j] = c + h;
      }
    }
  }
}

namespace {

// Search box from the quadratic's diagonal: coordinate j of the maximizer
// of the decoupled model is c_j / k_j.
ConjugateProbe quadratic_probe(std::size_t n, Objective f) {
  ConjugateProbe p;
  p.dimension = n;
  p.lo.resize(n);
  p.hi.resize(n);
  std::vector<double> x(n, 0.0);
  const double f0 = f(x);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = 1.0;
    const double fp = f(x);
    x[j] = -1.0;
    const double fm = f(x);
    x[j] = 0.0;
    const double c = 0.5 * (fp - fm);
    const double k = 2.0 * f0 - fp - fm;
    if (!(k > 0.0))
      throw std::invalid_argument("oracle: objective is not strictly concave along a coordinate");
    const double center = c / k;
    const double half = 2.0 * std::abs(center) + 1.0;
    p.lo[j] = center - half;
    p.hi[j] = center + half;
  }
  p.objective = std::move(f);
  return p;
}

VectorField3 unpack_omega(const Grid& g, std::span<const double> x) {
  const std::size_t n = g.omega_cells();
  VectorField3 m = VectorField3::zeros(g, Support::Omega);
  for (int i = 0; i < 3; ++i)
    std::copy(x.begin() + i * n, x.begin() + (i + 1) * n, m.c[i].begin());
  return m;
}

VectorField3 unpack_box(const Grid& g, std::span<const double> x) {
  const std::size_t n = g.box_cells();
  VectorField3 f = VectorField3::zeros(g, Support::Box);
  for (int i = 0; i < 3; ++i)
    std::copy(x.begin() + i * n, x.begin() + (i + 1) * n, f.c[i].begin());
  return f;
}

// sum_i <z*_i, D m_i> + zeta_i int m_i
double exchange_pairing(const Grid& g, const ZStar& z, const VectorField3& m) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const VectorField3 dm = omega_gradient(g, ScalarField{Support::Omega, m.c[i]});
    s += inner(g, z.rows[i], dm) + z.mean[i] * integral(g, ScalarField{Support::Omega, m.c[i]});
  }
  return s;
}

double sup_value(const ConjugateProbe& p) { return numeric_sup_expanding(p).value; }

}  // namespace

double ftilde_objective(const Grid& g, const ZStar& z, double K, double alpha,
                        const VectorField3& m) {
  return exchange_pairing(g, z, m) + exchange_energy(g, m, alpha) - 0.5 * K * inner(g, m, m);
}

double g1_objective(const Grid& g, const DualState& d, const ModelParams& p,
                    const VectorField3& m) {
  ScalarField sq_minus_one = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o) {
    const Vec3 v = m.at(o);
    sq_minus_one.v[o] = dot3(v, v) - 1.0;
  }
  const double g1 = relaxed_anisotropy(g, m, d.t, p.beta, p.easy_axis) +
                    zeeman_energy(g, m, p.H) + 0.5 * p.K * inner(g, m, m);
  return exchange_pairing(g, d.zstar, m) +
         inner(g, d.lambda2, divergence(g, extend_by_zero(g, m))) -
         0.5 * inner(g, d.lambda3, sq_minus_one) - g1;
}

double g2_objective(const Grid& g, const DualState& d, const VectorField3& f) {
  return -inner(g, d.lambda2, divergence(g, f)) - inner(g, d.lambda1, curl(g, f)) -
         0.5 * inner(g, f, f);
}

double oracle_ftilde_star(const Grid& g, const ZStar& z, double K, double alpha) {
  return sup_value(quadratic_probe(3 * g.omega_cells(), [&](std::span<const double> x) {
    return ftilde_objective(g, z, K, alpha, unpack_omega(g, x));
  }));
}

double oracle_g1_star(const Grid& g, const DualState& d, const ModelParams& p) {
  return sup_value(quadratic_probe(3 * g.omega_cells(), [&](std::span<const double> x) {
    return g1_objective(g, d, p, unpack_omega(g, x));
  }));
}

double oracle_g2_star(const Grid& g, const DualState& d) {
  return sup_value(quadratic_probe(3 * g.box_cells(), [&](std::span<const double> x) {
    return g2_objective(g, d, unpack_box(g, x));
  }));
}

namespace {

ScalarField select_wells(const Grid& g, const VectorField3& m, const Vec3& e) {
  ScalarField t = ScalarField::zeros(g, Support::Omega);
  for (std::size_t o = 0; o < g.omega_cells(); ++o)
    t.v[o] = dot3(m.at(o), e) < 0.0 ? 1.0 : 0.0;
  return t;
}

double primal_energy(const Grid& g, const ModelParams& p, const VectorField3& m,
                     VectorField3* f_out = nullptr) {
  PrimalState s{m, stray_field(g, m), select_wells(g, m, p.easy_axis)};
  const double e = total_energy(g, s, p).total;
  if (f_out) *f_out = std::move(s.f);
  return e;
}

// Tangential part of the energy gradient per unit volume.
VectorField3 tangent_gradient(const Grid& g, const ModelParams& p,
                              const VectorField3& m, const VectorField3& f) {
  const std::size_t n = g.omega_cells();
  VectorField3 gr = VectorField3::zeros(g, Support::Omega);
  std::vector<double> tmp(n);
  for (int i = 0; i < 3; ++i) {
    omega_dtd_apply(g, m.c[i].data(), tmp.data());
    for (std::size_t o = 0; o < n; ++o)
      gr.c[i][o] = p.alpha * tmp[o] - p.H.c[i][o] + f.c[i][g.omega_to_box(o)];
  }
  for (std::size_t o = 0; o < n; ++o) {
    const Vec3 mo = m.at(o);
    const double s = dot3(mo, p.easy_axis) < 0.0 ? 1.0 : -1.0;
    Vec3 v = gr.at(o);
    for (int i = 0; i < 3; ++i) v[i] += s * p.beta * p.easy_axis[i];
    const double r = dot3(v, mo);
    for (int i = 0; i < 3; ++i) v[i] -= r * mo[i];
    gr.set(o, v);
  }
  return gr;
}

VectorField3 descend(const Grid& g, const ModelParams& p, VectorField3 m, double& energy) {
  VectorField3 f;
  energy = primal_energy(g, p, m, &f);
  const double vol = g.cell_volume();
  double step = 0.1;
  for (int it = 0; it < 5000 && step > 1e-16; ++it) {
    const VectorField3 gr = tangent_gradient(g, p, m, f);
    double g2 = 0.0, gmax = 0.0;
    for (int i = 0; i < 3; ++i)
      for (double v : gr.c[i]) {
        g2 += v * v;
        gmax = std::max(gmax, std::abs(v));
      }
    if (gmax < 1e-11) break;
    while (step > 1e-16) {
      VectorField3 trial = m;
      for (int i = 0; i < 3; ++i)
        for (std::size_t o = 0; o < trial.size(); ++o) trial.c[i][o] -= step * gr.c[i][o];
      trial = project_unit_sphere(trial);
      VectorField3 tf;
      const double e = primal_energy(g, p, trial, &tf);
      if (e <= energy - 1e-4 * step * vol * g2) {
        m = std::move(trial);
        f = std::move(tf);
        energy = e;
        step = std::min(2.0 * step, 1e3);
        break;
      }
      step *= 0.5;
    }
  }
  return m;
}

}  // namespace

BruteForceResult brute_force_primal(const ModelParams& p, const Grid& g,
                                    std::size_t restarts, unsigned long long seed) {
  if (g.omega_cells() > 8)
    throw std::invalid_argument("brute_force_primal: at most 8 body cells supported");
  if (restarts == 0) throw std::invalid_argument("brute_force_primal: restarts must be >= 1");
  p.validate(g);
  const std::size_t n = g.omega_cells();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);

  BruteForceResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    VectorField3 m0 = VectorField3::zeros(g, Support::Omega);
    if (r < 2) {
      const double s = r == 0 ? 1.0 : -1.0;
      for (std::size_t o = 0; o < n; ++o)
        m0.set(o, {s * p.easy_axis[0], s * p.easy_axis[1], s * p.easy_axis[2]});
      m0 = project_unit_sphere(m0);
    } else {
      for (std::size_t o = 0; o < n; ++o) {
        const double theta = std::acos(u(rng));
        const double phi = phi_dist(rng);
        m0.set(o, {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)});
      }
    }
    double e = 0.0;
    VectorField3 m = descend(g, p, std::move(m0), e);
    if (e < best.value) {
      best.value = e;
      best.m = std::move(m);
    }
  }
  best.t = select_wells(g, best.m, p.easy_axis);
  best.restarts = restarts;
  return best;
}

}  // namespace mmdual
