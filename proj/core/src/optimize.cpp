#include "qfc/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "qfc/parallel.hpp"

namespace qfc {

namespace {

constexpr int kDim = 5;

OperatingPoint point_at(const OptProblem& pr, const Params& p, double alpha) {
  OperatingPoint pt;
  pt.scheme = pr.scheme;
  pt.gamma = pr.gamma;
  pt.delta_p = p[0];
  pt.delta_c = p[1];
  pt.delta = p[2];
  pt.omega_c0 = p[3];
  pt.omega_d = p[4];
  pt.alpha = alpha;
  return pt;
}

double score(const OptProblem& pr, const Params& p, PropagationMethod method,
             const PropagationControls& controls) {
  const OperatingPoint pt = point_at(pr, p, pr.alpha);
  const TransferMatrix t = pr.absorbing ? transfer_matrix(pt, method, controls)
                                        : nonabsorbing_transfer(pt, method, controls);
  return conversion_metrics(t).eta_d;
}

bool lex_less(const Params& a, const Params& b) {
  for (int i = 0; i < kDim; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// (eta, params) ordering used by every reduction: higher eta wins, ties break
// lexicographically on the parameters so parallel reductions are stable.
bool better(double ea, const Params& pa, double eb, const Params& pb) {
  if (ea != eb) return ea > eb;
  return lex_less(pa, pb);
}

struct NmOutcome {
  Params best{};
  double eta = 0.0;
  long long evals = 0;
};

// Nelder-Mead maximization of the CE inside a box, with Gao-Han adaptive
// coefficients.  Vertices are projected onto the box before evaluation.
NmOutcome nelder_mead(const OptProblem& pr, const ParamBox& box, const Params& start,
                      long long budget) {
  const double ref = 1.0;
  const double exp_c = 1.0 + 2.0 / kDim;
  const double con_c = 0.75 - 0.5 / kDim;
  const double shr_c = 1.0 - 1.0 / kDim;

  struct Vertex {
    Params x;
    double f;  // negative CE
  };

  long long evals = 0;
  auto eval = [&](const Params& raw) {
    const Params p = box.clamp(raw);
    ++evals;
    return Vertex{p, -score(pr, p, pr.search_method, pr.search_controls)};
  };

  std::array<Vertex, kDim + 1> simplex;
  simplex[0] = eval(start);
  for (int i = 0; i < kDim; ++i) {
    Params p = box.clamp(start);
    const double step = 0.10 * std::max(std::abs(p[i]), 1.0);
    p[i] += (p[i] + step <= box.hi[i]) ? step : -step;
    simplex[i + 1] = eval(p);
  }

  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
      if (a.f != b.f) return a.f < b.f;
      return lex_less(a.x, b.x);
    });
  };
  order();

  const double ftol = 1e-7;
  const double xtol = 1e-4;
  while (evals < budget) {
    const double fspread = simplex[kDim].f - simplex[0].f;
    double diam = 0.0;
    for (int i = 0; i < kDim; ++i) {
      diam = std::max(diam, std::abs(simplex[kDim].x[i] - simplex[0].x[i]) /
                                std::max(1.0, std::abs(simplex[0].x[i])));
    }
    if (fspread < ftol && diam < xtol) break;

    Params centroid{};
    for (int v = 0; v < kDim; ++v)
      for (int i = 0; i < kDim; ++i) centroid[i] += simplex[v].x[i] / kDim;

    auto blend = [&](double t) {
      Params p;
      for (int i = 0; i < kDim; ++i)
        p[i] = centroid[i] + t * (simplex[kDim].x[i] - centroid[i]);
      return p;
    };

    const Vertex refl = eval(blend(-ref));
    if (refl.f < simplex[0].f) {
      const Vertex expd = eval(blend(-ref * exp_c));
      simplex[kDim] = expd.f < refl.f ? expd : refl;
    } else if (refl.f < simplex[kDim - 1].f) {
      simplex[kDim] = refl;
    } else {
      const bool outside = refl.f < simplex[kDim].f;
      const Vertex ctr = eval(blend(outside ? -ref * con_c : con_c));
      if (ctr.f < std::min(refl.f, simplex[kDim].f)) {
        simplex[kDim] = ctr;
      } else {
        for (int v = 1; v <= kDim; ++v) {
          Params p;
          for (int i = 0; i < kDim; ++i)
            p[i] = simplex[0].x[i] + shr_c * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v] = eval(p);
          if (evals >= budget) break;
        }
      }
    }
    order();
  }

  return {simplex[0].x, -simplex[0].f, evals};
}

std::vector<Params> latin_hypercube(const ParamBox& box, int count, std::uint64_t seed) {
  std::vector<Params> out(count);
  if (count == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int d = 0; d < kDim; ++d) {
    std::vector<int> strata(count);
    for (int k = 0; k < count; ++k) strata[k] = k;
    std::shuffle(strata.begin(), strata.end(), rng);
    for (int k = 0; k < count; ++k) {
      const double u = (strata[k] + unif(rng)) / count;
      out[k][d] = box.lo[d] + u * (box.hi[d] - box.lo[d]);
    }
  }
  return out;
}

}  // namespace

Params ParamBox::clamp(const Params& p) const {
  Params q;
  for (int i = 0; i < kDim; ++i) q[i] = std::min(std::max(p[i], lo[i]), hi[i]);
  return q;
}

ParamBox ParamBox::intersect(const ParamBox& other) const {
  ParamBox b;
  for (int i = 0; i < kDim; ++i) {
    b.lo[i] = std::max(lo[i], other.lo[i]);
    b.hi[i] = std::min(hi[i], other.hi[i]);
    if (b.lo[i] > b.hi[i]) b.lo[i] = b.hi[i];
  }
  return b;
}

ParamBox bounds_box(BoundsMode mode) {
  const double cap = mode == BoundsMode::Capped50 ? 50.0 : 1000.0;
  ParamBox b;
  b.lo = {-cap, -cap, -cap, 0.0, 0.0};
  b.hi = {cap, cap, cap, cap, cap};
  return b;
}

ParamBox TrustRegion::box() const {
  if (centers.empty()) throw std::domain_error("TrustRegion: needs at least one center");
  ParamBox b;
  for (int i = 0; i < kDim; ++i) {
    b.lo[i] = std::numeric_limits<double>::infinity();
    b.hi[i] = -std::numeric_limits<double>::infinity();
  }
  for (const Params& c : centers) {
    for (int i = 0; i < kDim; ++i) {
      const double half = radius_frac * std::max(std::abs(c[i]), floor);
      b.lo[i] = std::min(b.lo[i], c[i] - half);
      b.hi[i] = std::max(b.hi[i], c[i] + half);
    }
  }
  // Rabi magnitudes stay nonnegative
  b.lo[3] = std::max(b.lo[3], 0.0);
  b.lo[4] = std::max(b.lo[4], 0.0);
  return b;
}

OperatingPoint OptResult::point(const OptProblem& problem) const {
  OperatingPoint pt;
  pt.scheme = problem.scheme;
  pt.gamma = problem.gamma;
  pt.delta_p = best_params[0];
  pt.delta_c = best_params[1];
  pt.delta = best_params[2];
  pt.omega_c0 = best_params[3];
  pt.omega_d = best_params[4];
  pt.alpha = od;
  return pt;
}

OptResult maximize_ce(const OptProblem& problem) {
  const auto t0 = std::chrono::steady_clock::now();
  if (problem.eval_budget < 1) throw std::domain_error("maximize_ce: eval budget must be >= 1");

  OptResult res;
  res.od = problem.alpha;
  res.rng_seed = problem.rng_seed;
  res.eval_budget = problem.eval_budget;
  res.search_method = problem.search_method;
  res.rescore_tol = problem.rescore_controls.tol;

  ParamBox box = bounds_box(problem.bounds);
  if (problem.trust) box = box.intersect(problem.trust->box());

  std::vector<Params> starts;
  for (const auto& s : problem.seeds) starts.push_back(box.clamp(s));
  const int n_lhs = std::max(problem.restarts, starts.empty() ? 1 : 0);
  for (const auto& s : latin_hypercube(box, n_lhs, problem.rng_seed)) starts.push_back(s);

  if (problem.alpha == 0.0) {
    // no medium: the objective vanishes identically
    res.degenerate = true;
    res.best_params = starts.front();
    res.eta_d = 0.0;
    res.restarts_run = 0;
    return res;
  }

  const long long per_run =
      std::max<long long>(64, problem.eval_budget / static_cast<long long>(starts.size()));

  std::vector<RestartTrace> traces(starts.size());
  parallel_for(static_cast<int>(starts.size()), problem.threads, [&](int i) {
    const NmOutcome out = nelder_mead(problem, box, starts[i], per_run);
    traces[i] = {starts[i], out.best, out.eta, out.evals,
                 i >= static_cast<int>(problem.seeds.size())};
  });

  long long total_evals = 0;
  for (const auto& t : traces) total_evals += t.evals;

  // exact rescore of every restart winner; the reported optimum must be
  // reproducible by an independent transfer-matrix call
  int best_i = -1;
  double best_eta = -1.0;
  std::vector<double> rescored(traces.size());
  parallel_for(static_cast<int>(traces.size()), problem.threads, [&](int i) {
    rescored[i] =
        score(problem, traces[i].best, PropagationMethod::ExactSliced, problem.rescore_controls);
  });
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (best_i < 0 || better(rescored[i], traces[i].best, best_eta, traces[best_i].best)) {
      best_i = static_cast<int>(i);
      best_eta = rescored[i];
    }
  }

  res.best_params = traces[best_i].best;
  res.eta_d = best_eta;
  res.eta_search = traces[best_i].eta_search;
  res.evals = total_evals;
  res.restarts_run = static_cast<int>(starts.size());
  res.traces = std::move(traces);

  if (!problem.seeds.empty()) {
    double seed_eta = -1.0;
    Params seed_best{};
    for (const auto& s : problem.seeds) {
      const Params c = box.clamp(s);
      const double e = score(problem, c, PropagationMethod::ExactSliced, problem.rescore_controls);
      if (better(e, c, seed_eta, seed_best)) {
        seed_eta = e;
        seed_best = c;
      }
    }
    if (!better(res.eta_d, res.best_params, seed_eta, seed_best)) {
      res.no_improvement = true;
      res.best_params = seed_best;
      res.eta_d = seed_eta;
    }
  }

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<OptResult> sweep_od(const OptProblem& problem_template,
                                const std::vector<double>& od_grid,
                                const SweepSettings& settings) {
  for (std::size_t i = 1; i < od_grid.size(); ++i) {
    if (!(od_grid[i] > od_grid[i - 1]))
      throw std::domain_error("sweep_od: OD grid must be strictly increasing");
  }

  std::vector<OptResult> results;
  results.reserve(od_grid.size());
  std::optional<Params> warm;
  double warm_od = 0.0;

  for (std::size_t k = 0; k < od_grid.size(); ++k) {
    OptProblem pr = problem_template;
    pr.alpha = od_grid[k];
    pr.rng_seed = problem_template.rng_seed + k;
    if (warm) {
      Params scaled = *warm;
      if (settings.scale_warm_start && warm_od > 0.0) {
        const double r = od_grid[k] / warm_od;
        for (auto& v : scaled) v *= r;
      }
      // under a bounds cap the scaled continuation may hit a corner, so the
      // search region spans both continuation candidates
      scaled = bounds_box(pr.bounds).clamp(scaled);
      pr.seeds.clear();
      pr.seeds.push_back(scaled);
      pr.seeds.push_back(*warm);
      pr.trust = TrustRegion({scaled, *warm}, settings.warm_radius_frac);
    }
    OptResult r = maximize_ce(pr);
    if (warm) r.warm_parent = *warm;
    warm = r.best_params;
    warm_od = od_grid[k];
    results.push_back(std::move(r));
  }
  return results;
}

Params branch_mirror(const Params& p) {
  return {-p[0], -p[1], -p[2], p[3], p[4]};
}

OperatingPoint branch_mirror(const OperatingPoint& pt) {
  OperatingPoint q = pt;
  q.delta_p = -pt.delta_p;
  q.delta_c = -pt.delta_c;
  q.delta = -pt.delta;
  return q;
}

}  // namespace qfc
