#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qfc/point.hpp"
#include "qfc/transfer.hpp"

namespace qfc {

// Search coordinates: {delta_p, delta_c, delta, omega_c0, omega_d}.
using Params = std::array<double, 5>;

struct ParamBox {
  Params lo{}, hi{};
  Params clamp(const Params& p) const;
  ParamBox intersect(const ParamBox& other) const;
};

// Capped50 keeps every magnitude below 50 Gamma (the restricted scan of the
// reference data).  Unbounded still clips at 1000 Gamma: past that the gain
// in CE is negligible while the coherence system grows ill-conditioned.
enum class BoundsMode { Capped50, Unbounded };

ParamBox bounds_box(BoundsMode mode);

// Continuation discipline: restrict the search to a box around one or more
// warm-start centers so the optimized parameters vary continuously along an
// OD sweep instead of drifting to the large-detuning plateau.  With several
// centers the box is their hull, which lets a capped sweep re-balance
// between "scale up with OD" and "stay put" without leaving the region.
struct TrustRegion {
  TrustRegion() = default;
  TrustRegion(Params center, double radius, double floor_gamma = 2.0)
      : centers{center}, radius_frac(radius), floor(floor_gamma) {}
  TrustRegion(std::vector<Params> cs, double radius, double floor_gamma = 2.0)
      : centers(std::move(cs)), radius_frac(radius), floor(floor_gamma) {}

  std::vector<Params> centers;
  double radius_frac = 0.15;  // half-width = radius_frac * max(|center|, floor)
  double floor = 2.0;         // Gamma units
  ParamBox box() const;
};

struct OptProblem {
  AtomicScheme scheme;
  GammaMatrix gamma;
  double alpha = 0.0;

  BoundsMode bounds = BoundsMode::Unbounded;
  std::vector<Params> seeds;
  std::optional<TrustRegion> trust;

  int eval_budget = 20000;
  int restarts = 6;  // Latin-hypercube restarts on top of the seeds
  std::uint64_t rng_seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  bool absorbing = true;

  // cheap objective for the simplex search, exact rescore for the winners
  PropagationMethod search_method = PropagationMethod::Magnus2;
  PropagationControls search_controls{1e-8, 4096, 1 << 22, 128};
  PropagationControls rescore_controls{};
};

struct RestartTrace {
  Params seed{};
  Params best{};
  double eta_search = 0.0;
  long long evals = 0;
  bool from_lhs = false;
};

struct OptResult {
  Params best_params{};
  double eta_d = 0.0;        // rescored with exact-sliced propagation
  double eta_search = 0.0;   // objective value seen by the simplex
  double od = 0.0;

  // audit trail: everything needed to replay the run
  long long evals = 0;
  long long eval_budget = 0;
  int restarts_run = 0;
  std::uint64_t rng_seed = 0;
  PropagationMethod search_method = PropagationMethod::Magnus2;
  double rescore_tol = 0.0;
  double wall_seconds = 0.0;

  bool degenerate = false;      // objective identically zero (alpha = 0)
  bool no_improvement = false;  // budget exhausted without beating the seeds

  std::vector<RestartTrace> traces;
  std::optional<Params> warm_parent;

  OperatingPoint point(const OptProblem& problem) const;
};

OptResult maximize_ce(const OptProblem& problem);

struct SweepSettings {
  double warm_radius_frac = 0.15;  // continuation trust radius per OD step
  bool scale_warm_start = true;    // scale the warm start by the OD ratio
};

// Warm-started sweep over a strictly increasing OD grid.  The template's
// seeds and trust apply to the first grid point; subsequent points inherit
// the previous optimum (scaled) as warm start and trust center.
std::vector<OptResult> sweep_od(const OptProblem& problem_template,
                                const std::vector<double>& od_grid,
                                const SweepSettings& settings = {});

// Sign-symmetric branch: detunings negated, Rabi magnitudes kept.  The
// conversion efficiency is invariant under this map.
Params branch_mirror(const Params& p);
OperatingPoint branch_mirror(const OperatingPoint& pt);

}  // namespace qfc
