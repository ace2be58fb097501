#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "iscr/errors.hpp"
#include "iscr/llm_plan.hpp"

namespace iscr {

enum class CellState : std::uint8_t { kAlive, kFailed, kSpare };

struct PanelGrid {
  int rows = 0;
  int cols = 0;
  std::vector<CellState> cells;  // row-major

  CellState at(int r, int c) const {
    return cells[static_cast<std::size_t>(r) * cols + c];
  }
  CellState& at(int r, int c) {
    return cells[static_cast<std::size_t>(r) * cols + c];
  }
  int cell_count() const { return rows * cols; }

  void validate() const {
    if (rows < 1 || cols < 1) {
      throw std::invalid_argument("grid needs at least one cell");
    }
    if (cells.size() != static_cast<std::size_t>(rows) * cols) {
      throw std::invalid_argument("cell storage does not match grid shape");
    }
  }
};

struct FailureProcess {
  double annual_failure_probability = 0.0;
  double horizon_years = 5.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (annual_failure_probability < 0.0 ||
        annual_failure_probability > 1.0) {
      throw std::invalid_argument("failure probability must lie in [0, 1]");
    }
    if (!(horizon_years > 0.0)) {
      throw std::invalid_argument("horizon must be positive");
    }
  }
};

struct ReconfigOutcome {
  ParallelPlan plan;  // meaningless when total_loss is set
  double retained_rate_fraction = 0.0;
  int unplaced_stages = 0;
  bool total_loss = false;
};

namespace detail {

// The raw engine stream is specified by the standard; the distributions in
// <random> are not. Hand-rolled mapping keeps runs bit-identical anywhere.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// splitmix64-style stream splitter for per-replica seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline bool usable(CellState s, bool use_spares) {
  return s == CellState::kAlive || (use_spares && s == CellState::kSpare);
}

inline int usable_cells(const PanelGrid& g, bool use_spares) {
  int n = 0;
  for (CellState s : g.cells) n += usable(s, use_spares) ? 1 : 0;
  return n;
}

// Axis-aligned 2x2 tiles anchored at even offsets.
inline int intact_quads(const PanelGrid& g, bool use_spares) {
  int n = 0;
  for (int r = 0; r + 1 < g.rows; r += 2) {
    for (int c = 0; c + 1 < g.cols; c += 2) {
      const bool ok = usable(g.at(r, c), use_spares) &&
                      usable(g.at(r, c + 1), use_spares) &&
                      usable(g.at(r + 1, c), use_spares) &&
                      usable(g.at(r + 1, c + 1), use_spares);
      n += ok ? 1 : 0;
    }
  }
  return n;
}

// Best stage count: minimize P x ceil(B/P), the per-session period in block
// passes. Ties go to the larger P, which keeps more sessions in flight.
inline int best_stage_count(int blocks, int avail) {
  int best_p = 1;
  long long best_cost = -1;
  const int cap = std::min(avail, blocks);
  for (int p = 1; p <= cap; ++p) {
    const long long cost =
        static_cast<long long>(p) * ((blocks + p - 1) / p);
    if (best_cost < 0 || cost <= best_cost) {
      best_cost = cost;
      best_p = p;
    }
  }
  return best_p;
}

}  // namespace detail

// Lays the plan onto a physical grid. Tensor width 4 tiles 2x2 quads in
// serpentine order over the quad grid; width 1 fills cells row-major.
// Unassigned cells are the spare pool.
inline PanelGrid grid_for_plan(const ParallelPlan& plan, int cols = 12) {
  plan.validate();
  if (cols < 1) {
    throw std::invalid_argument("grid needs at least one column");
  }
  PanelGrid g;
  g.cols = cols;
  if (plan.tensor_width == 1) {
    g.rows = (plan.panels + cols - 1) / cols;
    g.cells.assign(static_cast<std::size_t>(g.rows) * cols,
                   CellState::kSpare);
    for (int i = 0; i < plan.panels; ++i) {
      g.cells[i] = CellState::kAlive;
    }
    return g;
  }
  if (plan.tensor_width != 4) {
    throw std::domain_error("grid placement supports tensor widths 1 and 4");
  }
  if (cols % 2 != 0) {
    throw std::invalid_argument("quad placement needs an even column count");
  }
  const int quad_cols = cols / 2;
  const int quads = plan.pipeline_stages;
  const int quad_rows = (quads + quad_cols - 1) / quad_cols;
  g.rows = 2 * quad_rows;
  g.cells.assign(static_cast<std::size_t>(g.rows) * cols, CellState::kSpare);
  for (int i = 0; i < quads; ++i) {
    const int qr = i / quad_cols;
    const int j = i % quad_cols;
    const int qc = qr % 2 == 0 ? j : quad_cols - 1 - j;
    for (int dr = 0; dr < 2; ++dr) {
      for (int dc = 0; dc < 2; ++dc) {
        g.at(2 * qr + dr, 2 * qc + dc) = CellState::kAlive;
      }
    }
  }
  return g;
}

inline double failure_probability(const FailureProcess& process,
                                  double elapsed_years) {
  process.validate();
  if (elapsed_years < 0.0) {
    throw std::domain_error("elapsed time must be non-negative");
  }
  return 1.0 - std::pow(1.0 - process.annual_failure_probability,
                        elapsed_years);
}

// Independent Bernoulli draw per cell, row-major, one engine pull each, so
// the outcome depends only on (seed, shape, elapsed).
inline PanelGrid inject_failures(const PanelGrid& grid,
                                 const FailureProcess& process,
                                 double elapsed_years) {
  grid.validate();
  const double p = failure_probability(process, elapsed_years);
  std::mt19937_64 rng(process.seed);
  PanelGrid out = grid;
  for (CellState& s : out.cells) {
    const double u = detail::uniform01(rng);
    if (s != CellState::kFailed && u < p) s = CellState::kFailed;
  }
  return out;
}

// Greedy reconfiguration. Tensor width is preserved first: a width-4 plan
// keeps running on whatever intact quads remain and only collapses to
// width 1 when none survive. The stage count is then re-chosen to minimize
// the per-session period over the panels actually available.
inline ReconfigOutcome replan(const LlmModelSpec& model,
                              const ParallelPlan& plan, const PanelGrid& grid,
                              bool use_spares = true) {
  model.validate();
  plan.validate();
  grid.validate();
  if (plan.tensor_width != 1 && plan.tensor_width != 4) {
    throw std::domain_error("grid placement supports tensor widths 1 and 4");
  }

  int t_eff = 1;
  int avail = 0;
  if (plan.tensor_width == 4) {
    const int quads = detail::intact_quads(grid, use_spares);
    if (quads > 0) {
      t_eff = 4;
      avail = quads;
    } else {
      avail = detail::usable_cells(grid, use_spares);
    }
  } else {
    avail = detail::usable_cells(grid, use_spares);
  }

  ReconfigOutcome out;
  if (avail == 0) {
    out.total_loss = true;
    out.retained_rate_fraction = 0.0;
    out.unplaced_stages = plan.pipeline_stages;
    return out;
  }

  if (t_eff == plan.tensor_width && avail >= plan.pipeline_stages) {
    out.plan = plan;
    out.retained_rate_fraction = 1.0;
    out.unplaced_stages = 0;
    return out;
  }

  const int p_new = detail::best_stage_count(model.num_blocks, avail);
  ParallelPlan degraded;
  degraded.panels = p_new * t_eff;
  degraded.pipeline_stages = p_new;
  degraded.tensor_width = t_eff;
  degraded.blocks_per_stage = (model.num_blocks + p_new - 1) / p_new;
  degraded.sessions_in_flight = 2 * p_new;
  degraded.balanced = model.num_blocks % p_new == 0;

  out.plan = degraded;
  out.retained_rate_fraction =
      std::min(1.0, rate_per_session(model, degraded) /
                        rate_per_session(model, plan));
  out.unplaced_stages = std::max(0, plan.pipeline_stages - p_new);
  return out;
}

struct ResiliencePoint {
  double elapsed_years = 0.0;
  double failure_probability = 0.0;
  double mean_failed_fraction = 0.0;
  double mean_retained = 0.0;
  int replicas = 0;
};

struct ResilienceSample {
  int point_index = 0;
  int replica = 0;
  int failed_count = 0;
  double retained_fraction = 0.0;
  std::uint64_t failure_mask = 0;  // bit per cell; zero for grids > 64 cells
};

struct ResilienceCurve {
  std::vector<ResiliencePoint> points;
  std::vector<ResilienceSample> samples;
};

// Monte-Carlo sweep over elapsed time. Each replica draws one uniform per
// cell and reuses it at every sweep point, so its failure sets are nested
// and every replica's retained fraction is monotone by construction.
// Replica seeds are split from the process seed; the reduction order is
// fixed for bitwise reproducibility.
inline ResilienceCurve resilience_curve(const LlmModelSpec& model,
                                        const ParallelPlan& plan,
                                        const FailureProcess& process,
                                        int replicas, int points = 11,
                                        int cols = 12,
                                        bool use_spares = true) {
  model.validate();
  plan.validate();
  process.validate();
  if (replicas < 1) {
    throw std::domain_error("need at least one replica");
  }
  if (points < 2) {
    throw std::domain_error("need at least the two endpoint sweep points");
  }

  const PanelGrid base = grid_for_plan(plan, cols);
  const int n_cells = base.cell_count();
  const bool mask_fits = n_cells <= 64;

  ResilienceCurve curve;
  curve.points.resize(points);
  curve.samples.reserve(static_cast<std::size_t>(points) * replicas);

  std::vector<std::vector<double>> draws(
      replicas, std::vector<double>(n_cells, 0.0));
  for (int r = 0; r < replicas; ++r) {
    std::mt19937_64 rng(detail::mix_seed(process.seed, r));
    for (int i = 0; i < n_cells; ++i) {
      draws[r][i] = detail::uniform01(rng);
    }
  }

  std::vector<std::vector<ResilienceSample>> by_point(points);
  for (int k = 0; k < points; ++k) {
    const double t =
        process.horizon_years * k / static_cast<double>(points - 1);
    const double p = failure_probability(process, t);
    ResiliencePoint& pt = curve.points[k];
    pt.elapsed_years = t;
    pt.failure_probability = p;
    pt.replicas = replicas;

    double retained_sum = 0.0;
    double failed_sum = 0.0;
    for (int r = 0; r < replicas; ++r) {
      PanelGrid g = base;
      ResilienceSample sample;
      sample.point_index = k;
      sample.replica = r;
      for (int i = 0; i < n_cells; ++i) {
        if (g.cells[i] == CellState::kFailed) continue;
        if (draws[r][i] < p) {
          g.cells[i] = CellState::kFailed;
          ++sample.failed_count;
          if (mask_fits) sample.failure_mask |= 1ULL << i;
        }
      }
      const ReconfigOutcome out = replan(model, plan, g, use_spares);
      sample.retained_fraction = out.retained_rate_fraction;
      retained_sum += sample.retained_fraction;
      failed_sum += sample.failed_count;
      by_point[k].push_back(sample);
    }
    pt.mean_retained = retained_sum / replicas;
    pt.mean_failed_fraction = failed_sum / replicas / n_cells;
  }

  for (int k = 0; k < points; ++k) {
    for (const ResilienceSample& s : by_point[k]) {
      curve.samples.push_back(s);
    }
  }
  return curve;
}

}  // namespace iscr
