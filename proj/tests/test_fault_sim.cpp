#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "iscr/fault_sim.hpp"
#include "testutil.hpp"

using namespace iscr;

namespace {

LlmModelSpec tiny_model(int blocks, double tau = 1e-6) {
  LlmModelSpec m;
  m.name = "tiny";
  m.context_length = 1000;
  m.num_blocks = blocks;
  m.weights_total_bytes = 1.0e9;
  m.activation_size_bytes = 1000.0;
  m.base_block_time_s = tau;
  return m;
}

PanelGrid all_alive(int rows, int cols) {
  PanelGrid g;
  g.rows = rows;
  g.cols = cols;
  g.cells.assign(static_cast<std::size_t>(rows) * cols, CellState::kAlive);
  return g;
}

void apply_mask(PanelGrid& g, std::uint64_t mask) {
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    if (mask >> i & 1) g.cells[i] = CellState::kFailed;
  }
}

bool usable(CellState s, bool use_spares) {
  return s == CellState::kAlive || (use_spares && s == CellState::kSpare);
}

int usable_count(const PanelGrid& g, bool use_spares) {
  int n = 0;
  for (CellState s : g.cells) n += usable(s, use_spares) ? 1 : 0;
  return n;
}

int intact_quads(const PanelGrid& g, bool use_spares) {
  int n = 0;
  for (int qr = 0; qr + 1 < g.rows; qr += 2) {
    for (int qc = 0; qc + 1 < g.cols; qc += 2) {
      const bool ok = usable(g.at(qr, qc), use_spares) &&
                      usable(g.at(qr, qc + 1), use_spares) &&
                      usable(g.at(qr + 1, qc), use_spares) &&
                      usable(g.at(qr + 1, qc + 1), use_spares);
      n += ok ? 1 : 0;
    }
  }
  return n;
}

double best_rate(int blocks, double tau, int t_eff, int avail) {
  double best = 0.0;
  for (int p = 1; p <= std::min(avail, blocks); ++p) {
    const int bps = (blocks + p - 1) / p;
    best = std::max(best, t_eff / (2.0 * p * bps * tau));
  }
  return best;
}

// Brute-force optimum over every valid placement. Mixed quad/single
// pipelines are dominated by the pure cases (the slowest stage sets the
// pace), so the search covers pure tensor widths only.
double exhaustive_retained(const LlmModelSpec& m, const ParallelPlan& plan,
                           const PanelGrid& g, bool use_spares) {
  const double rate0 = rate_per_session(m, plan);
  double best = 0.0;
  if (plan.tensor_width == 4) {
    const int q = intact_quads(g, use_spares);
    if (q > 0) {
      best = std::max(best,
                      best_rate(m.num_blocks, m.base_block_time_s, 4, q));
    }
  }
  const int u = usable_count(g, use_spares);
  if (u > 0) {
    best = std::max(best, best_rate(m.num_blocks, m.base_block_time_s, 1, u));
  }
  return std::min(1.0, best / rate0);
}

}  // namespace

TEST_CASE("grid layout for a plan") {
  const LlmModelSpec light = light_model_spec();

  const PanelGrid g1 = grid_for_plan(make_plan(light, 16, 1), 12);
  REQUIRE(g1.rows == 2);
  REQUIRE(g1.cols == 12);
  int alive = 0;
  for (CellState s : g1.cells) alive += s == CellState::kAlive ? 1 : 0;
  REQUIRE(alive == 16);
  REQUIRE(g1.cells[15] == CellState::kAlive);
  REQUIRE(g1.cells[16] == CellState::kSpare);

  const PanelGrid g4 = grid_for_plan(make_plan(light, 16, 4), 12);
  REQUIRE(g4.rows == 2);
  REQUIRE(g4.cols == 12);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 12; ++c) {
      const CellState want = c < 8 ? CellState::kAlive : CellState::kSpare;
      REQUIRE(g4.at(r, c) == want);
    }
  }

  // Serpentine quad order wraps back on the second quad row.
  const PanelGrid g5 = grid_for_plan(make_plan(light, 28, 4), 4);
  REQUIRE(g5.rows == 8);  // 7 quads on a 2-wide quad grid
  REQUIRE(g5.at(0, 0) == CellState::kAlive);
  REQUIRE(g5.at(7, 2) == CellState::kAlive);  // odd quad rows fill rightward
  REQUIRE(g5.at(7, 0) == CellState::kSpare);

  REQUIRE_THROWS_AS(grid_for_plan(make_plan(light, 16, 4), 11),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(grid_for_plan(make_plan(light, 16, 2), 12),
                    std::domain_error);
}

TEST_CASE("failure injection is a deterministic Bernoulli process") {
  FailureProcess proc;
  proc.annual_failure_probability = 0.05;
  proc.horizon_years = 5.0;
  proc.seed = 12345;

  const PanelGrid base = all_alive(8, 8);
  const PanelGrid a = inject_failures(base, proc, 2.0);
  const PanelGrid b = inject_failures(base, proc, 2.0);
  REQUIRE(a.cells == b.cells);

  proc.seed = 54321;
  const PanelGrid c = inject_failures(base, proc, 2.0);
  REQUIRE(a.cells != c.cells);

  proc.annual_failure_probability = 0.0;
  REQUIRE(inject_failures(base, proc, 4.0).cells == base.cells);

  proc.annual_failure_probability = 0.3;
  REQUIRE(inject_failures(base, proc, 0.0).cells == base.cells);

  proc.annual_failure_probability = 1.0;
  const PanelGrid dead = inject_failures(base, proc, 1.0);
  for (CellState s : dead.cells) REQUIRE(s == CellState::kFailed);

  // Spares age like everyone else.
  PanelGrid with_spares = all_alive(2, 4);
  with_spares.cells[5] = CellState::kSpare;
  const PanelGrid gone = inject_failures(with_spares, proc, 1.0);
  REQUIRE(gone.cells[5] == CellState::kFailed);

  REQUIRE_THROWS_AS(inject_failures(base, proc, -0.5), std::domain_error);
}

TEST_CASE("failure counts track the binomial expectation") {
  const PanelGrid base = all_alive(32, 16);  // 512 panels
  FailureProcess proc;
  proc.annual_failure_probability = 0.02;
  proc.horizon_years = 5.0;

  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    proc.seed = seed;
    const PanelGrid g1 = inject_failures(base, proc, 1.0);
    const PanelGrid g2 = inject_failures(base, proc, 2.0);
    int f1 = 0;
    int f2 = 0;
    for (CellState s : g1.cells) f1 += s == CellState::kFailed ? 1 : 0;
    for (CellState s : g2.cells) f2 += s == CellState::kFailed ? 1 : 0;
    sum1 += f1;
    sum2 += f2;
  }
  // Mean of 1000 seeds stays within 3 sigma of Binomial(512, p).
  REQUIRE(std::abs(sum1 / 1000.0 - 10.24) < 0.302);
  REQUIRE(std::abs(sum2 / 1000.0 - 20.2752) < 0.42);
}

TEST_CASE("replan keeps the plan when nothing failed") {
  const LlmModelSpec light = light_model_spec();
  const ParallelPlan plan = make_plan(light, 16, 4);
  const PanelGrid grid = grid_for_plan(plan, 12);
  const ReconfigOutcome out = replan(light, plan, grid);
  REQUIRE_FALSE(out.total_loss);
  REQUIRE(out.retained_rate_fraction == 1.0);
  REQUIRE(out.unplaced_stages == 0);
  REQUIRE(out.plan.pipeline_stages == plan.pipeline_stages);
  REQUIRE(out.plan.tensor_width == plan.tensor_width);
}

TEST_CASE("replan reports total loss when nothing survives") {
  const LlmModelSpec light = light_model_spec();
  const ParallelPlan plan = make_plan(light, 16, 1);
  PanelGrid grid = grid_for_plan(plan, 12);
  for (CellState& s : grid.cells) s = CellState::kFailed;
  const ReconfigOutcome out = replan(light, plan, grid);
  REQUIRE(out.total_loss);
  REQUIRE(out.retained_rate_fraction == 0.0);
  REQUIRE(out.unplaced_stages == plan.pipeline_stages);
}

TEST_CASE("breaking the only quad degrades tensor width") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 4, 4);  // one quad, 8 blocks deep
  PanelGrid grid = grid_for_plan(plan, 2);
  REQUIRE(grid.rows == 2);
  REQUIRE(grid.cols == 2);
  grid.at(0, 1) = CellState::kFailed;
  const ReconfigOutcome out = replan(m, plan, grid);
  REQUIRE_FALSE(out.total_loss);
  REQUIRE(out.plan.tensor_width == 1);
  REQUIRE(std::abs(out.retained_rate_fraction - 0.25) < 1e-12);
  REQUIRE(std::abs(out.retained_rate_fraction -
                   exhaustive_retained(m, plan, grid, true)) < 1e-12);
}

TEST_CASE("one failure on a 4x4 quad layout rebalances for free") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 16, 4);  // four quads
  PanelGrid grid = grid_for_plan(plan, 4);
  REQUIRE(grid.rows == 4);
  grid.at(0, 0) = CellState::kFailed;
  const ReconfigOutcome out = replan(m, plan, grid);
  REQUIRE(out.plan.tensor_width == 4);
  REQUIRE(std::abs(out.retained_rate_fraction -
                   exhaustive_retained(m, plan, grid, true)) < 1e-12);
  REQUIRE(out.retained_rate_fraction == 1.0);
}

TEST_CASE("spare pool soaks up failures unless disabled") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 4, 4);
  PanelGrid grid = grid_for_plan(plan, 4);  // one live quad, one spare quad
  REQUIRE(grid.rows == 2);
  REQUIRE(grid.cols == 4);
  REQUIRE(grid.at(0, 2) == CellState::kSpare);
  grid.at(0, 0) = CellState::kFailed;

  const ReconfigOutcome with_spares = replan(m, plan, grid, true);
  REQUIRE(with_spares.retained_rate_fraction == 1.0);

  const ReconfigOutcome without = replan(m, plan, grid, false);
  REQUIRE(std::abs(without.retained_rate_fraction - 0.25) < 1e-12);
}

TEST_CASE("greedy replan matches the exhaustive oracle on small grids") {
  long long checked = 0;
  for (int rows = 1; rows <= 4; ++rows) {
    for (int cols = 1; cols <= 4; ++cols) {
      const int n = rows * cols;
      const std::uint64_t masks = 1ULL << n;

      // Pipeline-only plans across the whole grid.
      for (const int blocks : {n + 3, 2 * n}) {
        const LlmModelSpec m = tiny_model(blocks);
        const ParallelPlan plan = make_plan(m, n, 1);
        const PanelGrid base = grid_for_plan(plan, cols);
        REQUIRE(base.rows == rows);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
          PanelGrid g = base;
          apply_mask(g, mask);
          const ReconfigOutcome out = replan(m, plan, g);
          const double oracle = exhaustive_retained(m, plan, g, true);
          if (std::abs(out.retained_rate_fraction - oracle) > 1e-9) {
            CAPTURE(rows, cols, blocks, mask);
            REQUIRE(std::abs(out.retained_rate_fraction - oracle) <= 1e-9);
          }
          if (out.retained_rate_fraction < 0.9 * oracle - 1e-12) {
            CAPTURE(rows, cols, blocks, mask);
            REQUIRE(out.retained_rate_fraction >= 0.9 * oracle);
          }
          if (!out.total_loss &&
              out.plan.panels > usable_count(g, true)) {
            CAPTURE(rows, cols, blocks, mask);
            REQUIRE(out.plan.panels <= usable_count(g, true));
          }
          ++checked;
        }
      }

      // Quad plans where the grid tiles into 2x2.
      if (rows % 2 != 0 || cols % 2 != 0) continue;
      const int quads = n / 4;
      for (const int blocks : {2 * quads + 1, 3 * quads}) {
        const LlmModelSpec m = tiny_model(blocks);
        const ParallelPlan plan = make_plan(m, n, 4);
        const PanelGrid base = grid_for_plan(plan, cols);
        REQUIRE(base.rows == rows);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
          PanelGrid g = base;
          apply_mask(g, mask);
          const ReconfigOutcome out = replan(m, plan, g);
          const double oracle = exhaustive_retained(m, plan, g, true);
          if (std::abs(out.retained_rate_fraction - oracle) > 1e-9) {
            CAPTURE(rows, cols, blocks, mask);
            REQUIRE(std::abs(out.retained_rate_fraction - oracle) <= 1e-9);
          }
          if (out.retained_rate_fraction < 0.9 * oracle - 1e-12) {
            CAPTURE(rows, cols, blocks, mask);
            REQUIRE(out.retained_rate_fraction >= 0.9 * oracle);
          }
          ++checked;
        }
      }
    }
  }
  REQUIRE(checked == 282036);
}

TEST_CASE("adding a failure never raises retained throughput") {
  // Exhaustive over a 3x3 pipeline layout.
  const LlmModelSpec m = tiny_model(12);
  const ParallelPlan plan = make_plan(m, 9, 1);
  const PanelGrid base = grid_for_plan(plan, 3);
  std::vector<double> retained(1 << 9, 0.0);
  for (std::uint64_t mask = 0; mask < (1 << 9); ++mask) {
    PanelGrid g = base;
    apply_mask(g, mask);
    retained[mask] = replan(m, plan, g).retained_rate_fraction;
  }
  for (std::uint64_t mask = 0; mask < (1 << 9); ++mask) {
    for (int bit = 0; bit < 9; ++bit) {
      if (mask >> bit & 1) continue;
      REQUIRE(retained[mask | (1ULL << bit)] <= retained[mask] + 1e-12);
    }
  }

  // Sampled on a 4x4 quad layout.
  const LlmModelSpec mq = tiny_model(9);
  const ParallelPlan pq = make_plan(mq, 16, 4);
  const PanelGrid bq = grid_for_plan(pq, 4);
  std::mt19937_64 g(601);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t mask = g() & 0xFFFF;
    int bit = testutil::uniform_int(g, 0, 15);
    if (mask >> bit & 1) bit = (bit + 1) % 16;
    if (mask >> bit & 1) continue;
    PanelGrid a = bq;
    apply_mask(a, mask);
    PanelGrid b = bq;
    apply_mask(b, mask | (1ULL << bit));
    REQUIRE(replan(mq, pq, b).retained_rate_fraction <=
            replan(mq, pq, a).retained_rate_fraction + 1e-12);
  }
}

TEST_CASE("resilience curve endpoints and determinism") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 8, 4);
  FailureProcess proc;
  proc.annual_failure_probability = 0.3;
  proc.horizon_years = 2.0;
  proc.seed = 99;

  const ResilienceCurve a = resilience_curve(m, plan, proc, 40, 5, 4);
  const ResilienceCurve b = resilience_curve(m, plan, proc, 40, 5, 4);
  REQUIRE(a.points.size() == 5);
  REQUIRE(a.samples.size() == 5 * 40);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    REQUIRE(a.points[i].mean_retained == b.points[i].mean_retained);
    REQUIRE(a.points[i].mean_failed_fraction ==
            b.points[i].mean_failed_fraction);
  }

  REQUIRE(a.points.front().elapsed_years == 0.0);
  REQUIRE(a.points.front().failure_probability == 0.0);
  REQUIRE(a.points.front().mean_retained == 1.0);
  REQUIRE(a.points.front().mean_failed_fraction == 0.0);
  REQUIRE(a.points.back().elapsed_years == 2.0);

  for (std::size_t i = 1; i < a.points.size(); ++i) {
    REQUIRE(a.points[i].mean_retained <= a.points[i - 1].mean_retained);
    REQUIRE(a.points[i].mean_failed_fraction >=
            a.points[i - 1].mean_failed_fraction);
  }
}

TEST_CASE("a certain failure rate kills the whole curve") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 8, 4);
  FailureProcess proc;
  proc.annual_failure_probability = 1.0;
  proc.horizon_years = 1.0;
  proc.seed = 7;
  const ResilienceCurve c = resilience_curve(m, plan, proc, 10, 3, 4);
  REQUIRE(c.points.front().mean_retained == 1.0);
  REQUIRE(c.points.back().mean_retained == 0.0);
  REQUIRE(c.points.back().mean_failed_fraction == 1.0);
}

TEST_CASE("resilience samples carry reconstructible failure sets") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 8, 4);
  FailureProcess proc;
  proc.annual_failure_probability = 0.3;
  proc.horizon_years = 2.0;
  proc.seed = 99;
  const ResilienceCurve c = resilience_curve(m, plan, proc, 50, 5, 4);
  const PanelGrid base = grid_for_plan(plan, 4);

  std::vector<double> sums(c.points.size(), 0.0);
  std::vector<int> last_failed(50, 0);
  for (const ResilienceSample& s : c.samples) {
    REQUIRE(std::popcount(s.failure_mask) == s.failed_count);
    PanelGrid g = base;
    apply_mask(g, s.failure_mask);
    const double oracle = exhaustive_retained(m, plan, g, true);
    REQUIRE(std::abs(s.retained_fraction - oracle) < 1e-9);
    REQUIRE(std::abs(s.retained_fraction -
                     replan(m, plan, g).retained_rate_fraction) < 1e-12);
    sums[s.point_index] += s.retained_fraction;
    // Failure sets are nested along the sweep.
    if (s.point_index > 0) {
      REQUIRE(s.failed_count >= last_failed[s.replica]);
    }
    last_failed[s.replica] = s.failed_count;
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    REQUIRE(std::abs(c.points[i].mean_retained - sums[i] / 50.0) < 1e-12);
  }
}

TEST_CASE("fault process and curve inputs are validated") {
  const LlmModelSpec m = tiny_model(8);
  const ParallelPlan plan = make_plan(m, 8, 4);
  FailureProcess proc;
  proc.annual_failure_probability = 1.2;
  REQUIRE_THROWS_AS(proc.validate(), std::invalid_argument);
  proc.annual_failure_probability = 0.5;
  proc.horizon_years = 0.0;
  REQUIRE_THROWS_AS(proc.validate(), std::invalid_argument);

  proc = FailureProcess{};
  proc.annual_failure_probability = 0.1;
  REQUIRE_THROWS_AS(resilience_curve(m, plan, proc, 0, 5, 4),
                    std::domain_error);
  REQUIRE_THROWS_AS(resilience_curve(m, plan, proc, 10, 1, 4),
                    std::domain_error);
}
