#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "iscr/errors.hpp"

namespace iscr {

struct LlmModelSpec {
  std::string name;
  long long context_length = 1;
  int num_blocks = 1;           // attention blocks
  double weights_total_bytes = 0.0;
  double activation_size_bytes = 0.0;  // inter-stage payload per token
  double kv_per_block_per_session_bytes = 0.0;
  double base_block_time_s = 1e-6;  // single-panel time per block pass

  void validate() const {
    if (context_length < 1) {
      throw std::invalid_argument("context length must be at least 1");
    }
    if (num_blocks < 1) {
      throw std::invalid_argument("model needs at least one block");
    }
    if (weights_total_bytes < 0.0 || activation_size_bytes < 0.0 ||
        kv_per_block_per_session_bytes < 0.0) {
      throw std::invalid_argument("model sizes must be non-negative");
    }
    if (!(base_block_time_s > 0.0)) {
      throw std::invalid_argument("block time must be positive");
    }
  }
};

struct PanelHardware {
  double compute_power_w = 1000.0;
  double peak_compute_tflops = 1000.0;
  double memory_capacity_bytes = 64.0e9;
  double link_bandwidth_bytes_s = 100.0e9;  // duplex, per adjacent panel

  void validate() const {
    if (!(compute_power_w > 0.0) || !(peak_compute_tflops > 0.0) ||
        !(memory_capacity_bytes > 0.0) || !(link_bandwidth_bytes_s > 0.0)) {
      throw std::invalid_argument("hardware figures must be positive");
    }
  }
};

// Pipeline x tensor decomposition of one inference deployment.
struct ParallelPlan {
  int panels = 0;
  int pipeline_stages = 0;
  int tensor_width = 0;
  int blocks_per_stage = 0;
  int sessions_in_flight = 0;
  bool balanced = true;  // false when stages carry unequal block counts

  void validate() const {
    if (panels < 1 || pipeline_stages < 1 || tensor_width < 1 ||
        blocks_per_stage < 1 || sessions_in_flight < 1) {
      throw std::invalid_argument("plan fields must be positive");
    }
    if (pipeline_stages * tensor_width != panels) {
      throw std::invalid_argument("stages x tensor width must cover the "
                                  "panels");
    }
  }
};

// Sessions default to double-buffering the pipeline: S = 2P.
inline ParallelPlan make_plan(const LlmModelSpec& model, int n_panels,
                              int tensor_width,
                              std::optional<int> sessions = std::nullopt) {
  model.validate();
  if (n_panels < 1) {
    throw plan_error("need at least one panel");
  }
  if (tensor_width < 1) {
    throw plan_error("tensor width must be positive");
  }
  if (n_panels % tensor_width != 0) {
    throw plan_error("tensor width must divide the panel count");
  }
  const int stages = n_panels / tensor_width;
  if (stages > model.num_blocks) {
    throw plan_error("more pipeline stages than model blocks");
  }
  ParallelPlan plan;
  plan.panels = n_panels;
  plan.pipeline_stages = stages;
  plan.tensor_width = tensor_width;
  plan.blocks_per_stage =
      (model.num_blocks + stages - 1) / stages;
  plan.balanced = model.num_blocks % stages == 0;
  plan.sessions_in_flight = sessions.value_or(2 * stages);
  if (plan.sessions_in_flight < 1) {
    throw plan_error("need at least one session in flight");
  }
  return plan;
}

// Steady-state pipeline: each stage runs its blocks with linear tensor
// speedup, hand-off overlaps compute.
inline double stage_time(const LlmModelSpec& model, const ParallelPlan& plan) {
  model.validate();
  plan.validate();
  return plan.blocks_per_stage * model.base_block_time_s / plan.tensor_width;
}

inline double rate_per_session(const LlmModelSpec& model,
                               const ParallelPlan& plan) {
  return 1.0 / (plan.sessions_in_flight * stage_time(model, plan));
}

inline double aggregate_rate(const LlmModelSpec& model,
                             const ParallelPlan& plan) {
  return 1.0 / stage_time(model, plan);
}

inline double memory_per_gpu(const LlmModelSpec& model,
                             const ParallelPlan& plan) {
  model.validate();
  plan.validate();
  return model.weights_total_bytes / plan.panels +
         plan.sessions_in_flight * plan.blocks_per_stage *
             model.kv_per_block_per_session_bytes / plan.tensor_width;
}

// Pipeline hand-off plus tensor all-reduce traffic, folded into one
// linear-in-T factor on the aggregate token stream.
inline double bandwidth_per_gpu(const LlmModelSpec& model,
                                const ParallelPlan& plan) {
  return aggregate_rate(model, plan) * model.activation_size_bytes *
         plan.tensor_width;
}

struct PlanMetrics {
  double mem_per_gpu_bytes = 0.0;
  double bw_per_gpu_bytes_s = 0.0;
  double rate_per_session_tok_s = 0.0;
  double aggregate_rate_tok_s = 0.0;
  double stage_time_s = 0.0;
};

inline PlanMetrics plan_metrics(const LlmModelSpec& model,
                                const ParallelPlan& plan) {
  PlanMetrics m;
  m.stage_time_s = stage_time(model, plan);
  m.rate_per_session_tok_s = rate_per_session(model, plan);
  m.aggregate_rate_tok_s = aggregate_rate(model, plan);
  m.mem_per_gpu_bytes = memory_per_gpu(model, plan);
  m.bw_per_gpu_bytes_s = bandwidth_per_gpu(model, plan);
  return m;
}

struct SubarrayPacking {
  int count = 0;
  long long concurrent_sessions = 0;
};

inline SubarrayPacking subarray_packing(int total_panels, int subarray_size,
                                        int per_subarray_sessions) {
  if (total_panels < 0) {
    throw std::domain_error("total panels must be non-negative");
  }
  if (subarray_size <= 0) {
    throw std::domain_error("subarray size must be positive");
  }
  if (per_subarray_sessions < 0) {
    throw std::domain_error("sessions per subarray must be non-negative");
  }
  SubarrayPacking p;
  p.count = total_panels / subarray_size;
  p.concurrent_sessions =
      static_cast<long long>(p.count) * per_subarray_sessions;
  return p;
}

struct FeasibilityReport {
  bool bandwidth_ok = false;
  bool memory_ok = false;
  bool stages_ok = false;
  // Warnings, not gates.
  bool quad_ok = false;
  bool balanced = false;
  bool feasible = false;
  double mem_per_gpu_bytes = 0.0;
  double bw_per_gpu_bytes_s = 0.0;
};

// grid_cols is the physical array width in panels; quads are axis-aligned
// 2x2, so tensor width 4 needs an even column count.
inline FeasibilityReport feasibility_check(const LlmModelSpec& model,
                                           const ParallelPlan& plan,
                                           const PanelHardware& hardware,
                                           int grid_cols = 12) {
  hardware.validate();
  if (grid_cols < 1) {
    throw std::invalid_argument("grid needs at least one column");
  }
  FeasibilityReport r;
  r.mem_per_gpu_bytes = memory_per_gpu(model, plan);
  r.bw_per_gpu_bytes_s = bandwidth_per_gpu(model, plan);
  r.bandwidth_ok = r.bw_per_gpu_bytes_s <= hardware.link_bandwidth_bytes_s;
  r.memory_ok = r.mem_per_gpu_bytes <= hardware.memory_capacity_bytes;
  r.stages_ok = plan.pipeline_stages <= model.num_blocks;
  r.quad_ok = plan.tensor_width == 1 ||
              (plan.tensor_width == 4 && grid_cols % 2 == 0);
  r.balanced = plan.balanced;
  r.feasible = r.bandwidth_ok && r.memory_ok && r.stages_ok;
  return r;
}

// Fitted deployment points; calibration data committed once.
inline LlmModelSpec light_model_spec() {
  LlmModelSpec m;
  m.name = "light-96";
  m.context_length = 500000;
  m.num_blocks = 96;
  m.weights_total_bytes = 743.2e9;
  m.activation_size_bytes = 25600.0;
  m.kv_per_block_per_session_bytes = 0.0;
  m.base_block_time_s = 7.75e-6;
  return m;
}

inline LlmModelSpec heavy_model_spec() {
  LlmModelSpec m;
  m.name = "heavy-128";
  m.context_length = 500000;
  m.num_blocks = 128;
  m.weights_total_bytes = 3615.0e9;
  m.activation_size_bytes = 25600.0;
  m.kv_per_block_per_session_bytes = 0.0;
  m.base_block_time_s = 28.3e-6;
  return m;
}

}  // namespace iscr
