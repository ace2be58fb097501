#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace iscr {

// A fixed-point solve ran out of its iteration budget.
struct solver_error : std::runtime_error {
  solver_error(const std::string& what, double last_iterate_k, int iterations)
      : std::runtime_error(what),
        last_iterate_k(last_iterate_k),
        iterations(iterations) {}

  double last_iterate_k;
  int iterations;
};

// No feasible partition or placement satisfies the request.
struct plan_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scenario file was rejected. `kind` is machine-checkable:
// "parse", "unknown-key", "unit-mismatch", or "invariant".
struct scenario_error : std::runtime_error {
  scenario_error(const std::string& what, std::string file, int line,
                 std::string kind)
      : std::runtime_error(what),
        file(std::move(file)),
        line(line),
        kind(std::move(kind)) {}

  std::string file;
  int line;
  std::string kind;
};

}  // namespace iscr
