#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpsldg/run_record.hpp"

namespace kpsldg {

/// Sizes entering the memory-access model: equidistant x points, dG x degrees
/// of freedom and y points.
struct CostModelInput {
  std::int64_t n_x = 0;
  std::int64_t N_x = 0;
  std::int64_t n_y = 0;
};

struct CostItem {
  std::string name;
  std::int64_t accesses = 0;
};

/// (7 n_x + 3 N_x) n_y memory accesses per Strang step. Negative sizes throw
/// std::invalid_argument, overflow throws std::range_error.
std::int64_t strang_cost(const CostModelInput& c);
/// FFT 4 n_x n_y, e^{tau A} 3 n_x n_y, interpolation 2 N_x n_y, dG N_x n_y.
std::vector<CostItem> strang_cost_items(const CostModelInput& c);

/// 32 n_x n_y memory accesses per exp2 step.
std::int64_t exp2_cost(const CostModelInput& c);
/// The eleven stages of one exp2 step, {0,4,3,2,5,2,4,4,2,4,2} n_x n_y.
std::vector<CostItem> exp2_cost_items(const CostModelInput& c);

/// Per-step cost of the scheme named in a record ("strang" or "exp2").
std::int64_t step_cost(const RunRecord& r);

struct CostAccuracyPoint {
  std::string scheme;
  double tolerance = 0.0;  // NaN for raw points
  double error = 0.0;
  double tau = 0.0;
  int n_x = 0;
  int N_x = 0;
  int n_y = 0;
  double cost = 0.0;  // per-step cost times step count
  bool balanced = true;
  bool warning = false;  // no record met `tolerance`
  std::string note;
};

/// Errors are balanced when neither the time nor the space estimate exceeds
/// twice the other. Records without estimates (non-positive) count as balanced.
bool is_balanced(const RunRecord& r);

/// Cost-accuracy points. With an empty tolerance list every successful record
/// becomes a point. Otherwise, for every scheme and tolerance, the cheapest
/// balanced record meeting the tolerance is picked (the cheapest unbalanced one
/// if there is no balanced record); if nothing meets a tolerance a warning
/// point is emitted instead. A looser tolerance never costs more than a tighter
/// one. Points are sorted by scheme, then cost.
std::vector<CostAccuracyPoint> cost_accuracy_curve(const std::vector<RunRecord>& records,
                                                   const std::vector<double>& tolerances = {});

}  // namespace kpsldg
