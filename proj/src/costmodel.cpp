#include "kpsldg/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

namespace kpsldg {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("cost model: overflow");
  return r;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("cost model: overflow");
  return r;
}

void check(const CostModelInput& c) {
  if (c.n_x < 0 || c.N_x < 0 || c.n_y < 0)
    throw std::invalid_argument("cost model: sizes must be non-negative");
}

std::int64_t total(const std::vector<CostItem>& items) {
  std::int64_t s = 0;
  for (const auto& it : items) s = add(s, it.accesses);
  return s;
}

}  // namespace

std::vector<CostItem> strang_cost_items(const CostModelInput& c) {
  check(c);
  const std::int64_t eq = mul(c.n_x, c.n_y);
  const std::int64_t dg = mul(c.N_x, c.n_y);
  return {{"FFT", mul(4, eq)},
          {"exp(tau A)", mul(3, eq)},
          {"interpolation", mul(2, dg)},
          {"dG", dg}};
}

std::int64_t strang_cost(const CostModelInput& c) { return total(strang_cost_items(c)); }

std::vector<CostItem> exp2_cost_items(const CostModelInput& c) {
  check(c);
  const std::int64_t n = mul(c.n_x, c.n_y);
  static const std::pair<const char*, int> stages[] = {
      {"u^", 0},      {"u_x", 4},        {"B = u_x u", 3}, {"B^", 2},
      {"U^", 5},      {"U", 2},          {"U_x", 4},       {"F", 4},
      {"F^", 2},      {"u^{n+1}^", 4},   {"u^{n+1}", 2}};
  std::vector<CostItem> items;
  for (const auto& [name, k] : stages) items.push_back({name, mul(k, n)});
  return items;
}

std::int64_t exp2_cost(const CostModelInput& c) { return total(exp2_cost_items(c)); }

std::int64_t step_cost(const RunRecord& r) {
  const CostModelInput c{r.n_x, r.N_x, r.n_y};
  if (r.scheme == "strang") return strang_cost(c);
  if (r.scheme == "exp2") return exp2_cost(c);
  throw std::invalid_argument("step_cost: unknown scheme '" + r.scheme + "'");
}

bool is_balanced(const RunRecord& r) {
  const double te = r.time_error, se = r.space_error;
  if (!(te > 0.0) || !(se > 0.0)) return true;
  return std::max(te, se) <= 2.0 * std::min(te, se);
}

namespace {

CostAccuracyPoint make_point(const RunRecord& r, double tol) {
  CostAccuracyPoint p;
  p.scheme = r.scheme;
  p.tolerance = tol;
  p.error = r.error;
  p.tau = r.tau;
  p.n_x = r.n_x;
  p.N_x = r.N_x;
  p.n_y = r.n_y;
  const long steps = r.n_steps > 0 ? r.n_steps : std::lround(r.t_final / r.tau);
  p.cost = static_cast<double>(step_cost(r)) * static_cast<double>(steps);
  p.balanced = is_balanced(r);
  return p;
}

}  // namespace

std::vector<CostAccuracyPoint> cost_accuracy_curve(const std::vector<RunRecord>& records,
                                                   const std::vector<double>& tolerances) {
  std::vector<CostAccuracyPoint> out;
  std::map<std::string, std::vector<const RunRecord*>> by_scheme;
  for (const auto& r : records)
    if (r.ok && std::isfinite(r.error)) by_scheme[r.scheme].push_back(&r);

  if (tolerances.empty()) {
    for (const auto& [scheme, rs] : by_scheme)
      for (const RunRecord* r : rs) out.push_back(make_point(*r, std::nan("")));
  } else {
    std::vector<double> tols = tolerances;
    std::sort(tols.begin(), tols.end());  // tightest first
    for (const auto& [scheme, rs] : by_scheme) {
      std::optional<CostAccuracyPoint> tighter;
      std::vector<CostAccuracyPoint> pts;
      for (double tol : tols) {
        std::optional<CostAccuracyPoint> best, best_any;
        for (const RunRecord* r : rs) {
          if (!(r->error <= tol)) continue;
          auto p = make_point(*r, tol);
          if (!best_any || p.cost < best_any->cost) best_any = p;
          if (p.balanced && (!best || p.cost < best->cost)) best = p;
        }
        if (!best) best = best_any;
        if (!best) {
          CostAccuracyPoint w;
          w.scheme = scheme;
          w.tolerance = tol;
          w.error = std::nan("");
          w.cost = std::nan("");
          w.warning = true;
          w.note = "no run meets the tolerance";
          pts.push_back(w);
          continue;
        }
        // A run meeting a tighter tolerance also meets this one.
        if (tighter && tighter->cost < best->cost) {
          best = *tighter;
          best->tolerance = tol;
        }
        pts.push_back(*best);
        tighter = best;
      }
      out.insert(out.end(), pts.begin(), pts.end());
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    if (a.warning != b.warning) return !a.warning;
    return a.cost < b.cost;
  });
  return out;
}

}  // namespace kpsldg
