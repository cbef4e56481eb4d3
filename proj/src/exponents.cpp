// Copyright 2026 The csense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csense/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "csense/divergences.hpp"

namespace csense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BinaryExponent binary_exponent(const SensingModel& model) {
  if (model.num_hypotheses() != 2) {
    throw ModelError("binary_exponent: requires exactly 2 hypotheses");
  }
  BinaryExponent best{-kInf, 0};
  for (int u = 0; u < model.num_controls(); ++u) {
    const double c = chernoff_information(model.pmf(0, u), model.pmf(1, u)).value;
    if (c > best.value) best = {c, u};
  }
  return best;
}

namespace {

// Per hypothesis pair, the on-support log-probability columns of every
// control; lets the inner 1-D search evaluate renyi sums without re-walking
// pmfs.
struct PairTables {
  int i, j;
  // [control][support symbol] -> (log p_i, log p_j)
  std::vector<std::vector<std::pair<double, double>>> logs;
};

double pair_objective(const PairTables& pair, const std::vector<double>& q,
                      double s) {
  double total = 0.0;
  for (std::size_t u = 0; u < pair.logs.size(); ++u) {
    if (q[u] == 0.0) continue;
    double renyi = 0.0;
    for (const auto& [lp_i, lp_j] : pair.logs[u]) {
      renyi += std::exp(s * lp_i + (1.0 - s) * lp_j);
    }
    total += q[u] * std::log(renyi);
  }
  return -total;
}

// max over s in [0, 1]; concave in s (each -log renyi term is concave).
double pair_exponent(const PairTables& pair, const std::vector<double>& q) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = pair_objective(pair, q, c);
  double fd = pair_objective(pair, q, d);
  while (hi - lo > 1e-9) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = pair_objective(pair, q, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = pair_objective(pair, q, d);
    }
  }
  const double v = pair_objective(pair, q, 0.5 * (lo + hi));
  return v < 0.0 ? 0.0 : v;
}

std::vector<PairTables> build_pair_tables(const SensingModel& model) {
  std::vector<PairTables> pairs;
  for (int i = 0; i < model.num_hypotheses(); ++i) {
    for (int j = i + 1; j < model.num_hypotheses(); ++j) {
      PairTables pt;
      pt.i = i;
      pt.j = j;
      pt.logs.resize(model.num_controls());
      for (int u = 0; u < model.num_controls(); ++u) {
        for (int y = 0; y < model.num_observations(); ++y) {
          const double pi = model.prob(i, u, y);
          if (pi == 0.0) continue;
          pt.logs[u].push_back({std::log(pi), std::log(model.prob(j, u, y))});
        }
      }
      pairs.push_back(std::move(pt));
    }
  }
  return pairs;
}

}  // namespace

OpenLoopExponent open_loop_exponent(const SensingModel& model,
                                    const OpenLoopSettings& settings) {
  const int k = model.num_controls();
  const std::vector<PairTables> pairs = build_pair_tables(model);
  const auto objective = [&](const std::vector<double>& q) {
    double worst = kInf;
    for (const PairTables& pair : pairs) {
      worst = std::min(worst, pair_exponent(pair, q));
      if (worst == 0.0) break;
    }
    return worst;
  };

  std::vector<double> best_q(k, 1.0 / k);
  double best_v = objective(best_q);

  // Simplex lattice seeding. Coarsen if the control set would blow up the
  // point count; the refinement stage still explores locally.
  int lattice_n = std::max(
      1, static_cast<int>(std::llround(1.0 / settings.lattice_resolution)));
  while (lattice_n > 4 && std::pow(lattice_n + 1.0, k - 1) > 3e5) {
    lattice_n /= 2;
  }
  std::vector<int> comp(k, 0);
  std::vector<double> q(k, 0.0);
  const auto scan = [&](auto&& self, int depth, int left) -> void {
    if (depth == k - 1) {
      comp[depth] = left;
      for (int u = 0; u < k; ++u) q[u] = static_cast<double>(comp[u]) / lattice_n;
      const double v = objective(q);
      if (v > best_v) {
        best_v = v;
        best_q = q;
      }
      return;
    }
    for (int t = 0; t <= left; ++t) {
      comp[depth] = t;
      self(self, depth + 1, left - t);
    }
  };
  if (k > 1) scan(scan, 0, lattice_n);

  // Pairwise mass-transfer refinement with shrinking step.
  for (double step = 1.0 / lattice_n; step >= settings.refine_step;
       step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int from = 0; from < k; ++from) {
        if (best_q[from] <= 0.0) continue;
        for (int to = 0; to < k; ++to) {
          if (to == from) continue;
          const double delta = std::min(step, best_q[from]);
          std::vector<double> trial = best_q;
          trial[from] -= delta;
          trial[to] += delta;
          const double v = objective(trial);
          if (v > best_v) {
            best_v = v;
            best_q = std::move(trial);
            improved = true;
          }
        }
      }
    }
  }

  OpenLoopExponent result;
  result.value = best_v;
  result.q_star.weights = std::move(best_q);
  return result;
}

double causal_upper_bound(const SensingModel& model) {
  if (model.num_hypotheses() <= 2) {
    throw ModelError("causal_upper_bound: requires more than 2 hypotheses");
  }
  double worst_pair = kInf;
  for (int i = 0; i < model.num_hypotheses(); ++i) {
    for (int j = 0; j < model.num_hypotheses(); ++j) {
      if (i == j) continue;
      double best_u = 0.0;
      for (int u = 0; u < model.num_controls(); ++u) {
        best_u = std::max(
            best_u, chernoff_information(model.pmf(i, u), model.pmf(j, u)).value);
      }
      worst_pair = std::min(worst_pair, best_u);
    }
  }
  return worst_pair;
}

namespace {

// ----- certified sup of the causal-bound integrand over nu ------------------
//
// g(nu) = min_u max_i S(u, i, nu) with
//   S = sum_y p_i^u(y) exp(eta (nu.p^u(y) - p_i^u(y)) / (1 - nu(i)))
//     = sum_y p_i^u(y) exp(eta (sum_{j != i} t_j p_j^u(y) - p_i^u(y))),
// where t_j = nu(j) / (1 - nu(i)) are the renormalized off-i weights,
// summing to 1. Per symbol y the exponent is maximized over the interval
// image of t intersected with the sum-1 slice by a greedy budget fill
// (coefficients p_j^u(y) >= 0), which upper-bounds each sheet on the box.
// The slice constraint matters: without it, boxes hugging a point mass keep
// a constant overshoot and the bracket never closes. The branch-and-bound
// over nu-boxes then brackets sup_nu g with a certificate.

struct NuBox {
  std::vector<double> lo, hi;  // free coordinates 0 .. M-2
  double upper = kInf;
};

struct SupBracket {
  double lower = -kInf;  // g at some feasible nu
  double upper = kInf;   // certified bound on sup_nu g
};

class InnerSup {
 public:
  InnerSup(const SensingModel& model, double eta)
      : model_(model), eta_(eta), m_(model.num_hypotheses()) {}

  // Brackets sup_nu g(nu). Stops when the bracket is relatively tight, the
  // box budget runs out, or the lower bound crosses `give_up_above` (the
  // caller already holds a better eta).
  SupBracket solve(long long box_budget, double give_up_above,
                   double rel_tol) {
    SupBracket bracket;
    NuBox root;
    root.lo.assign(m_ - 1, 0.0);
    root.hi.assign(m_ - 1, 1.0);
    root.upper = box_upper(root);
    bracket.lower = eval_center(root);
    auto cmp = [](const NuBox& a, const NuBox& b) { return a.upper < b.upper; };
    std::priority_queue<NuBox, std::vector<NuBox>, decltype(cmp)> heap(cmp);
    heap.push(std::move(root));
    long long pops = 0;
    while (!heap.empty()) {
      const NuBox box = heap.top();
      bracket.upper = box.upper;
      if (box.upper <= bracket.lower * (1.0 + rel_tol) + 1e-12) break;
      if (++pops > box_budget) break;
      if (bracket.lower >= give_up_above) break;
      heap.pop();
      int axis = 0;
      for (int d = 1; d < m_ - 1; ++d) {
        if (box.hi[d] - box.lo[d] > box.hi[axis] - box.lo[axis]) axis = d;
      }
      const double mid = 0.5 * (box.lo[axis] + box.hi[axis]);
      for (int side = 0; side < 2; ++side) {
        NuBox child = box;
        (side == 0 ? child.hi : child.lo)[axis] = mid;
        double lsum = 0.0;
        for (double v : child.lo) lsum += v;
        if (lsum > 1.0) continue;  // no simplex point in this box
        child.upper = box_upper(child);
        bracket.lower = std::max(bracket.lower, eval_center(child));
        if (child.upper > bracket.lower) heap.push(std::move(child));
      }
      if (heap.empty()) bracket.upper = bracket.lower;
    }
    if (!heap.empty()) bracket.upper = heap.top().upper;
    bracket.upper = std::max(bracket.upper, bracket.lower);
    return bracket;
  }

 private:
  // Interval of the last (implicit) coordinate, clipped to the simplex.
  std::pair<double, double> last_range(const NuBox& box) const {
    double lsum = 0.0, hsum = 0.0;
    for (int d = 0; d < m_ - 1; ++d) {
      lsum += box.lo[d];
      hsum += box.hi[d];
    }
    return {std::max(0.0, 1.0 - hsum), std::max(0.0, 1.0 - lsum)};
  }

  double sheet_value(int u, int i, const std::vector<double>& t) const {
    double worst = 0.0;
    for (int y = 0; y < model_.num_observations(); ++y) {
      const double pi = model_.prob(i, u, y);
      double mix = 0.0;
      for (int j = 0; j < m_; ++j) {
        if (j != i) mix += t[j] * model_.prob(j, u, y);
      }
      worst += pi * std::exp(eta_ * (mix - pi));
    }
    return worst;
  }

  // Greedy max of sum_j t_j c_j over {tlo <= t <= thi, sum_j t_j = 1} with
  // c_j >= 0: start at tlo and pour the remaining budget into the largest
  // coefficients first.
  static double budget_max(const std::vector<double>& tlo,
                           const std::vector<double>& thi,
                           const std::vector<double>& c, int skip) {
    const int n = static_cast<int>(c.size());
    double budget = 1.0;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == skip) continue;
      budget -= tlo[j];
      total += tlo[j] * c[j];
    }
    std::vector<char> used(n, 0);
    while (budget > 0.0) {
      int pick = -1;
      for (int j = 0; j < n; ++j) {
        if (j == skip || used[j] || thi[j] <= tlo[j]) continue;
        if (pick < 0 || c[j] > c[pick]) pick = j;
      }
      if (pick < 0) break;
      used[pick] = 1;
      const double add = std::min(budget, thi[pick] - tlo[pick]);
      total += add * c[pick];
      budget -= add;
    }
    return total;
  }

  double box_upper(const NuBox& box) const {
    const auto [llo, lhi] = last_range(box);
    const int num_y = model_.num_observations();
    std::vector<double> tlo(m_), thi(m_), coeff(m_);
    double value = kInf;
    for (int u = 0; u < model_.num_controls(); ++u) {
      double sheet_max = -kInf;
      for (int i = 0; i < m_; ++i) {
        const double lo_i = (i == m_ - 1) ? llo : box.lo[i];
        const double hi_i = (i == m_ - 1) ? lhi : box.hi[i];
        const double den_lo = std::max(0.0, 1.0 - hi_i);
        const double den_hi = 1.0 - lo_i;
        if (den_hi <= 0.0) continue;  // only the point mass on i lives here
        double sum_lo = 0.0, sum_hi = 0.0;
        for (int j = 0; j < m_; ++j) {
          if (j == i) continue;
          const double lo_j = (j == m_ - 1) ? llo : box.lo[j];
          const double hi_j = (j == m_ - 1) ? lhi : box.hi[j];
          tlo[j] = std::clamp(lo_j / den_hi, 0.0, 1.0);
          thi[j] = den_lo > 0.0 ? std::clamp(hi_j / den_lo, 0.0, 1.0) : 1.0;
          sum_lo += tlo[j];
          sum_hi += thi[j];
        }
        if (sum_lo > 1.0 || sum_hi < 1.0) continue;  // interval image misses the slice
        double bound = 0.0;
        for (int y = 0; y < num_y; ++y) {
          const double pi = model_.prob(i, u, y);
          for (int j = 0; j < m_; ++j) {
            if (j != i) coeff[j] = model_.prob(j, u, y);
          }
          bound += pi * std::exp(eta_ * (budget_max(tlo, thi, coeff, i) - pi));
        }
        sheet_max = std::max(sheet_max, bound);
      }
      value = std::min(value, sheet_max);
    }
    return value;
  }

  // Exact g at the box's center projected onto the simplex; -inf if the
  // projection lands on a point mass (outside the sup's domain).
  double eval_center(const NuBox& box) const {
    std::vector<double> nu(m_, 0.0);
    double sum = 0.0;
    for (int d = 0; d < m_ - 1; ++d) {
      nu[d] = 0.5 * (box.lo[d] + box.hi[d]);
      sum += nu[d];
    }
    if (sum > 1.0) {
      for (int d = 0; d < m_ - 1; ++d) nu[d] /= sum;
      sum = 1.0;
    }
    nu[m_ - 1] = 1.0 - sum;
    for (int i = 0; i < m_; ++i) {
      if (nu[i] >= 1.0) return -kInf;
    }
    std::vector<double> t(m_, 0.0);
    double value = kInf;
    for (int u = 0; u < model_.num_controls(); ++u) {
      double sheet_max = -kInf;
      for (int i = 0; i < m_; ++i) {
        const double den = 1.0 - nu[i];
        for (int j = 0; j < m_; ++j) {
          if (j != i) t[j] = nu[j] / den;
        }
        sheet_max = std::max(sheet_max, sheet_value(u, i, t));
      }
      value = std::min(value, sheet_max);
    }
    return value;
  }

  const SensingModel& model_;
  double eta_;
  int m_;
};

}  // namespace

double causal_lower_bound(const SensingModel& model,
                          const CausalLowerSettings& settings) {
  if (model.num_hypotheses() <= 2) {
    throw ModelError("causal_lower_bound: requires more than 2 hypotheses");
  }
  std::vector<double> etas = settings.eta_grid;
  if (etas.empty()) {
    for (int i = 1; i <= 100; ++i) etas.push_back(0.05 * i);
  }
  const double res = settings.nu_resolution > 0.0 ? settings.nu_resolution : 0.02;
  // The effort knob: finer nu_resolution widens the search budget, clamped so
  // a default run on a larger hypothesis set stays interactive. Looser
  // brackets only make the reported bound more conservative, never wrong.
  const long long coarse_budget = std::clamp<long long>(
      static_cast<long long>(std::pow(1.0 / res, model.num_hypotheses() - 1)),
      5000, 50000);

  // Coarse pass ranks the grid; a dominated eta aborts as soon as its inner
  // sup provably exceeds the best exp(-bound) seen so far.
  double best = 0.0;
  std::vector<std::pair<double, double>> ranked;  // (safe value, eta)
  for (double eta : etas) {
    if (!(eta > 0.0)) continue;
    InnerSup inner(model, eta);
    const SupBracket bracket =
        inner.solve(coarse_budget, std::exp(-best), 1e-3);
    if (bracket.upper > 0.0) {
      const double safe = -std::log(bracket.upper);
      best = std::max(best, safe);
      ranked.push_back({safe, eta});
    }
  }

  // Refine the leading candidates with the full budget; every reported value
  // stays a certified -log of an upper bracket, so the max is safe for any
  // budget.
  std::sort(ranked.rbegin(), ranked.rend());
  const long long fine_budget = 40 * coarse_budget;
  for (std::size_t r = 0; r < ranked.size() && r < 3; ++r) {
    InnerSup inner(model, ranked[r].second);
    const SupBracket bracket = inner.solve(fine_budget, std::exp(-best), 3e-5);
    if (bracket.upper > 0.0) {
      best = std::max(best, -std::log(bracket.upper));
    }
  }
  return best;
}

SequentialDenominator sequential_denominator(const SensingModel& model,
                                             int hypothesis) {
  const int m = model.num_hypotheses();
  if (hypothesis < 0 || hypothesis >= m) {
    throw ModelError("sequential_denominator: invalid hypothesis index");
  }
  PayoffMatrix payoff(model.num_controls(), m - 1);
  for (int u = 0; u < model.num_controls(); ++u) {
    int col = 0;
    for (int j = 0; j < m; ++j) {
      if (j == hypothesis) continue;
      payoff.at(u, col++) = kl(model.pmf(hypothesis, u), model.pmf(j, u));
    }
  }
  const MaximinSolution sol = solve_maximin(payoff);
  return {sol.value, sol.q_star};
}

ExampleClosedForms example_closed_forms(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ModelError("example_closed_forms: eps must lie in (0, 1/2)");
  }
  ExampleClosedForms out;
  const double chernoff = -std::log(2.0 * std::sqrt(eps * (1.0 - eps)));
  out.beta_ol = (2.0 / 3.0) * chernoff;
  out.causal_lb = -std::log(std::cbrt(eps) * std::cbrt((1.0 - eps) * (1.0 - eps)) +
                            std::cbrt(eps * eps) * std::cbrt(1.0 - eps));
  out.causal_ub = chernoff;
  out.seq_denominator_quoted = chernoff;
  out.seq_denominator_derived = (1.0 - 2.0 * eps) * std::log((1.0 - eps) / eps);
  return out;
}

ExponentReport compute_exponent_report(const SensingModel& model,
                                       const OpenLoopSettings& ol,
                                       const CausalLowerSettings& cl) {
  ExponentReport report;
  if (model.num_hypotheses() == 2) {
    report.binary = binary_exponent(model);
  }
  report.open_loop = open_loop_exponent(model, ol);
  if (model.num_hypotheses() > 2) {
    report.causal_lower = causal_lower_bound(model, cl);
    report.causal_upper = causal_upper_bound(model);
  }
  for (int i = 0; i < model.num_hypotheses(); ++i) {
    report.sequential_denominators.push_back(sequential_denominator(model, i));
  }
  return report;
}

}  // namespace csense
