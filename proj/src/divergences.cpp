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

#include "csense/divergences.hpp"

#include <cmath>
#include <vector>

namespace csense {

namespace {

void require_shared_support(const Pmf& p0, const Pmf& p1, const char* op) {
  if (!p0.same_support(p1)) {
    throw ModelError(std::string(op) + ": support mismatch");
  }
}

// renyi_sum evaluated from precomputed logs of the on-support entries; keeps
// the golden-section inner loop out of pow().
double renyi_from_logs(const std::vector<double>& log_p0,
                       const std::vector<double>& log_p1, double s) {
  double sum = 0.0;
  for (std::size_t t = 0; t < log_p0.size(); ++t) {
    sum += std::exp(s * log_p0[t] + (1.0 - s) * log_p1[t]);
  }
  return sum;
}

}  // namespace

double kl(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) throw ModelError("kl: alphabet size mismatch");
  double sum = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] == 0.0) continue;
    if (q[y] == 0.0) {
      throw ModelError("kl: p is not absolutely continuous w.r.t. q");
    }
    sum += p[y] * std::log(p[y] / q[y]);
  }
  return sum < 0.0 ? 0.0 : sum;  // clamp rounding noise on p == q
}

double renyi_sum(const Pmf& p0, const Pmf& p1, double s) {
  require_shared_support(p0, p1, "renyi_sum");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ModelError("renyi_sum: s must lie in [0, 1]");
  }
  double sum = 0.0;
  for (std::size_t y = 0; y < p0.size(); ++y) {
    if (p0[y] == 0.0) continue;
    sum += std::exp(s * std::log(p0[y]) + (1.0 - s) * std::log(p1[y]));
  }
  return sum;
}

ChernoffResult chernoff_information(const Pmf& p0, const Pmf& p1) {
  require_shared_support(p0, p1, "chernoff_information");
  if (p0 == p1) return {0.0, 0.5};

  std::vector<double> log_p0;
  std::vector<double> log_p1;
  for (std::size_t y = 0; y < p0.size(); ++y) {
    if (p0[y] == 0.0) continue;
    log_p0.push_back(std::log(p0[y]));
    log_p1.push_back(std::log(p1[y]));
  }
  const auto f = [&](double s) { return -std::log(renyi_from_logs(log_p0, log_p1, s)); };

  // Golden-section bracket on [0, 1] down to width 1e-10.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-10) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  const double s_star = 0.5 * (lo + hi);
  double value = f(s_star);
  if (value < 0.0) value = 0.0;
  return {value, s_star};
}

Pmf tilted_pmf(const Pmf& p0, const Pmf& p1, double s) {
  require_shared_support(p0, p1, "tilted_pmf");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ModelError("tilted_pmf: s must lie in [0, 1]");
  }
  std::vector<double> out(p0.size(), 0.0);
  double norm = 0.0;
  for (std::size_t y = 0; y < p0.size(); ++y) {
    if (p0[y] == 0.0) continue;
    out[y] = std::exp(s * std::log(p0[y]) + (1.0 - s) * std::log(p1[y]));
    norm += out[y];
  }
  for (double& v : out) v /= norm;
  return Pmf(std::move(out));
}

}  // namespace csense
