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

#ifndef CSENSE_DIVERGENCES_HPP_
#define CSENSE_DIVERGENCES_HPP_

#include "csense/model.hpp"

namespace csense {

// All information quantities are in nats.

/// Kullback-Leibler divergence sum_y p(y) log(p(y)/q(y)), with 0 log(0/.) = 0.
/// Requires p absolutely continuous w.r.t. q; throws ModelError otherwise.
double kl(const Pmf& p, const Pmf& q);

/// sum_y p0(y)^s p1(y)^(1-s) for s in [0, 1]; off-support symbols contribute
/// zero. Requires shared support.
double renyi_sum(const Pmf& p0, const Pmf& p1, double s);

struct ChernoffResult {
  double value = 0.0;   // max_s -log renyi_sum(p0, p1, s), nonnegative
  double s_star = 0.5;  // maximizing s (0.5 by convention when p0 == p1)
};

/// Maximizes -log renyi_sum over s in [0, 1] by golden-section search; the
/// objective is concave in s so the bracket converges to the global maximum.
ChernoffResult chernoff_information(const Pmf& p0, const Pmf& p1);

/// The normalized geometric interpolation
/// b_s(y) = p0(y)^s p1(y)^(1-s) / renyi_sum(p0, p1, s).
Pmf tilted_pmf(const Pmf& p0, const Pmf& p1, double s);

}  // namespace csense

#endif  // CSENSE_DIVERGENCES_HPP_
