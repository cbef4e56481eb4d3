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

#ifndef CSENSE_GAMES_HPP_
#define CSENSE_GAMES_HPP_

#include <string>
#include <vector>

#include "csense/model.hpp"

namespace csense {

/// Row player mixes over controls, column player picks the worst column.
class PayoffMatrix {
 public:
  PayoffMatrix(int rows, int cols);
  PayoffMatrix(std::vector<std::vector<double>> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int u, int j) const { return entries_[u][j]; }
  double& at(int u, int j) { return entries_[u][j]; }
  const std::vector<double>& row(int u) const { return entries_[u]; }

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<double>> entries_;
};

/// A pmf over controls (the randomized row strategy q(u)).
struct MixedStrategy {
  std::vector<double> weights;
};

struct MaximinSolution {
  double value = 0.0;       // min_j q_star . A_j, the value q_star attains
  MixedStrategy q_star;
  double duality_gap = 0.0; // certified upper bound minus value
};

/// Solves max over the simplex q of min_j sum_u q(u) A[u][j] exactly via the
/// standard linear-programming reduction of a zero-sum game (dense tableau
/// simplex, Bland's rule). The returned value is what q_star attains; the
/// certified duality gap is reported alongside.
MaximinSolution solve_maximin(const PayoffMatrix& a);

/// Exact maximum of min_j q . A_j over the simplex lattice with the given
/// spacing. The search prunes with admissible bounds only, so the result
/// equals full enumeration: at most the true maximin value, and within
/// L * resolution of it (L = max row spread).
double brute_force_maximin(const PayoffMatrix& a, double resolution);

}  // namespace csense

#endif  // CSENSE_GAMES_HPP_
