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

#include "csense/model.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include <json.hpp>

namespace csense {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ModelError("pmf: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ModelError("pmf: negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ModelError("pmf: entries sum to " + std::to_string(sum) +
                     ", outside tolerance of 1");
  }
}

bool Pmf::same_support(const Pmf& other) const {
  if (size() != other.size()) return false;
  for (std::size_t y = 0; y < size(); ++y) {
    if ((probs_[y] == 0.0) != (other.probs_[y] == 0.0)) return false;
  }
  return true;
}

bool Pmf::full_support() const {
  for (double p : probs_) {
    if (p == 0.0) return false;
  }
  return true;
}

SensingModel::SensingModel(std::vector<std::string> controls,
                           std::vector<std::string> observations,
                           std::vector<std::vector<Pmf>> cells)
    : controls_(std::move(controls)),
      observations_(std::move(observations)),
      cells_(std::move(cells)) {
  const int num_hyp = static_cast<int>(cells_.size());
  if (num_hyp < 2) throw ModelError("model: need at least 2 hypotheses");
  if (controls_.empty()) throw ModelError("model: need at least 1 control");
  if (observations_.size() < 2) {
    throw ModelError("model: need at least 2 observation symbols");
  }
  if (std::set<std::string>(controls_.begin(), controls_.end()).size() !=
      controls_.size()) {
    throw ModelError("model: duplicate control labels");
  }
  if (std::set<std::string>(observations_.begin(), observations_.end())
          .size() != observations_.size()) {
    throw ModelError("model: duplicate observation labels");
  }
  for (const auto& row : cells_) {
    if (static_cast<int>(row.size()) != num_controls()) {
      throw ModelError("model: ragged pmf table");
    }
    for (const Pmf& cell : row) {
      if (static_cast<int>(cell.size()) != num_observations()) {
        throw ModelError("model: pmf length does not match alphabet");
      }
    }
  }
  for (int u = 0; u < num_controls(); ++u) {
    for (int i = 1; i < num_hyp; ++i) {
      if (!cells_[i][u].same_support(cells_[0][u])) {
        throw ModelError("model: support mismatch under control '" +
                         controls_[u] + "' between hypotheses 0 and " +
                         std::to_string(i));
      }
    }
  }
  log_rows_.resize(controls_.size());
  for (int u = 0; u < num_controls(); ++u) {
    log_rows_[u].resize(static_cast<std::size_t>(num_observations()) * num_hyp);
    for (int y = 0; y < num_observations(); ++y) {
      for (int i = 0; i < num_hyp; ++i) {
        const double p = cells_[i][u][y];
        log_rows_[u][static_cast<std::size_t>(y) * num_hyp + i] =
            p > 0.0 ? std::log(p) : kNegInf;
      }
    }
  }
}

bool operator==(const SensingModel& a, const SensingModel& b) {
  return a.controls_ == b.controls_ && a.observations_ == b.observations_ &&
         a.cells_ == b.cells_;
}

PositivityReport check_positivity(const SensingModel& model) {
  PositivityReport report;
  for (int u = 0; u < model.num_controls(); ++u) {
    for (int i = 0; i < model.num_hypotheses(); ++i) {
      for (int j = 0; j < model.num_hypotheses(); ++j) {
        if (i == j) continue;
        // D(p_i^u || p_j^u) = 0 iff the pmfs agree entrywise.
        if (model.pmf(i, u) == model.pmf(j, u)) {
          report.failures.push_back({u, i, j});
        }
      }
    }
  }
  report.holds_overall = report.failures.empty();
  return report;
}

SensingModel load_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model document: ") + e.what());
  }
  try {
    const int num_hyp = doc.at("hypotheses").get<int>();
    auto controls = doc.at("controls").get<std::vector<std::string>>();
    auto observations = doc.at("observations").get<std::vector<std::string>>();
    const auto& table = doc.at("pmf");
    if (num_hyp < 2) throw ModelError("model: need at least 2 hypotheses");
    std::vector<std::vector<Pmf>> cells;
    cells.reserve(num_hyp);
    for (int i = 0; i < num_hyp; ++i) {
      const auto& row = table.at(std::to_string(i));
      std::vector<Pmf> cell_row;
      cell_row.reserve(controls.size());
      for (const std::string& u : controls) {
        auto probs = row.at(u).get<std::vector<double>>();
        try {
          cell_row.emplace_back(std::move(probs));
        } catch (const ModelError& e) {
          throw ModelError("hypothesis " + std::to_string(i) + ", control '" +
                           u + "': " + e.what());
        }
      }
      cells.push_back(std::move(cell_row));
    }
    return SensingModel(std::move(controls), std::move(observations),
                        std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model document: ") + e.what());
  }
}

std::string serialize_model(const SensingModel& model) {
  nlohmann::json doc;
  doc["hypotheses"] = model.num_hypotheses();
  doc["controls"] = model.controls();
  doc["observations"] = model.observations();
  nlohmann::json table = nlohmann::json::object();
  for (int i = 0; i < model.num_hypotheses(); ++i) {
    nlohmann::json row = nlohmann::json::object();
    for (int u = 0; u < model.num_controls(); ++u) {
      row[model.control_label(u)] = model.pmf(i, u).probs();
    }
    table[std::to_string(i)] = std::move(row);
  }
  doc["pmf"] = std::move(table);
  return doc.dump(2) + "\n";
}

SensingModel table1_model(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ModelError("table1_model: eps must lie in (0, 1/2)");
  }
  const Pmf diag({1.0 - eps, eps});       // p: P(1) = eps
  const Pmf off_diag({eps, 1.0 - eps});   // p-bar: P(1) = 1 - eps
  std::vector<std::vector<Pmf>> cells;
  for (int i = 0; i < 3; ++i) {
    std::vector<Pmf> row;
    for (int u = 0; u < 3; ++u) row.push_back(i == u ? diag : off_diag);
    cells.push_back(std::move(row));
  }
  return SensingModel({"a", "b", "c"}, {"0", "1"}, std::move(cells));
}

}  // namespace csense
