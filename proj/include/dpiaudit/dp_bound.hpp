//
// Copyright 2026 The dpi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPIAUDIT_DP_BOUND_HPP_
#define DPIAUDIT_DP_BOUND_HPP_

#include "dpiaudit/attacks.hpp"

namespace dpiaudit {

// Operating point of a decision rule. Both rates live strictly inside
// (0, 1); finite-sample rates of exactly 0 or 1 are clipped into
// (delta, 1 - delta) with delta = 1/(2 * class size) and flagged.
struct OperatingPoint {
  double alpha = 0.5;  // true positive rate
  double beta = 0.5;   // see BetaConvention
  bool alpha_clipped = false;
  bool beta_clipped = false;
};

// The rate reported as beta. FalseNegativeRate is the literal reading
// (beta = 1 - alpha, measured on members); FalsePositiveRate is the
// standard audit convention (measured on nonmembers). Audits report the
// bound under both.
enum class BetaConvention { FalseNegativeRate, FalsePositiveRate };

// Practical lower bound on the differential-privacy parameter:
// log max{alpha/(1-beta), beta/(1-alpha)}, natural log. May be negative;
// reports clamp the displayed value at 0.
double epsilon_lower_bound(const OperatingPoint& op);

// Derives the operating point of the rule "predict member iff
// score > threshold" from labeled attack scores.
OperatingPoint operating_point_from_attack(
    const AttackScores& scores, double threshold,
    BetaConvention convention = BetaConvention::FalseNegativeRate);

}  // namespace dpiaudit

#endif  // DPIAUDIT_DP_BOUND_HPP_
