// Copyright 2026 The acstab Authors.
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

#include "acstab_cli/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acstab/field.hpp"

namespace acstab::cli {
namespace {

const std::vector<double> kRatios = {0.001, 0.01, 0.1, 0.25, 0.5};

const IntervalReference kCn{"table1", SchemeKind::cn(), kRatios,
                            {{31.639, 48.124, 60.363, 70.53},
                             {10.05, 15.256, 19.123, 22.335},
                             {3.317, 4.942, 6.152, 7.159},
                             {2.236, 3.243, 3.996, 4.625},
                             {1.732, 2.421, 2.941, 3.377}},
                            4};

const IntervalReference kModcn{"table2", SchemeKind::modcn(), kRatios,
                               {{44.766, 75.889, 98.476, 116.931},
                                {14.283, 24.165, 31.334, 37.192},
                                {4.899, 8.147, 10.497, 12.418},
                                {3.464, 5.641, 7.212, 8.497},
                                {2.828, 4.503, 5.707, 6.694}},
                               4};

const IntervalReference kDirk{"table3", SchemeKind::dirk(), kRatios,
                              {{63.277, 159.524, 280.251, 421.311, 580.137, 754.936, 944.371, 1147.391},
                               {20.1, 50.612, 88.857, 133.527, 183.81, 239.141, 299.098, 363.349},
                               {6.633, 16.517, 28.821, 43.14, 59.221, 76.889, 96.012, 116.485},
                               {4.472, 10.958, 18.95, 28.2, 38.552, 49.898, 62.156, 75.262},
                               {3.464, 8.306, 14.188, 20.942, 28.462, 36.675, 45.524, 54.966}},
                              4};

}  // namespace

const IntervalReference& interval_reference(const std::string& id) {
  for (const IntervalReference* t : {&kCn, &kModcn, &kDirk}) {
    if (t->id == id) return *t;
  }
  throw ConfigError("no interval table '" + id + "'");
}

const std::vector<ThresholdReference>& threshold_reference() {
  static const std::vector<ThresholdReference> rows = {
      {"be", "eps^2", 1.0},
      {"cn", "2*eps^2", 2.0},
      {"modcn", "inf", std::numeric_limits<double>::infinity()},
      {"dirk2", "eps^2/max(a_ii)", 4.0},
  };
  return rows;
}

bool matches_printed(double computed, double printed) {
  if (std::isinf(printed)) return computed == printed;
  return std::abs(computed - printed) <= 1e-3 * std::max(1.0, std::abs(printed));
}

}  // namespace acstab::cli
