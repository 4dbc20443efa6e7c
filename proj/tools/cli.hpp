/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The emq command line, as a library so it can be driven from tests.
//
//   emq eval FILE [--format csv|json] [--measures ae,kld] [--epsilon E |
//                 --sample-size N] [--agg mean|median|both]
//   emq axioms --measure M [--property P] [--budget N] [--seed S]
//              [--tolerance T] [--classes K] [--json]
//   emq table1 [--budget N] [--seed S] [--json]
//   emq counterexamples
//   emq plotgrid --measure M [--resolution N] [--epsilon E] [--out FILE]
//
// Exit status is 0 on success and 2 on any usage or validation error.

#ifndef EMQ_TOOLS_CLI_HPP_
#define EMQ_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "emq/axioms.hpp"
#include "emq/measures.hpp"

namespace emq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// kDefaultSeed unless the EMQ_SEED environment variable holds an integer.
std::uint64_t DefaultSeed();

struct GridPoint {
  double x;  // true prevalence of the first class
  double y;  // predicted prevalence of the first class
  double z;
};

// resolution x resolution binary surface z = D((x, 1-x), (y, 1-y)). With
// epsilon > 0 the axes include 0 and 1; otherwise they stop short of them.
// Throws kInvalidArgument when resolution < 2.
std::vector<GridPoint> PlotGrid(Measure m, int resolution, double epsilon);

// The four hand-built counterexample tables, 4 decimals.
std::string RenderCounterexamples();

std::string RenderMatrix(const PropertyMatrix& matrix);

}  // namespace emq::cli

#endif  // EMQ_TOOLS_CLI_HPP_
