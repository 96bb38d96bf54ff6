// Copyright 2026 The puresteady Authors
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

#ifndef PURESTEADY_COMMANDS_HPP
#define PURESTEADY_COMMANDS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "puresteady/problem.hpp"

namespace puresteady {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitNoCertificate = 4,
};

struct GlobalOptions {
  std::optional<double> tol;  // overrides the relative certification tolerance
  std::optional<std::filesystem::path> output_dir;
  bool quiet = false;

  Tolerances tolerances() const;
  std::filesystem::path directory() const { return output_dir.value_or("."); }
};

/// Each command prints a JSON report to `out` (unless quiet) and returns an exit code.
int cmd_steady(const Problem& problem, const GlobalOptions& opts, std::ostream& out);
int cmd_certify(const Problem& problem, const GlobalOptions& opts, std::ostream& out);
int cmd_simulate(const Problem& problem, const GlobalOptions& opts, std::ostream& out,
                 unsigned threads = 1);
int cmd_dfs(const Problem& problem, Index d, bool strict, const GlobalOptions& opts,
            std::ostream& out);

/// `kind` is single-atom, two-qubit or two-qubit-original. Writes the problem
/// file to `file` (default <output-dir>/family.json) and certifies it.
int cmd_family(const std::string& kind, const std::map<std::string, double>& params,
               const std::optional<std::string>& sign, double gamma,
               const std::optional<std::filesystem::path>& file, const GlobalOptions& opts,
               std::ostream& out);

/// Full command line entry point; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace puresteady

#endif  // PURESTEADY_COMMANDS_HPP
