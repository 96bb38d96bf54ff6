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

#ifndef PURESTEADY_CSV_HPP
#define PURESTEADY_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

namespace puresteady {

/// 17 significant digits, independent of the global locale.
std::string format_number(double value);

/// Comma-separated rows with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);

  std::size_t columns() const { return columns_; }
  /// Throws std::invalid_argument when the field count differs from the header.
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace puresteady

#endif  // PURESTEADY_CSV_HPP
