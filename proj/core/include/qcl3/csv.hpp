/* Copyright 2026 The qcl3 Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef QCL3_CSV_HPP
#define QCL3_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace qcl3 {

// Floats are printed with 17 significant digits so round-trips are exact and
// repeated runs with the same seed produce byte-identical files.
std::string csv_double(double x);

// Comma-separated, '.' decimal point, LF line endings, mandatory header row,
// preceded by a single version comment line.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& columns);

  void field(double x) { raw(csv_double(x)); }
  void field(int x) { raw(std::to_string(x)); }
  void field(long x) { raw(std::to_string(x)); }
  void field(std::size_t x) { raw(std::to_string(x)); }
  void field(bool x) { raw(x ? "1" : "0"); }
  void field(const char* s) { raw(s); }
  void field(const std::string& s) { raw(s); }

  template <typename... Args>
  void row(const Args&... args) {
    (field(args), ...);
    end_row();
  }

  void end_row();

 private:
  void raw(const std::string& s);

  std::ofstream os_;
  bool row_open_ = false;
};

}  // namespace qcl3

#endif  // QCL3_CSV_HPP
