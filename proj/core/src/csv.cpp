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
#include "qcl3/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "qcl3/version.hpp"

namespace qcl3 {

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : os_(path, std::ios::binary) {
  if (!os_) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
  os_ << "# qcl3 " << kVersion << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os_ << ',';
    os_ << columns[i];
  }
  os_ << '\n';
}

void CsvWriter::raw(const std::string& s) {
  if (row_open_) os_ << ',';
  os_ << s;
  row_open_ = true;
}

void CsvWriter::end_row() {
  os_ << '\n';
  row_open_ = false;
}

}  // namespace qcl3
