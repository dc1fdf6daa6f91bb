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
#ifndef QCL3_ERRORS_HPP
#define QCL3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcl3 {

// Exceptions thrown across the library. All carry a human-readable message
// and derive from std::runtime_error so callers may catch coarsely.

struct NotHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonRealObjective : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ToleranceAmbiguous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DepthOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAnharmonic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HorizonTooShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcl3

#endif  // QCL3_ERRORS_HPP
