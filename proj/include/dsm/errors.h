// Copyright 2026 The dsm-lab Authors
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

#ifndef DSM_ERRORS_H
#define DSM_ERRORS_H

#include <stdexcept>
#include <string>

namespace dsm {

/// Raised when an input carries no usable signal, e.g. a reconstruction whose
/// raw trace is zero or a spectrum with no positive eigenvalue.
class DegenerateInputError : public std::runtime_error {
   public:
    explicit DegenerateInputError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Raised when a confidence threshold cannot reach the requested mass.
class InfeasibleError : public std::runtime_error {
   public:
    explicit InfeasibleError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace dsm

#endif
