// Copyright 2026 The ecdn Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ecdn {

// A value violates a structural invariant (dimension, Hermiticity, trace, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The problem is well formed but has no admissible solution, e.g. an energy
// budget at or below the ground energy.
class InfeasibleError : public std::domain_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ecdn
