// Copyright 2026 The Kinkscope Authors
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

#ifndef KINKSCOPE_ERRORS_H_
#define KINKSCOPE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace kinkscope {

// Violated precondition or type invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity has no closed form for the given parameter model
// (e.g. a per-neuron hit probability for the spherical model).
class UnsupportedModel : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Parameters lie outside the range where a closed form is known to hold
// (spherical predictions with R > 1).
class OutOfTheoryRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The numeric slope-change oracle cannot separate two breakpoints at the
// requested grid resolution.
class InsufficientResolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two summaries describing different experiments were combined.
class ConfigMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kinkscope

#endif  // KINKSCOPE_ERRORS_H_
