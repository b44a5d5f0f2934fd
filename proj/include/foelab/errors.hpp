// Copyright 2026 The foelab Authors.
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

#ifndef FOELAB_ERRORS_HPP_
#define FOELAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace foelab {

// Bad argument to a pure function (clock value 0, weight out of range, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The expert pool cannot serve the request, e.g. the active set is empty.
class PoolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An environment broke its side of the protocol: loss out of [0, B_t],
// a second reveal in one step, a reveal before losses were assigned.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration failed validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace foelab

#endif  // FOELAB_ERRORS_HPP_
