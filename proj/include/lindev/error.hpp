/* Copyright (C) 2026 The lindev Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace lindev {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// All weights vanish, or a kernel sums to zero.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The pure-tail closed form was requested outside its regime.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iteration, bracketing or quadrature did not reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Too few Monte Carlo samples for the requested levels.
class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

}  // namespace lindev
