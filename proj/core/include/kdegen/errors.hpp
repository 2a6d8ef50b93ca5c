// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace kdegen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input lies outside the punctured polydisk or the truncated domain is empty.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Frame quantity requested in a chart where a_0^2 is not the largest a_k^2.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same closed form disagree.
/// Signals an implementation bug, never bad input.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

/// A proven analytic bound failed at a sampled point.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SamplerError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace kdegen
