// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fermicorr {

/// Malformed FCIDUMP input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Arguments outside the domain of an operation (bad sector, bad orbital...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense object would exceed a configured size limit.
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, std::size_t requested, std::size_t limit)
      : std::length_error(what + " (requested " + std::to_string(requested) +
                          ", limit " + std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}
  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

/// Non-finite input or a result violating a numerical invariant.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermicorr
