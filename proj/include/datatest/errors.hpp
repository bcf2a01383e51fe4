// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_ERRORS_HPP
#define DATATEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace datatest {

// Base class for all engine errors. The CLI maps any subclass to exit code 2.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside its mathematical domain (df <= 0, p outside (0,1), ...).
class parameter_error : public error {
 public:
  explicit parameter_error(const std::string& what) : error(what) {}
};

// Data unusable for the requested computation (degenerate groups, zero
// marginals, group too small).
class data_error : public error {
 public:
  explicit data_error(const std::string& what) : error(what) {}
};

// Malformed input file or trace line.
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what) : error(what) {}
};

// A workflow rule was violated (two-tailed chi-square, mutating a frozen
// design, vocabulary leakage between paradigms).
class contract_error : public error {
 public:
  explicit contract_error(const std::string& what) : error(what) {}
};

// An operation was called on an input that fails its stated precondition
// (e.g. a repair routine applied to the wrong classification).
class precondition_error : public error {
 public:
  explicit precondition_error(const std::string& what) : error(what) {}
};

}  // namespace datatest

#endif  // DATATEST_ERRORS_HPP
