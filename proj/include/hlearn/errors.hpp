#pragma once

#include <stdexcept>
#include <string>

namespace hlearn {

// Bad input: malformed files, infeasible instances, bad arguments. Maps to exit status 1.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeneratorFailure : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A theoretical property that must hold was observed to fail. Maps to exit status 2.
class TheoryViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateViolation : public TheoryViolation {
 public:
  using TheoryViolation::TheoryViolation;
};

class LedgerViolation : public TheoryViolation {
 public:
  using TheoryViolation::TheoryViolation;
};

class ConstructionViolation : public TheoryViolation {
 public:
  using TheoryViolation::TheoryViolation;
};

class CensusViolation : public TheoryViolation {
 public:
  using TheoryViolation::TheoryViolation;
};

}  // namespace hlearn
