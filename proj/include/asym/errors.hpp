#pragma once

#include <stdexcept>
#include <string>

namespace asym {

/// Base class for every error the library raises. `exit_code()` is the CLI contract:
/// 2 = invalid input, 3 = numerical failure, 4 = physics precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Profile file is unreadable or violates the JSON schema.
class ProfileFormatError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class IntegrationFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The stabilized reflection matrix diverged, usually at a resonance pole of the
/// truncated problem. Perturbing the velocity slightly is the usual workaround.
class RiccatiBlowup : public NumericalFailure {
 public:
  RiccatiBlowup(double eta, double norm);
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

class SingularSystem : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class PhysicsPrecondition : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// mu = -1: q vanishes and the effective kernel is singular.
class ChannelThreshold : public PhysicsPrecondition {
 public:
  using PhysicsPrecondition::PhysicsPrecondition;
};

/// The device selection table forbids the requested device for the ansatz symmetry class.
class DeviceNotAllowed : public PhysicsPrecondition {
 public:
  using PhysicsPrecondition::PhysicsPrecondition;
};

}  // namespace asym
