#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownAtom : public Error {
 public:
  UnknownAtom(std::string name, std::size_t offset);

  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Raised when an information set has several co-minimal stereotypes.
class NoUniqueMinimum : public Error {
 public:
  explicit NoUniqueMinimum(std::vector<std::string> stereotypes);

  const std::vector<std::string>& stereotypes() const noexcept { return stereotypes_; }

 private:
  std::vector<std::string> stereotypes_;
};

class EmptyInfoSet : public Error {
 public:
  EmptyInfoSet() : Error("best stereotype requested for an empty information set") {}
};

/// Raised when some nonempty F has an empty F ∩ S^F.
class InconsistentJump : public Error {
 public:
  using Error::Error;
};

/// Raised when an exhaustive sweep would exceed the configured budget.
class ScaleLimit : public Error {
 public:
  using Error::Error;
};

enum class ViolationKind {
  FormatError,
  InvalidName,
  DuplicateName,
  DuplicateValuation,
  UnknownAtom,
  UnknownWorld,
  UnknownStereotype,
  SyntaxError,
  NoWorlds,
  TooManyWorlds,
  NoStereotypes,
  EmptyStereotype,
  DistanceSpecError,
};

const char* to_string(ViolationKind kind);

/// One broken invariant of a knowledge base document, with a JSON-pointer location.
struct Violation {
  ViolationKind kind;
  std::string location;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Raised when a knowledge base (or its world space) fails validation.
class KbError : public Error {
 public:
  explicit KbError(Violation violation);

  const Violation& violation() const noexcept { return violation_; }
  ViolationKind kind() const noexcept { return violation_.kind; }

 private:
  Violation violation_;
};

}  // namespace stereo
