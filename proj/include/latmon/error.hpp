#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace latmon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class DuplicateLabel : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

/// Relation handed to FinitePoset is not a partial order.
class InvalidRelation : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  NotALattice(std::string what, std::optional<std::pair<std::size_t, std::size_t>> pair)
      : Error(std::move(what)), pair_(pair) {}
  /// The pair lacking a meet or join, if the failure is pairwise.
  const std::optional<std::pair<std::size_t, std::size_t>>& pair() const noexcept { return pair_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> pair_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::size_t count) : Error(std::move(what)), count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

class SourceTargetMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an object outside its domain (e.g. the ideal
/// monad on a non-distributive lattice).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class IdentityViolated : public Error {
 public:
  IdentityViolated(std::string identity, std::string witness)
      : Error("identity violated: " + identity + " at " + witness),
        identity_(std::move(identity)),
        witness_(std::move(witness)) {}
  const std::string& identity() const noexcept { return identity_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string identity_;
  std::string witness_;
};

class NotFactorable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// Why a construction was rejected: the stage, the first failing law, and the
/// first witness in canonical order.
struct Rejection {
  std::string stage;
  std::string law;
  std::string witness;

  std::string describe() const { return stage + ": " + law + (witness.empty() ? "" : " at " + witness); }
};

/// Either a value or the rejection explaining its absence.
template <class T>
class Outcome {
 public:
  Outcome(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Outcome(Rejection r) : rejection_(std::move(r)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const noexcept { return value_.has_value(); }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    if (!value_) throw Error("outcome holds a rejection: " + rejection_.describe());
    return *value_;
  }
  T&& value() && {
    if (!value_) throw Error("outcome holds a rejection: " + rejection_.describe());
    return std::move(*value_);
  }
  const T* operator->() const { return &value(); }
  const T& operator*() const& { return value(); }

  const Rejection& rejection() const noexcept { return rejection_; }

 private:
  std::optional<T> value_;
  Rejection rejection_;
};

}  // namespace latmon
