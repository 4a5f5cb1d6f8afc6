#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace veesys {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a zero-based character offset.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownSymbol, DivisionByZero };

  ParseError(Kind kind, std::size_t position, const std::string& what)
      : Error(what + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Division by zero, evaluation at a pole, and similar arithmetic failures.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t rank, const std::string& what)
      : Error(what + " (rank " + std::to_string(rank) + ")"), rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// A point lies on the kernel of one of the system's covectors.
class HyperplaneError : public Error {
 public:
  HyperplaneError(std::size_t index, const std::string& label)
      : Error("point lies on the hyperplane of covector " + std::to_string(index) +
              (label.empty() ? std::string() : " (" + label + ")")),
        index_(index),
        label_(label) {}
  std::size_t index() const noexcept { return index_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::size_t index_;
  std::string label_;
};

/// Invalid arguments or inconsistent input data.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace veesys
