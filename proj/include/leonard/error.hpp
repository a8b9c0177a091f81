#ifndef LEONARD_ERROR_HPP
#define LEONARD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leonard {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// A field description that does not define a field (composite modulus,
/// square discriminant, unsupported tower).
class InvalidField : public Error {
 public:
  using Error::Error;
};

/// q (or a square root) lives outside every field this library can build.
class ExtensionRequired : public Error {
 public:
  using Error::Error;
};

class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The two partial-sum ratios defining vartheta_i disagree.
class VarthetaMismatch : public Error {
 public:
  using Error::Error;
};

class PA5Violation : public Error {
 public:
  using Error::Error;
};

class DiameterTooSmall : public Error {
 public:
  using Error::Error;
};

/// The closed form of the detected type does not reproduce the array.
class FitInconsistent : public Error {
 public:
  using Error::Error;
};

/// Type data violating a non-degeneracy constraint.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// The field characteristic is excluded for the requested type.
class InadmissibleField : public Error {
 public:
  using Error::Error;
};

class NotMultiplicityFree : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// Text that does not follow the canonical encoding. Line and column are
/// 1-based; zero means "not known".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), message_(what), line_(line), column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace leonard

#endif  // LEONARD_ERROR_HPP
