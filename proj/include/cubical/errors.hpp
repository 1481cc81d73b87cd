#pragma once

#include <stdexcept>
#include <string>

namespace cubical {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CUBICAL_DEFINE_ERROR(Name)             \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

CUBICAL_DEFINE_ERROR(DimensionMismatch);
CUBICAL_DEFINE_ERROR(IndexOutOfRange);
CUBICAL_DEFINE_ERROR(IllFormed);
CUBICAL_DEFINE_ERROR(NotGlobular);
CUBICAL_DEFINE_ERROR(NotComposable);
CUBICAL_DEFINE_ERROR(DomainViolation);
CUBICAL_DEFINE_ERROR(FaceMismatch);
CUBICAL_DEFINE_ERROR(EnvIncomplete);
CUBICAL_DEFINE_ERROR(DimensionTooLow);
CUBICAL_DEFINE_ERROR(NameClash);
CUBICAL_DEFINE_ERROR(NotParallel);
CUBICAL_DEFINE_ERROR(UnknownGenerator);

#undef CUBICAL_DEFINE_ERROR

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("ParseError at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cubical
