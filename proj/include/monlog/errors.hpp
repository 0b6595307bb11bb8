#ifndef MONLOG_ERRORS_HPP
#define MONLOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace monlog {

// Error categories surfaced by the library. Each public operation documents
// which of these it can raise; the CLI maps ParseError to exit code 2 and
// everything else here to exit code 3.
enum class ErrorCode {
  ParseError,
  ArityViolation,
  UnknownSymbol,
  ForeignSymbol,
  OpenFormula,
  NotSimple,
  NotNormalized,
  NotClosed,
  UnboundSetVariable,
  SecondOrderQuantifier,
  UnboundTrack,
  ArityMismatch,
  UndefinedImage,
  PreconditionViolation,
  InvalidPresentation,
  InternalLimit,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(ErrorCode::ParseError, message + " at line " + std::to_string(line) +
                                         ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace monlog

#endif  // MONLOG_ERRORS_HPP
