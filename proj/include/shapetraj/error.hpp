#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapetraj {

/// Coarse failure class, used by the CLI to pick an exit code:
/// Validation -> bad input data or parameters, Numeric -> the math broke.
enum class ErrorKind { Validation, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct EmptySequence : Error {
  explicit EmptySequence(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct InsufficientClasses : Error {
  explicit InsufficientClasses(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct InconsistentFrameShape : Error {
  explicit InconsistentFrameShape(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

struct DegenerateConfiguration : Error {
  explicit DegenerateConfiguration(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

struct NotHorizontal : Error {
  explicit NotHorizontal(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

struct DegenerateFrame : Error {
  DegenerateFrame(std::size_t frame_index, const std::string& w)
      : Error(ErrorKind::Numeric, w), index(frame_index) {}
  std::size_t index;
};

}  // namespace shapetraj
