#pragma once

#include <stdexcept>
#include <string>

namespace peq {

enum class ErrorKind {
  parse,
  duplicate_segment_id,
  segment_inside_par,
  empty_segment,
  nested_segments,
  unknown_segment,
  segment_id_mismatch,
  context_mismatch,
  no_segments,
  renaming_validation_failed,
  invalid_renaming,
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::duplicate_segment_id: return "DuplicateSegmentId";
    case ErrorKind::segment_inside_par: return "SegmentInsidePar";
    case ErrorKind::empty_segment: return "EmptySegment";
    case ErrorKind::nested_segments: return "NestedSegments";
    case ErrorKind::unknown_segment: return "UnknownSegment";
    case ErrorKind::segment_id_mismatch: return "SegmentIdMismatch";
    case ErrorKind::context_mismatch: return "ContextMismatch";
    case ErrorKind::no_segments: return "NoSegments";
    case ErrorKind::renaming_validation_failed: return "RenamingValidationFailed";
    case ErrorKind::invalid_renaming: return "InvalidRenaming";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error with a source position (1-based line and column).
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace peq
