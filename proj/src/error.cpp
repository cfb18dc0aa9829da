#include "gdd/error.hpp"

namespace gdd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::MalformedDesign: return "MalformedDesign";
    case ErrorKind::MissingHoles: return "MissingHoles";
    case ErrorKind::MissingResolution: return "MissingResolution";
    case ErrorKind::UnmappedPoint: return "UnmappedPoint";
    case ErrorKind::UnsupportedStep: return "UnsupportedStep";
    case ErrorKind::DuplicateBlock: return "DuplicateBlock";
    case ErrorKind::CollapsedBlock: return "CollapsedBlock";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::PartitionError: return "PartitionError";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::TooManyGroups: return "TooManyGroups";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::MissingIngredient: return "MissingIngredient";
    case ErrorKind::BadIngredient: return "BadIngredient";
    case ErrorKind::ForbiddenCase: return "ForbiddenCase";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      detail_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace gdd
