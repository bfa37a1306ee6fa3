#include "stereo/error.hpp"

#include <sstream>

namespace stereo {

namespace {

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream os;
  os << "syntax error at offset " << offset << ": found " << found << ", expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    os << (i == 0 ? "" : ", ") << expected[i];
  }
  return os.str();
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error(syntax_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

UnknownAtom::UnknownAtom(std::string name, std::size_t offset)
    : Error("unknown atom '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

NoUniqueMinimum::NoUniqueMinimum(std::vector<std::string> stereotypes)
    : Error("no unique closest stereotype; co-minimal: " + join(stereotypes)),
      stereotypes_(std::move(stereotypes)) {}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::FormatError: return "FormatError";
    case ViolationKind::InvalidName: return "InvalidName";
    case ViolationKind::DuplicateName: return "DuplicateName";
    case ViolationKind::DuplicateValuation: return "DuplicateValuation";
    case ViolationKind::UnknownAtom: return "UnknownAtom";
    case ViolationKind::UnknownWorld: return "UnknownWorld";
    case ViolationKind::UnknownStereotype: return "UnknownStereotype";
    case ViolationKind::SyntaxError: return "SyntaxError";
    case ViolationKind::NoWorlds: return "NoWorlds";
    case ViolationKind::TooManyWorlds: return "TooManyWorlds";
    case ViolationKind::NoStereotypes: return "NoStereotypes";
    case ViolationKind::EmptyStereotype: return "EmptyStereotype";
    case ViolationKind::DistanceSpecError: return "DistanceSpecError";
  }
  return "Unknown";
}

KbError::KbError(Violation violation)
    : Error(std::string(to_string(violation.kind)) + " at " +
            (violation.location.empty() ? std::string("/") : violation.location) + ": " +
            violation.message),
      violation_(std::move(violation)) {}

}  // namespace stereo
