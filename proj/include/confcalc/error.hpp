#ifndef CONFCALC_ERROR_HPP
#define CONFCALC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace confcalc {

enum class Errc {
  // poset
  UnknownElement,
  DuplicateElement,
  AntisymmetryViolation,
  ElementMismatch,
  NotCoveringPair,
  NotDominating,
  InvalidGluing,
  TooLarge,
  // exact linear algebra
  NotPrime,
  ShapeMismatch,
  AmbientMismatch,
  // quiver category
  BadQuiver,
  RelationViolated,
  QuiverMismatch,
  FieldMismatch,
  CompositionMismatch,
  IntertwiningViolated,
  NotInjective,
  NotMultiplicityFree,
  NotNilpotent,
  IncompatibleOrder,
  InvalidSubobject,
  // configurations
  MissingEntry,
  FamilyAxiomViolation,
  PosetMismatch,
  NotAChain,
  NotAnFSet,
  NotMonotone,
  NotSurjective,
  GluingMismatch,
  InvalidConfiguration,
  // improvements
  NotSplit,
  BadParameterLength,
  TooMany,
  // io
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::AntisymmetryViolation: return "AntisymmetryViolation";
    case Errc::ElementMismatch: return "ElementMismatch";
    case Errc::NotCoveringPair: return "NotCoveringPair";
    case Errc::NotDominating: return "NotDominating";
    case Errc::InvalidGluing: return "InvalidGluing";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::BadQuiver: return "BadQuiver";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::QuiverMismatch: return "QuiverMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::CompositionMismatch: return "CompositionMismatch";
    case Errc::IntertwiningViolated: return "IntertwiningViolated";
    case Errc::NotInjective: return "NotInjective";
    case Errc::NotMultiplicityFree: return "NotMultiplicityFree";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::IncompatibleOrder: return "IncompatibleOrder";
    case Errc::InvalidSubobject: return "InvalidSubobject";
    case Errc::MissingEntry: return "MissingEntry";
    case Errc::FamilyAxiomViolation: return "FamilyAxiomViolation";
    case Errc::PosetMismatch: return "PosetMismatch";
    case Errc::NotAChain: return "NotAChain";
    case Errc::NotAnFSet: return "NotAnFSet";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::GluingMismatch: return "GluingMismatch";
    case Errc::InvalidConfiguration: return "InvalidConfiguration";
    case Errc::NotSplit: return "NotSplit";
    case Errc::BadParameterLength: return "BadParameterLength";
    case Errc::TooMany: return "TooMany";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library error with a machine-checkable code.  Semantic "no" answers
/// (a sequence failing to split, an isomorphism test coming back
/// undecided) are ordinary return values, not errors.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace confcalc

#endif  // CONFCALC_ERROR_HPP
