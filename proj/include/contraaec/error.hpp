#pragma once

#include <stdexcept>
#include <string>

namespace contraaec {

enum class errc {
  // category validation
  missing_composite,
  associativity_violation,
  identity_violation,
  dangling_reference,
  // presheaf validation
  identity_axiom_violation,
  composition_axiom_violation,
  dangling_element,
  // structural
  invalid_dimension,
  not_one_dimensional,
  truncation_too_shallow,
  base_mismatch,
  not_a_suspension_base,
  not_mono_category,
  bounds_error,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::missing_composite: return "MissingComposite";
    case errc::associativity_violation: return "AssociativityViolation";
    case errc::identity_violation: return "IdentityViolation";
    case errc::dangling_reference: return "DanglingReference";
    case errc::identity_axiom_violation: return "IdentityAxiomViolation";
    case errc::composition_axiom_violation: return "CompositionAxiomViolation";
    case errc::dangling_element: return "DanglingElement";
    case errc::invalid_dimension: return "InvalidDimension";
    case errc::not_one_dimensional: return "NotOneDimensional";
    case errc::truncation_too_shallow: return "TruncationTooShallow";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::not_a_suspension_base: return "NotASuspensionBase";
    case errc::not_mono_category: return "NotMonoCategory";
    case errc::bounds_error: return "BoundsError";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace contraaec
