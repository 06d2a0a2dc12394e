#pragma once

#include <stdexcept>
#include <string>

namespace pcax {

// Every contract violation in the library maps to one of these codes.
// Messages carry the offending indicator codes / entity ids / line numbers.
enum class errc {
  bad_argument,
  non_finite_input,
  fewer_than_two_entities,
  no_convergence,
  indefinite_matrix,
  length_mismatch,
  dimension_mismatch,
  constant_indicator,
  unassigned_indicator,
  empty_pillar,
  duplicate_indicator_code,
  bad_direction,
  malformed_line,
  missing_column,
  duplicate_entity_id,
  unparsable_number,
  no_entities_remain,
  non_finite_score,
  k_too_large,
  unknown_pillar,
  unknown_entity,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::bad_argument: return "bad_argument";
    case errc::non_finite_input: return "non_finite_input";
    case errc::fewer_than_two_entities: return "fewer_than_two_entities";
    case errc::no_convergence: return "no_convergence";
    case errc::indefinite_matrix: return "indefinite_matrix";
    case errc::length_mismatch: return "length_mismatch";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::constant_indicator: return "constant_indicator";
    case errc::unassigned_indicator: return "unassigned_indicator";
    case errc::empty_pillar: return "empty_pillar";
    case errc::duplicate_indicator_code: return "duplicate_indicator_code";
    case errc::bad_direction: return "bad_direction";
    case errc::malformed_line: return "malformed_line";
    case errc::missing_column: return "missing_column";
    case errc::duplicate_entity_id: return "duplicate_entity_id";
    case errc::unparsable_number: return "unparsable_number";
    case errc::no_entities_remain: return "no_entities_remain";
    case errc::non_finite_score: return "non_finite_score";
    case errc::k_too_large: return "k_too_large";
    case errc::unknown_pillar: return "unknown_pillar";
    case errc::unknown_entity: return "unknown_entity";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pcax
