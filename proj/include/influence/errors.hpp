#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace influence {

// Library-wide error codes. The CLI maps categories to process exit codes:
// validation -> 1, computation -> 2, self-test -> 3.
enum class errc {
  parse_error,
  conflicting_label,
  empty_dataset,
  non_binary_response,
  insufficient_class_mass,
  not_a_bijection,
  not_a_partition,
  unknown_feature,
  negative_sign_on_non_binary,
  length_mismatch,
  non_binary_column,
  non_binary_feature,
  bad_cluster_count,
  non_binary,
  incomplete_coverage,
  non_zero_empty,
  enumeration_bound_exceeded,
  constant_vector,
  feature_set_mismatch,
  precondition_unmet,
  invalid_argument,
  self_test_failure,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::parse_error: return "ParseError";
    case errc::conflicting_label: return "ConflictingLabel";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::non_binary_response: return "NonBinaryResponse";
    case errc::insufficient_class_mass: return "InsufficientClassMass";
    case errc::not_a_bijection: return "NotABijection";
    case errc::not_a_partition: return "NotAPartition";
    case errc::unknown_feature: return "UnknownFeature";
    case errc::negative_sign_on_non_binary: return "NegativeSignOnNonBinary";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::non_binary_column: return "NonBinaryColumn";
    case errc::non_binary_feature: return "NonBinaryFeature";
    case errc::bad_cluster_count: return "BadClusterCount";
    case errc::non_binary: return "NonBinary";
    case errc::incomplete_coverage: return "IncompleteCoverage";
    case errc::non_zero_empty: return "NonZeroEmpty";
    case errc::enumeration_bound_exceeded: return "EnumerationBoundExceeded";
    case errc::constant_vector: return "ConstantVector";
    case errc::feature_set_mismatch: return "FeatureSetMismatch";
    case errc::precondition_unmet: return "PreconditionUnmet";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::self_test_failure: return "SelfTestFailure";
  }
  return "UnknownError";
}

// 1 = bad input, 2 = infeasible computation, 3 = self-test failure.
inline int errc_exit_code(errc code) {
  switch (code) {
    case errc::enumeration_bound_exceeded:
    case errc::insufficient_class_mass:
    case errc::constant_vector:
      return 2;
    case errc::self_test_failure:
      return 3;
    default:
      return 1;
  }
}

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return errc_name(code_); }
  int exit_code() const noexcept { return errc_exit_code(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace influence
