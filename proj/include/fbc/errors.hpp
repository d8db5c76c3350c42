#pragma once

#include <stdexcept>
#include <string>

namespace fbc {

// Coarse failure categories; they map 1:1 onto process exit codes and onto
// the status codes of the C API.
enum class error_kind : int {
  validation = 2,      // malformed or infeasible input
  nonconvergence = 3,  // an iteration or tolerance could not be met
  enumeration = 4,     // an exhaustive computation would exceed its guard
};

class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  error_kind kind() const { return kind_; }

 private:
  error_kind kind_;
};

struct validation_error : error {
  explicit validation_error(const std::string& w) : error(error_kind::validation, w) {}
};
struct dimension_mismatch : validation_error {
  explicit dimension_mismatch(const std::string& w) : validation_error(w) {}
};
struct absolute_continuity_violation : validation_error {
  explicit absolute_continuity_violation(const std::string& w) : validation_error(w) {}
};
struct domain_error : validation_error {
  explicit domain_error(const std::string& w) : validation_error(w) {}
};
struct empty_feasible_set : validation_error {
  explicit empty_feasible_set(const std::string& w) : validation_error(w) {}
};
struct empty_polytope : validation_error {
  explicit empty_polytope(const std::string& w) : validation_error(w) {}
};
struct condition_violation : validation_error {
  explicit condition_violation(const std::string& w) : validation_error(w) {}
};
struct degenerate_vertices : validation_error {
  explicit degenerate_vertices(const std::string& w) : validation_error(w) {}
};
struct support_loss : validation_error {
  explicit support_loss(const std::string& w) : validation_error(w) {}
};

struct nonconvergence : error {
  explicit nonconvergence(const std::string& w) : error(error_kind::nonconvergence, w) {}
};
struct support_ambiguity : nonconvergence {
  explicit support_ambiguity(const std::string& w) : nonconvergence(w) {}
};
struct root_bracket_failure : nonconvergence {
  explicit root_bracket_failure(const std::string& w) : nonconvergence(w) {}
};
struct lp_unbounded : nonconvergence {
  explicit lp_unbounded(const std::string& w) : nonconvergence(w) {}
};

struct enumeration_too_large : error {
  explicit enumeration_too_large(const std::string& w) : error(error_kind::enumeration, w) {}
};
struct type_enumeration_too_large : enumeration_too_large {
  explicit type_enumeration_too_large(const std::string& w) : enumeration_too_large(w) {}
};

}  // namespace fbc
