#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bargmann {

enum class Errc {
  invalid_dimension,
  invalid_rank,
  invalid_tuple,
  invalid_index,
  invalid_input,
  invalid_factorization,
  invalid_order,
  invalid_parameter,
  invalid_pair,
  not_pure_tuple,
  not_normalized,
  not_hermitian,
  not_psd,
  not_a_qubit,
  not_two_qubit,
  degenerate_cycle,
  zero_invariant,
  unsupported_order,
  inconsistent_oracle,
  not_realizable,
  budget_exceeded,
  too_large,
  validation_error,
  numerical_mismatch,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::invalid_rank: return "invalid-rank";
    case Errc::invalid_tuple: return "invalid-tuple";
    case Errc::invalid_index: return "invalid-index";
    case Errc::invalid_input: return "invalid-input";
    case Errc::invalid_factorization: return "invalid-factorization";
    case Errc::invalid_order: return "invalid-order";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_pair: return "invalid-pair";
    case Errc::not_pure_tuple: return "not-pure-tuple";
    case Errc::not_normalized: return "not-normalized";
    case Errc::not_hermitian: return "not-hermitian";
    case Errc::not_psd: return "not-psd";
    case Errc::not_a_qubit: return "not-a-qubit";
    case Errc::not_two_qubit: return "not-two-qubit";
    case Errc::degenerate_cycle: return "degenerate-cycle";
    case Errc::zero_invariant: return "zero-invariant";
    case Errc::unsupported_order: return "unsupported-order";
    case Errc::inconsistent_oracle: return "inconsistent-oracle";
    case Errc::not_realizable: return "not-realizable";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::too_large: return "too-large";
    case Errc::validation_error: return "validation-error";
    case Errc::numerical_mismatch: return "numerical-mismatch";
  }
  return "unknown";
}

/// Thrown by every library operation on a violated precondition or a failed
/// numerical cross-check. `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bargmann
