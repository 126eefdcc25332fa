#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnalign {

enum class errc {
  unknown_transition,
  not_enabled,
  budget_exceeded,
  empty_net,
  parse_error,
  arity_error,
  disconnected_net,
  duplicate_id,
  unreachable,
  not_easy_sound,
  not_s_system,
  not_single_token,
  not_acyclic,
  infeasible,
  stuck_contradiction,
  illegal_move,
  projection_mismatch,
  not_complete_firing_sequence,
  cap_exhausted,
  not_biased,
  not_replayable,
  not_bounded,
  not_safe_markings,
  empty_marking,
  space_bound_violated,
  cycle_detected,
  step_cap_exceeded,
  machine_stuck,
  halt_not_normalized,
  invalid_argument,
};

/// Coarse grouping used by the command line to pick an exit code.
enum class error_class { parse, budget, precondition, other };

inline error_class classify(errc code) {
  switch (code) {
    case errc::parse_error:
    case errc::arity_error:
    case errc::disconnected_net:
    case errc::duplicate_id:
    case errc::invalid_argument:
      return error_class::parse;
    case errc::budget_exceeded:
    case errc::cap_exhausted:
    case errc::step_cap_exceeded:
      return error_class::budget;
    case errc::not_easy_sound:
    case errc::not_s_system:
    case errc::not_single_token:
    case errc::not_acyclic:
    case errc::infeasible:
    case errc::unreachable:
    case errc::not_biased:
    case errc::not_replayable:
    case errc::not_bounded:
    case errc::not_safe_markings:
    case errc::empty_marking:
    case errc::space_bound_violated:
    case errc::cycle_detected:
    case errc::machine_stuck:
    case errc::halt_not_normalized:
    case errc::empty_net:
      return error_class::precondition;
    default:
      return error_class::other;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// A transition could not fire. `step` is the position in the replayed
/// sequence (0 for a single firing), `place` the first unmarked input place.
class not_enabled_error : public error {
 public:
  not_enabled_error(std::string place, std::size_t step, const std::string& transition)
      : error(errc::not_enabled, "transition '" + transition + "' not enabled at step " +
                                     std::to_string(step) + ": place '" + place + "' is empty"),
        place_(std::move(place)),
        step_(step) {}
  const std::string& place() const noexcept { return place_; }
  std::size_t step() const noexcept { return step_; }

 private:
  std::string place_;
  std::size_t step_;
};

class budget_exceeded_error : public error {
 public:
  budget_exceeded_error(std::size_t discovered, const std::string& what)
      : error(errc::budget_exceeded, what), discovered_(discovered) {}
  std::size_t discovered() const noexcept { return discovered_; }

 private:
  std::size_t discovered_;
};

class parse_error : public error {
 public:
  parse_error(std::size_t line, std::size_t column, const std::string& message)
      : error(errc::parse_error, "line " + std::to_string(line) +
                                     (column ? ":" + std::to_string(column) : std::string{}) + ": " +
                                     message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised by alignment validation; `index` is the offending move position.
class alignment_error : public error {
 public:
  alignment_error(errc code, std::size_t index, const std::string& what)
      : error(code, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace pnalign
