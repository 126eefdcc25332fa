#pragma once

#include "pnalign/acyclic.hpp"
#include "pnalign/classify.hpp"
#include "pnalign/solvers.hpp"

namespace pnalign {

struct solver_budgets {
  std::size_t states = 1'000'000;
  std::size_t nodes = 10'000'000;
};

/// Length cap from the free-choice bound when `sys` is live, bounded and
/// free-choice, or a sound free-choice workflow net (counted with its
/// short-circuit transition).
inline std::optional<std::uint64_t> lbfc_certificate(const word& trace, const accepting_system& sys,
                                                     const structural_report& sr, std::size_t state_budget) {
  if (!sr.free_choice) return std::nullopt;
  const auto br = behavioral_class(sys, state_budget, 0);
  if (br.budget_exhausted || !br.bound_found) return std::nullopt;
  const auto t = sys.net.transition_count();
  if (br.live == verdict::yes) return lbfc_length_bound(t, *br.bound_found, trace.size());
  if (sr.workflow_shape && br.sound == verdict::yes) return lbfc_length_bound(t + 1, *br.bound_found, trace.size());
  return std::nullopt;
}

/// Picks the cheapest applicable solver: one-token S-system, acyclic net,
/// otherwise the generic product search.
inline align_result dispatch_align(const word& trace, const accepting_system& sys, const cost_function& c,
                                   const solver_budgets& budgets = {}) {
  const auto sr = structural_class(sys.net, sys.initial_marking, sys.final_marking);
  align_result r;
  if (sr.s_net && sys.initial_marking.total() == 1)
    r = optimal_alignment_ssystem(trace, sys, c, budgets.states);
  else if (sr.acyclic)
    r = optimal_alignment_acyclic(trace, sys, c, budgets.nodes, budgets.states);
  else
    r = optimal_alignment(trace, sys, c, budgets.states);
  r.length_cap = lbfc_certificate(trace, sys, sr, budgets.states);
  return r;
}

}  // namespace pnalign
