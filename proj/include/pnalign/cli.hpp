#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "pnalign/pnalign.hpp"

namespace pnalign {

namespace detail {

inline int exit_code(errc code) {
  switch (classify(code)) {
    case error_class::parse: return 2;
    case error_class::budget: return 3;
    case error_class::precondition: return 4;
    default: return code == errc::unknown_transition || code == errc::not_enabled ? 2 : 1;
  }
}

inline accepting_system load_net(const std::string& path) { return parse_net(read_file(path)); }

inline void print_classify(std::ostream& out, const accepting_system& sys, std::size_t states) {
  const auto sr = structural_class(sys.net, sys.initial_marking, sys.final_marking);
  const auto br = behavioral_class(sys, states);
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "free_choice=" << b(sr.free_choice) << "\n"
      << "s_net=" << b(sr.s_net) << "\n"
      << "t_net=" << b(sr.t_net) << "\n"
      << "conflict_free=" << b(sr.conflict_free) << "\n"
      << "acyclic=" << b(sr.acyclic) << "\n"
      << "workflow_shape=" << b(sr.workflow_shape) << "\n"
      << "bound=" << (br.bound_found ? std::to_string(*br.bound_found) : "inconclusive") << "\n"
      << "safe=" << to_string(br.safe) << "\n"
      << "quasi_live=" << to_string(br.quasi_live) << "\n"
      << "live=" << to_string(br.live) << "\n"
      << "cyclic=" << to_string(br.cyclic) << "\n"
      << "easy_sound=" << to_string(br.easy_sound) << "\n"
      << "option_to_complete=" << to_string(br.option_to_complete) << "\n"
      << "proper_completion=" << to_string(br.proper_completion) << "\n"
      << "sound=" << to_string(br.sound) << "\n"
      << "states=" << br.states_explored << "\n"
      << "budget_exhausted=" << b(br.budget_exhausted) << "\n";
}

inline align_result run_algo(const std::string& algo, const word& trace, const accepting_system& sys,
                             const cost_function& c, const solver_budgets& budgets) {
  if (algo == "generic") return optimal_alignment(trace, sys, c, budgets.states);
  if (algo == "ssystem") return optimal_alignment_ssystem(trace, sys, c, budgets.states);
  if (algo == "acyclic") return optimal_alignment_acyclic(trace, sys, c, budgets.nodes, budgets.states);
  return dispatch_align(trace, sys, c, budgets);
}

inline std::string join_ids(const petri_net& net, const firing_sequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + net.transition_id(s[i]);
  return out;
}

inline firing_sequence parse_sequence(const petri_net& net, const std::string& text) {
  firing_sequence s;
  if (trim(text).empty()) return s;
  for (auto part : split(text, ',')) {
    const auto id = std::string(trim(part));
    auto t = net.find_transition(id);
    if (!t) throw error(errc::unknown_transition, "unknown transition '" + id + "'");
    s.push_back(*t);
  }
  return s;
}

}  // namespace detail

/// Command-line entry point. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"alignments and classification for labelled Petri nets", "pnalign"};
  app.require_subcommand(1);

  std::string net_path, trace_text, costs_path, algo = "auto", seq_text, mode = "biased";
  std::size_t states = 1'000'000, nodes = 10'000'000, search = 100'000;
  std::uint32_t bound = 1;

  auto* classify_cmd = app.add_subcommand("classify", "structural and behavioral flags");
  classify_cmd->add_option("net", net_path, "net file")->required();
  classify_cmd->add_option("--states", states, "state budget");

  auto* align_cmd = app.add_subcommand("align", "optimal alignment of one trace");
  align_cmd->add_option("net", net_path, "net file")->required();
  align_cmd->add_option("--trace", trace_text, "comma-separated activities");
  align_cmd->add_option("--costs", costs_path, "cost overrides file");
  align_cmd->add_option("--algo", algo, "solver")->check(CLI::IsMember({"auto", "generic", "ssystem", "acyclic"}));
  align_cmd->add_option("--states", states, "state budget");
  align_cmd->add_option("--nodes", nodes, "branch-and-bound node budget");

  auto* member_cmd = app.add_subcommand("member", "is the trace in the language");
  member_cmd->add_option("net", net_path, "net file")->required();
  member_cmd->add_option("--trace", trace_text, "comma-separated activities");
  member_cmd->add_option("--states", states, "state budget");

  auto* shorten_cmd = app.add_subcommand("shorten", "shorten a firing sequence");
  shorten_cmd->add_option("net", net_path, "net file")->required();
  shorten_cmd->add_option("--seq", seq_text, "comma-separated transition ids");
  shorten_cmd->add_option("--bound", bound, "token bound b");
  shorten_cmd->add_option("--mode", mode, "biased or lbfc")->check(CLI::IsMember({"biased", "lbfc"}));
  shorten_cmd->add_option("--search", search, "permutation search budget");

  auto* gen_cmd = app.add_subcommand("gen", "generate a net on standard output");
  gen_cmd->require_subcommand(1);
  std::string words_text, word_text, tm_path, input_text, tree_text, tree_path;
  std::uint32_t copies = 1;
  auto* gen_shuffle = gen_cmd->add_subcommand("shuffle", "parallel trace systems, one per word");
  gen_shuffle->add_option("--words", words_text, "comma-separated words, one letter per activity")->required();
  auto* gen_sshuffle = gen_cmd->add_subcommand("sshuffle", "one trace line with several tokens");
  gen_sshuffle->add_option("--word", word_text, "word, one letter per activity")->required();
  gen_sshuffle->add_option("--copies", copies, "tokens on the first place");
  auto* gen_tm = gen_cmd->add_subcommand("tm", "workflow net simulating a Turing machine");
  gen_tm->add_option("machine", tm_path, "machine file")->required();
  gen_tm->add_option("--input", input_text, "comma-separated input symbols");
  auto* gen_tree = gen_cmd->add_subcommand("tree", "workflow net of a process tree");
  gen_tree->add_option("tree", tree_text, "tree expression");
  gen_tree->add_option("--file", tree_path, "read the tree from a file");

  auto* bench_cmd = app.add_subcommand("bench", "align traces on several nets and tabulate");
  std::vector<std::string> bench_nets, bench_traces, bench_algos{"auto", "generic"};
  bench_cmd->add_option("nets", bench_nets, "net files")->required();
  bench_cmd->add_option("--trace", bench_traces, "trace (repeatable)")->required();
  bench_cmd->add_option("--algo", bench_algos, "solvers (repeatable)");
  bench_cmd->add_option("--states", states, "state budget");
  bench_cmd->add_option("--nodes", nodes, "branch-and-bound node budget");

  std::vector<const char*> argv{"pnalign"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const solver_budgets budgets{states, nodes};
    if (*classify_cmd) {
      detail::print_classify(out, detail::load_net(net_path), states);
    } else if (*align_cmd) {
      const auto sys = detail::load_net(net_path);
      const auto trace = parse_trace(trace_text);
      const auto c = costs_path.empty() ? standard_costs(sys) : parse_costs(read_file(costs_path), sys.net);
      const auto r = detail::run_algo(algo, trace, sys, c, budgets);
      out << "cost=" << r.total.str() << "\n"
          << "algorithm=" << r.algorithm << "\n"
          << "states=" << r.states_expanded << "\n";
      if (r.length_cap) out << "length_cap=" << *r.length_cap << "\n";
      out << render_alignment(r.moves, sys.net);
    } else if (*member_cmd) {
      const auto sys = detail::load_net(net_path);
      out << "member=" << (membership(parse_trace(trace_text), sys, states) ? "true" : "false") << "\n";
    } else if (*shorten_cmd) {
      const auto sys = detail::load_net(net_path);
      const auto s = detail::parse_sequence(sys.net, seq_text);
      firing_sequence result;
      std::uint64_t cap;
      bool exhausted = false;
      if (mode == "biased") {
        result = shorten_biased(sys, s, bound);
        cap = biased_length_bound(bound, parikh(s).size());
      } else {
        auto r = shorten_lbfc(sys, s, bound, search);
        result = r.sequence;
        exhausted = r.search_exhausted;
        cap = shortest_sequence_bound(bound, sys.net.transition_count());
      }
      out << "original=" << s.size() << "\n"
          << "shortened=" << result.size() << "\n"
          << "bound=" << cap << "\n"
          << "search=" << (exhausted ? "exhausted" : "complete") << "\n"
          << "sequence=" << detail::join_ids(sys.net, result) << "\n";
    } else if (*gen_shuffle) {
      std::vector<word> ws;
      for (auto part : detail::split(words_text, ',')) ws.push_back(letters(detail::trim(part)));
      out << serialize_net(gen_shuffle_tsystem(ws));
    } else if (*gen_sshuffle) {
      out << serialize_net(gen_shuffle_ssystem(letters(word_text), copies));
    } else if (*gen_tm) {
      const auto tm = parse_tm(read_file(tm_path));
      const auto inst = gen_tm_wfnet(tm, parse_trace(input_text));
      out << "# trace " << inst.trace.front() << "\n"
          << "# accepts " << (inst.run.accepted ? "true" : "false") << " after " << inst.run.steps << " steps\n"
          << serialize_net(inst.sys);
    } else if (*gen_tree) {
      if (!tree_path.empty()) tree_text = read_file(tree_path);
      if (detail::trim(tree_text).empty()) throw error(errc::invalid_argument, "no tree given");
      out << serialize_net(tree_to_wfnet(parse_tree(tree_text)));
    } else if (*bench_cmd) {
      struct row {
        std::string instance, algorithm, total, states;
        long long ms;
      };
      std::vector<row> rows;
      for (const auto& path : bench_nets) {
        const auto sys = detail::load_net(path);
        const auto c = standard_costs(sys);
        const auto name = std::filesystem::path(path).filename().string();
        for (std::size_t k = 0; k < bench_traces.size(); ++k) {
          const auto trace = parse_trace(bench_traces[k]);
          for (const auto& a : bench_algos) {
            const auto t0 = std::chrono::steady_clock::now();
            row r{name + "#" + std::to_string(k + 1), a, "-", "-", 0};
            try {
              const auto res = detail::run_algo(a, trace, sys, c, budgets);
              r.algorithm = a == "auto" ? "auto/" + res.algorithm : a;
              r.total = res.total.str();
              r.states = std::to_string(res.states_expanded);
            } catch (const error& e) {
              r.total = "error:" + std::to_string(detail::exit_code(e.code()));
            }
            r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
            rows.push_back(r);
          }
        }
      }
      std::stable_sort(rows.begin(), rows.end(), [](const row& a, const row& b) { return a.instance < b.instance; });
      out << "instance\talgorithm\tcost\tstates\tms\n";
      for (const auto& r : rows)
        out << r.instance << "\t" << r.algorithm << "\t" << r.total << "\t" << r.states << "\t" << r.ms << "\n";
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code(e.code());
  }
  return 0;
}

}  // namespace pnalign
