#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "oocrn/crn_io.hpp"
#include "oocrn/funcspec_io.hpp"
#include "oocrn/synth.hpp"
#include "oocrn/verify.hpp"

namespace {

oocrn::nat2 parse_input_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    oocrn::fail(oocrn::errc::parse, "expected `a,b` with decimal naturals: " + text);
  try {
    return {std::stoull(text.substr(0, comma)), std::stoull(text.substr(comma + 1))};
  } catch (...) {
    oocrn::fail(oocrn::errc::parse, "expected `a,b` with decimal naturals: " + text);
  }
}

int cmd_check(const std::string& spec_path) {
  const auto spec = oocrn::load_spec_file(spec_path);
  const auto diags = oocrn::validate_spec(spec);
  for (const auto& d : diags) std::cout << d.code << ": " << d.message << "\n";
  if (diags.empty()) {
    std::cout << "ok: spec validates (audit box side " << oocrn::audit_box_side(spec) << ")\n";
    return 0;
  }
  return 1;
}

int cmd_eval(const std::string& spec_path, const std::string& input) {
  const auto spec = oocrn::load_spec_file(spec_path);
  std::cout << oocrn::eval(spec, parse_input_pair(input)) << "\n";
  return 0;
}

std::string sidecar_path(const std::string& out_path) {
  if (out_path.ends_with(".crn"))
    return out_path.substr(0, out_path.size() - 4) + ".synth.json";
  return out_path + ".synth.json";
}

int cmd_synth(const std::string& spec_path, const std::string& out_path) {
  const auto spec = oocrn::load_spec_file(spec_path);
  const auto report = oocrn::synthesize(spec);
  oocrn::write_file(out_path, oocrn::serialize_crn(report.net));
  oocrn::write_file(sidecar_path(out_path), oocrn::serialize_synth_report(report));
  std::cout << "wrote " << out_path << " (" << report.net.species.size() << " species, "
            << report.net.reactions.size() << " reactions)\n";
  const auto violations = oocrn::check_output_oblivious(report.net);
  if (!violations.empty()) {
    std::cerr << "internal error: synthesized CRN is not output-oblivious\n";
    return 1;
  }
  return 0;
}

int cmd_simulate(const std::string& crn_path, const std::string& input, std::uint64_t seed,
                 std::size_t max_steps, bool trace) {
  const auto net = oocrn::load_crn_file(crn_path);
  const auto diags = oocrn::validate_crn(net);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << d.code << ": " << d.message << "\n";
    return 1;
  }
  const auto e = oocrn::simulate(net, parse_input_pair(input), seed, max_steps);
  if (trace) {
    for (std::size_t i = 0; i < e.steps.size(); ++i)
      std::cout << i << " r" << e.steps[i].first << " "
                << oocrn::reaction_str(net, net.reactions[e.steps[i].first]) << "\n";
  }
  std::cout << e.final_config().count(net.outputs.front()) << "\n";
  if (e.step_budget_exceeded) {
    std::cerr << "error: step budget of " << max_steps << " exceeded before quiescence\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const std::string& crn_path, const std::string& spec_path, const std::string& box,
               const std::string& mode, std::size_t max_configs, std::size_t runs,
               std::size_t max_steps, std::uint64_t seed, unsigned jobs,
               const std::string& report_path) {
  const auto net = oocrn::load_crn_file(crn_path);
  const auto spec = oocrn::load_spec_file(spec_path);
  {
    const auto diags = oocrn::validate_spec(spec);
    if (!diags.empty()) {
      for (const auto& d : diags) std::cerr << d.code << ": " << d.message << "\n";
      return 1;
    }
  }

  const auto oo = oocrn::check_output_oblivious(net);
  if (oo.empty()) {
    std::cout << "output-oblivious: yes\n";
  } else {
    for (const auto& v : oo)
      std::cout << "output-oblivious: no (reaction " << v.reaction << " consumes "
                << net.name(v.species) << ")\n";
  }

  oocrn::sweep_budget budget;
  budget.mode = mode == "random" ? oocrn::sweep_mode::random : oocrn::sweep_mode::exhaustive;
  budget.max_configs = max_configs;
  budget.runs = runs;
  budget.max_steps = max_steps;
  budget.seed = seed;
  budget.jobs = jobs;

  const auto verdicts = oocrn::sweep(net, spec, parse_input_pair(box), budget);
  std::size_t pass = 0, fails = 0, inconclusive = 0;
  for (const auto& v : verdicts) {
    std::cout << oocrn::verdict_line(v) << "\n";
    if (v.result == oocrn::outcome::pass) ++pass;
    if (v.result == oocrn::outcome::fail) {
      ++fails;
      const std::size_t show = std::min<std::size_t>(v.witness.size(), 12);
      for (std::size_t i = 0; i < show; ++i)
        std::cout << "  witness r" << v.witness[i].first << " "
                  << oocrn::reaction_str(net, net.reactions[v.witness[i].first]) << "\n";
      if (v.witness.size() > show)
        std::cout << "  witness ... " << (v.witness.size() - show) << " more steps\n";
    }
    if (v.result == oocrn::outcome::inconclusive) ++inconclusive;
  }
  std::cout << "summary: " << pass << " PASS, " << fails << " FAIL, " << inconclusive
            << " INCONCLUSIVE\n";

  if (!report_path.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : verdicts) {
      nlohmann::json e{{"n", {v.input.n1, v.input.n2}},
                       {"expected", v.expected},
                       {"outcome", v.result == oocrn::outcome::pass          ? "PASS"
                                   : v.result == oocrn::outcome::fail        ? "FAIL"
                                                                             : "INCONCLUSIVE"}};
      if (!v.reason.empty()) e["reason"] = v.reason;
      if (v.nodes > 0) {
        e["nodes"] = v.nodes;
        e["edges"] = v.edges;
        e["stable"] = v.stable;
      }
      j.push_back(std::move(e));
    }
    oocrn::write_file(report_path, j.dump(2) + "\n");
  }

  if (fails > 0) return 1;
  if (inconclusive > 0) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"output-oblivious CRN synthesis and verification"};
  app.require_subcommand(1);

  std::string spec_path, crn_path, input, out_path = "out.crn", box, report_path;
  std::string mode = "exhaustive";
  std::uint64_t seed = 1;
  std::size_t max_steps = 1000000, max_configs = 1000000, runs = 100;
  unsigned jobs = 1;
  bool trace = false;

  auto* check = app.add_subcommand("check", "validate a function spec");
  check->add_option("spec", spec_path, "spec JSON file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a function spec at one input");
  eval->add_option("spec", spec_path)->required();
  eval->add_option("--input", input, "input pair a,b")->required();

  auto* synth = app.add_subcommand("synth", "compile a spec into an output-oblivious CRN");
  synth->add_option("spec", spec_path)->required();
  synth->add_option("-o,--output", out_path, "output .crn path");

  auto* simulate = app.add_subcommand("simulate", "run one seeded random execution");
  simulate->add_option("crn", crn_path, "model .crn file")->required();
  simulate->add_option("--input", input)->required();
  simulate->add_option("--seed", seed);
  simulate->add_option("--max-steps", max_steps);
  simulate->add_flag("--trace", trace, "print one line per step");

  auto* verify = app.add_subcommand("verify", "sweep a box of inputs against the spec oracle");
  verify->add_option("crn", crn_path)->required();
  verify->add_option("--spec", spec_path)->required();
  verify->add_option("--box", box, "inclusive box corner a,b")->required();
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--max-configs", max_configs);
  verify->add_option("--runs", runs);
  verify->add_option("--max-steps", max_steps);
  verify->add_option("--seed", seed);
  verify->add_option("--jobs", jobs);
  verify->add_option("--report", report_path, "write a JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(spec_path);
    if (eval->parsed()) return cmd_eval(spec_path, input);
    if (synth->parsed()) return cmd_synth(spec_path, out_path);
    if (simulate->parsed()) return cmd_simulate(crn_path, input, seed, max_steps, trace);
    if (verify->parsed())
      return cmd_verify(crn_path, spec_path, box, mode, max_configs, runs, max_steps, seed,
                        jobs, report_path);
  } catch (const oocrn::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
