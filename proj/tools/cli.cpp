#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "umt/atoms.hpp"
#include "umt/breakup.hpp"
#include "umt/errors.hpp"
#include "umt/newick.hpp"
#include "umt/sidecar.hpp"
#include "umt/supertree.hpp"
#include "umt/tree_gen.hpp"

namespace umt::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Parse failures carry the file name so the message points at the input.
struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<PhyloTree> read_trees(const std::vector<std::string>& paths) {
  std::vector<PhyloTree> trees;
  for (const auto& p : paths) {
    const auto text = slurp(p);
    try {
      for (auto& t : parse_newick_forest(text)) trees.push_back(std::move(t));
    } catch (const ParseError& e) {
      throw FileParseError(p + ": " + e.what());
    }
  }
  if (trees.empty()) throw UsageError("no input trees");
  return trees;
}

std::vector<SideConstraint> read_sides(const std::string& path) {
  if (path.empty()) return {};
  try {
    return parse_sidecar(slurp(path));
  } catch (const ParseError& e) {
    throw FileParseError(path + ":" + std::to_string(e.position()) + ": " + e.what());
  }
}

BreakupMode mode_of(bool soft) { return soft ? BreakupMode::Soft : BreakupMode::Hard; }

json stats_json(const SupertreeModel& model, const RunStats& s, double build_ms, double solve_ms, const char* result) {
  return json{{"n", model.forest().size()},
              {"variables", s.peak_vars},
              {"propagators", s.peak_propagators},
              {"wakes", s.wakes},
              {"search_nodes", s.search_nodes},
              {"failures", s.failures},
              {"build_ms", build_ms},
              {"solve_ms", solve_ms},
              {"result", result}};
}

json atom_list(const std::vector<Atom>& atoms) {
  json a = json::array();
  for (const auto& x : atoms) a.push_back(to_string(x));
  return a;
}

void write_payload(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

struct Options {
  std::vector<std::string> files;
  bool soft = false;
  std::string constraints;
  std::string out;
  std::string atom;
  std::size_t limit = 10;
  std::size_t leaves = 20;
  std::size_t trees = 3;
  double prune = 0.3;
  double multifurcation = 0.3;
  std::uint64_t seed = 1;
  std::vector<std::size_t> sizes{20, 40, 80};
};

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const Forest forest(nested_preprocess(read_trees(o.files)));
  const auto sides = read_sides(o.constraints);
  auto model = build_model(forest, mode_of(o.soft), sides);
  const double build_ms = ms_since(t0);
  const auto t1 = Clock::now();
  auto result = cp_build(*model);
  const char* verdict = result.tree ? "compatible" : "incompatible";
  if (result.tree && !model->nested().empty()) {
    result.tree = attach_labels(*result.tree, *model);
    if (!result.tree) {
      verdict = "incompatible";
      err << "enclosing taxa cannot be placed on the supertree\n";
    }
  }
  const double solve_ms = ms_since(t1);
  err << stats_json(*model, result.stats, build_ms, solve_ms, verdict).dump() << '\n';
  if (!result.tree) return kIncompatible;
  write_payload(o.out, to_newick(*result.tree) + "\n", out);
  return kOk;
}

int cmd_greedy(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const Forest forest(read_trees(o.files));
  const auto r = greedy_build(forest, mode_of(o.soft));
  SupertreeModel shape(forest, {mode_of(o.soft), false});
  auto report = stats_json(shape, r.stats, 0.0, ms_since(t0), "compatible");
  report["accepted"] = atom_list(r.report.accepted);
  report["rejected"] = atom_list(r.report.rejected);
  report["violated"] = atom_list(r.report.violated);
  err << report.dump() << '\n';
  write_payload(o.out, to_newick(r.tree) + "\n", out);
  return kOk;
}

int cmd_necessity(const Options& o, std::ostream& out, std::ostream& err) {
  const Forest forest(read_trees(o.files));
  const auto sides = read_sides(o.constraints);
  Atom tau;
  try {
    tau = parse_atom(o.atom);
  } catch (const ParseError& e) {
    err << "--atom: " << e.what() << '\n';
    return kUsage;
  }
  try {
    out << (necessity(forest, tau, mode_of(o.soft), sides) ? "necessary" : "not-necessary") << '\n';
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kPrecondition;
  }
  return kOk;
}

int cmd_explain(const Options& o, std::ostream& out, std::ostream& err) {
  const Forest forest(read_trees(o.files));
  const auto sides = read_sides(o.constraints);
  try {
    const auto core = explain_conflict(forest, mode_of(o.soft), sides);
    out << atom_list(core.atoms).dump() << '\n';
    err << json{{"probes", core.probes}, {"core_size", core.atoms.size()}}.dump() << '\n';
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kPrecondition;
  }
  return kOk;
}

int cmd_breakup(const Options& o, std::ostream& out, std::ostream&) {
  for (const auto& t : read_trees(o.files)) {
    t.validate();
    for (const auto& a : breakup(t, mode_of(o.soft))) out << to_string(a) << '\n';
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream&, std::ostream& err) {
  if (o.files.size() < 2) throw UsageError("check needs a supertree file and at least one input file");
  const auto super = read_trees({o.files.front()});
  if (super.size() != 1) throw UsageError("the supertree file must hold exactly one tree");
  const auto inputs = read_trees(std::vector<std::string>(o.files.begin() + 1, o.files.end()));
  std::size_t failed = 0;
  const auto sup_leaves = super.front().leaf_labels();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto leaves = inputs[i].leaf_labels();
    bool ok = std::includes(sup_leaves.begin(), sup_leaves.end(), leaves.begin(), leaves.end());
    if (ok) {
      ok = inputs[i].has_internal_labels() ? perfectly_displays(super.front(), inputs[i])
                                           : displays(super.front(), inputs[i]);
    }
    if (!ok) {
      ++failed;
      err << "not displayed: input tree " << i + 1 << '\n';
    }
  }
  return failed == 0 ? kOk : kIncompatible;
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  const Forest forest(read_trees(o.files));
  auto model = build_model(forest, mode_of(o.soft), read_sides(o.constraints));
  const auto trees = enumerate_supertrees(*model, o.limit);
  for (const auto& t : trees) out << to_newick(t) << '\n';
  err << json{{"solutions", trees.size()}, {"search_nodes", model->engine().stats().search_nodes}}.dump() << '\n';
  return trees.empty() ? kIncompatible : kOk;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream&) {
  if (o.leaves == 0) throw UsageError("--leaves must be positive");
  if (o.prune < 0.0 || o.prune >= 1.0) throw UsageError("--prune must be in [0, 1)");
  const auto g = generate_forest(o.leaves, o.trees, o.prune, o.seed, o.multifurcation);
  for (const auto& t : g.trees) out << to_newick(t) << '\n';
  return kOk;
}

// Triple displayed by `t`, swapped into a conflicting one-triple tree.
std::optional<PhyloTree> conflicting_tree(const PhyloTree& t) {
  const auto labels = t.leaf_labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k == i || k == j) continue;
        if (resolve(t, labels[i], labels[j], labels[k]) == Resolution::FirstPair) {
          return parse_newick("((" + labels[i] + "," + labels[k] + ")," + labels[j] + ");");
        }
      }
  return std::nullopt;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
  json rows = json::array();
  for (auto n : o.sizes) {
    const auto g = generate_forest(n, o.trees, o.prune, o.seed + n, o.multifurcation);
    auto run = [&](std::vector<PhyloTree> trees) {
      const auto t0 = Clock::now();
      const Forest forest(std::move(trees));
      auto model = build_model(forest, mode_of(o.soft));
      const double build_ms = ms_since(t0);
      const auto t1 = Clock::now();
      const auto r = cp_build(*model);
      return stats_json(*model, r.stats, build_ms, ms_since(t1), r.tree ? "compatible" : "incompatible");
    };
    rows.push_back(run(g.trees));
    if (auto bad = conflicting_tree(g.trees.front())) {
      auto trees = g.trees;
      trees.push_back(*bad);
      rows.push_back(run(std::move(trees)));
    }
  }
  out << rows.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supertree construction by ultrametric constraint propagation", "umtree"};
  app.require_subcommand(1);
  Options o;

  auto with_inputs = [&](CLI::App* sub) {
    sub->add_option("files", o.files, "Newick input files ('-' for stdin)")->required();
    sub->add_flag("--soft", o.soft, "Soft breakup (multifurcations as missing evidence)");
    sub->add_flag("--hard", [&](std::int64_t) { o.soft = false; }, "Hard breakup (default)");
  };
  auto with_constraints = [&](CLI::App* sub) {
    sub->add_option("--constraints", o.constraints, "Side-constraint file");
  };

  auto* build = app.add_subcommand("build", "Build a supertree by propagation alone");
  with_inputs(build);
  with_constraints(build);
  build->add_option("-o,--out", o.out, "Write the supertree here instead of stdout");

  auto* greedy = app.add_subcommand("greedy", "Build a supertree, dropping conflicting atoms");
  with_inputs(greedy);
  greedy->add_option("-o,--out", o.out, "Write the supertree here instead of stdout");

  auto* nec = app.add_subcommand("necessity", "Does an atom hold in every supertree?");
  with_inputs(nec);
  with_constraints(nec);
  nec->add_option("--atom", o.atom, "Triple (a,b)c or fan (a,b,c)")->required();

  auto* explain = app.add_subcommand("explain", "Minimal conflicting set of atoms");
  with_inputs(explain);
  with_constraints(explain);

  auto* brk = app.add_subcommand("breakup", "Print the triples and fans of each tree");
  with_inputs(brk);

  auto* check = app.add_subcommand("check", "Check that the first tree displays all the others");
  check->add_option("files", o.files, "Supertree file followed by input files")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List distinct supertrees");
  with_inputs(enumerate);
  with_constraints(enumerate);
  enumerate->add_option("--limit", o.limit, "Maximum number of trees")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate a compatible random forest");
  gen->add_option("--leaves", o.leaves, "Species in the source tree");
  gen->add_option("--trees", o.trees, "Number of restricted trees");
  gen->add_option("--prune", o.prune, "Probability of dropping each leaf");
  gen->add_option("--multi", o.multifurcation, "Probability that a split is a multifurcation");
  gen->add_option("--seed", o.seed, "Random seed");

  auto* bench = app.add_subcommand("bench", "Run a size ladder and print a JSON table");
  bench->add_option("--sizes", o.sizes, "Species counts")->delimiter(',');
  bench->add_option("--trees", o.trees, "Trees per forest");
  bench->add_option("--prune", o.prune, "Probability of dropping each leaf");
  bench->add_option("--seed", o.seed, "Random seed");
  bench->add_flag("--soft", o.soft, "Soft breakup");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*build) return cmd_build(o, out, err);
    if (*greedy) return cmd_greedy(o, out, err);
    if (*nec) return cmd_necessity(o, out, err);
    if (*explain) return cmd_explain(o, out, err);
    if (*brk) return cmd_breakup(o, out, err);
    if (*check) return cmd_check(o, out, err);
    if (*enumerate) return cmd_enumerate(o, out, err);
    if (*gen) return cmd_gen(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
  } catch (const FileParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace umt::cli
