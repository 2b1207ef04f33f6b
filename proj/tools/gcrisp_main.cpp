// gcrisp: local consistency, satisfiability and subsumption for Gödel
// fuzzy ALCQ ontologies.
//
// Exit codes: 0 positive answer, 1 negative answer, 2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gcrisp/error.hpp"
#include "gcrisp/ontology.hpp"
#include "gcrisp/tasks.hpp"

namespace {

using namespace gcrisp;

struct Settings {
  std::string input;
  std::string tbox;
  std::vector<std::string> terms;  // concepts then the degree
  std::string emit_reduction;
  std::string emit_model;
  std::string oracle = "off";
  std::string grid_step;
  std::size_t max_domain = 0;
  std::size_t budget = 200000;
  std::size_t depth = 4;
  std::string atmost;
  bool reduce_opt = false;
  bool stats = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

ParseOptions parse_options(const Settings& s) {
  ParseOptions p;
  if (s.atmost == "involutive") p.atmost = AtMostMode::Involutive;
  if (s.atmost == "residual") p.atmost = AtMostMode::Residual;
  return p;
}

AtMostMode atmost_mode(const Settings& s) {
  return s.atmost == "residual" ? AtMostMode::Residual : AtMostMode::Involutive;
}

TaskOptions task_options(const Settings& s) {
  TaskOptions t;
  t.node_budget = s.budget;
  t.depth = s.depth;
  t.want_model = !s.emit_model.empty();
  t.want_reduction = !s.emit_reduction.empty();
  t.reduce_opt = s.reduce_opt;
  t.oracle = *parse_oracle_mode(s.oracle);
  if (!s.grid_step.empty()) t.grid_step = Degree::parse(s.grid_step);
  t.max_domain = s.max_domain;
  return t;
}

std::string model_text(const EmittedModel& m) {
  std::string out = "; unraveled to depth " + std::to_string(m.depth) +
                    "; every axiom holds at elements:";
  for (std::size_t e = 0; e < m.interior.size(); ++e) {
    if (m.interior[e]) out += " " + std::to_string(e);
  }
  return out + "\n" + print_model(m.model);
}

int finish(const Settings& s, const TaskReport& r, const char* yes,
           const char* no) {
  if (!s.emit_reduction.empty()) spit(s.emit_reduction, r.reduction);
  if (!s.emit_model.empty()) {
    spit(s.emit_model, r.model ? model_text(*r.model)
                               : std::string("; no model: inconsistent\n"));
  }
  if (!r.oracle.empty()) std::cerr << r.oracle << "\n";
  if (s.stats) {
    const TableauStats& t = r.tableau_stats;
    std::cerr << "red(O): " << r.reduction_stats.total() << " axioms; tableau: "
              << t.nodes << " nodes, " << t.blocked << " blocked, "
              << t.cache_hits << " reused, " << t.sat_calls << " SAT calls\n";
  }
  std::cout << (r.positive ? yes : no) << "\n";
  return r.positive ? 0 : 1;
}

FuzzyOntology load(const Settings& s, const std::string& path) {
  if (path.empty()) return {};
  return parse_ontology(slurp(path), parse_options(s));
}

int run(const std::string& cmd, const Settings& s) {
  if (cmd == "check") {
    return finish(s, decide_consistency(load(s, s.input), task_options(s)),
                  "CONSISTENT", "INCONSISTENT");
  }
  if (cmd == "sat") {
    if (s.terms.size() != 2) throw Error("sat expects CONCEPT DEGREE");
    return finish(s,
                  decide_satisfiability(parse_concept(s.terms[0]),
                                        Degree::parse(s.terms[1]),
                                        load(s, s.tbox), task_options(s),
                                        atmost_mode(s)),
                  "SATISFIABLE", "UNSATISFIABLE");
  }
  if (cmd == "subsumes") {
    if (s.terms.size() != 3) throw Error("subsumes expects C D DEGREE");
    return finish(s,
                  decide_subsumption(parse_concept(s.terms[0]),
                                     parse_concept(s.terms[1]),
                                     Degree::parse(s.terms[2]),
                                     load(s, s.tbox), task_options(s),
                                     atmost_mode(s)),
                  "SUBSUMED", "NOT SUBSUMED");
  }
  // reduce
  ReduceOptions ro;
  ro.skip_trivial_transitivity = s.reduce_opt;
  Reduction red = reduce(load(s, s.input), ro);
  spit(s.emit_reduction.empty() ? "-" : s.emit_reduction,
       print_classical(red.classical()));
  return 0;
}

void shared_flags(CLI::App* c, Settings& s) {
  c->add_option("--emit-reduction", s.emit_reduction,
                "Write red(O) to PATH ('-' for stdout)");
  c->add_option("--emit-model", s.emit_model,
                "Write the extracted fuzzy model to PATH ('-' for stdout)");
  c->add_option("--oracle", s.oracle, "Cross-check with an oracle")
      ->check(CLI::IsMember({"off", "grid", "brute"}));
  c->add_option("--grid-step", s.grid_step, "Grid oracle step, e.g. 1/4");
  c->add_option("--max-domain", s.max_domain,
                "Oracle domain bound (default 2 for grid, 3 for brute)");
  c->add_option("--budget", s.budget, "Tableau node budget")
      ->capture_default_str();
  c->add_option("--depth", s.depth, "Unraveling depth for --emit-model")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c->add_option("--atmost", s.atmost, "Reading of atmost")
      ->check(CLI::IsMember({"involutive", "residual"}));
  c->add_flag("--reduce-opt", s.reduce_opt,
              "Skip transitivity instances with repeated elements");
  c->add_flag("--stats", s.stats, "Print reduction and tableau counts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gödel fuzzy ALCQ reasoner via crisp reduction"};
  app.require_subcommand(1);
  Settings s;

  auto* check = app.add_subcommand("check", "Decide local consistency");
  check->add_option("file", s.input, "Ontology file")->required();
  auto* sat = app.add_subcommand("sat", "Is C satisfiable to degree q?");
  sat->add_option("terms", s.terms, "CONCEPT DEGREE")->required();
  sat->add_option("--tbox", s.tbox, "TBox file");
  auto* subsumes =
      app.add_subcommand("subsumes", "Is C subsumed by D to degree q?");
  subsumes->add_option("terms", s.terms, "C D DEGREE")->required();
  subsumes->add_option("--tbox", s.tbox, "TBox file");
  auto* reduce_cmd = app.add_subcommand("reduce", "Print red(O)");
  reduce_cmd->add_option("file", s.input, "Ontology file")->required();
  for (CLI::App* c : {check, sat, subsumes, reduce_cmd}) shared_flags(c, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), s);
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: budget exhausted: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
