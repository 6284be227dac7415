#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dx/chase/chase.hpp"
#include "dx/cli/generators.hpp"
#include "dx/core/errors.hpp"
#include "dx/core/io.hpp"
#include "dx/core/table.hpp"
#include "dx/mapping/analysis.hpp"
#include "dx/mapping/parser.hpp"
#include "dx/oracle/oracle.hpp"
#include "dx/query/eval.hpp"
#include "dx/unification/unifier.hpp"

namespace fs = std::filesystem;
using namespace dx;
using json = nlohmann::json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUsage = 2, kChaseFailure = 3, kBudget = 4 };

struct Options {
  std::string mapping, facts, candidate, query, graph, out, semantics = "abd";
  std::size_t extra_constants = 2;
  std::size_t max_size = 64;
  int clique_size = 3;
  bool general = false;
  bool owa = false;
  int verbose = 0;
};

mapping::MappingProgram load_mapping(const Options& o) {
  if (o.mapping.empty()) throw CLI::ValidationError("-m", "a mapping file is required");
  return mapping::parse_mapping(read_file(o.mapping));
}
Instance load_facts(const std::string& path, const char* flag) {
  if (path.empty()) throw CLI::ValidationError(flag, "a facts file is required");
  return parse_facts(read_file(path));
}
query::Query load_query(const Options& o) {
  if (o.query.empty()) throw CLI::ValidationError("-q", "a query file is required");
  return query::parse_query(read_file(o.query));
}
oracle::DomainBudget budget_of(const Options& o) {
  oracle::DomainBudget b;
  b.extra_constants = o.extra_constants;
  b.max_instance_size = o.max_size;
  return b;
}

json facts_json(const Instance& instance) {
  json out = json::array();
  for (const auto& f : instance.sorted_for_output()) out.push_back(render_fact(f));
  return out;
}

json labels_json(const TupleLabeling& labels) {
  json out = json::object();
  for (const auto& [f, set] : labels) out[render_fact(f)] = set;
  return out;
}

json answers_json(const std::set<query::Tuple>& answers) {
  json out = json::array();
  for (const auto& t : answers) out.push_back(query::render_tuple(t));
  return out;
}

void emit(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) {
    std::cout << "# " << name << "\n" << content;
    return;
  }
  fs::create_directories(dir);
  write_file((fs::path(dir) / name).string(), content);
}

int cmd_translate(const Options& o) {
  auto result = mapping::translate_tgds(load_mapping(o));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  emit(o.out, "translated.map", mapping::serialize_mapping(result.program));
  return kTrue;
}

int cmd_chase(const Options& o) {
  const auto program = load_mapping(o);
  const auto source = load_facts(o.facts, "-i");
  if (o.owa) {
    auto result = chase::owa_chase(source, program);
    if (auto* f = std::get_if<chase::Failure>(&result)) {
      std::cerr << "chase failed in the " << chase::phase_name(f->phase) << " phase: " << f->witness << "\n";
      return kChaseFailure;
    }
    emit(o.out, "universal.facts", render_facts(canonicalize(std::get<Instance>(result)).table));
    return kTrue;
  }
  const auto outcome = chase::annotated_chase(source, program);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
  if (!outcome.succeeded()) {
    const auto& f = outcome.failure();
    std::cerr << "chase failed in the " << chase::phase_name(f.phase) << " phase: " << f.witness << "\n";
    return kChaseFailure;
  }
  const auto& rep = outcome.representative();
  if (rep.heuristic) std::cerr << "warning: annotation density > 1, the table is not a universal representative\n";
  const auto canon = canonicalize(rep.table, rep.condition, rep.labels);
  emit(o.out, "table.facts", render_facts(canon.table));
  emit(o.out, "condition.txt", render_condition(canon.condition));
  emit(o.out, "labels.txt", render_labels(canon.labels));
  return kTrue;
}

int cmd_metrics(const Options& o) {
  auto program = load_mapping(o);
  json report;
  if (!program.annotated() && !program.tgds.empty()) {
    report["gav_reducible"] = mapping::is_gav_reducible(program.tgds);
    report["full"] = mapping::all_full(program.tgds);
    program = mapping::translate_tgds(program).program;
    report["translated"] = true;
  }
  const auto density = mapping::annotation_density(program);
  const auto cardinality = mapping::annotation_cardinality(program);
  report["density"] = {{"per_relation", density.per_relation}, {"overall", density.overall}};
  report["cardinality"] = {{"per_relation", cardinality.per_relation}, {"overall", cardinality.overall}};
  json aff = json::array();
  for (const auto& p : mapping::affected_positions(program)) aff.push_back({p.relation, p.annotation, p.index});
  report["affected_positions"] = aff;
  const auto safety = mapping::check_safety(program);
  report["safe"] = safety.safe;
  report["unsafe_aegds"] = safety.offending;
  std::cout << report.dump(2) << "\n";
  return kTrue;
}

int cmd_check(const Options& o) {
  const auto program = load_mapping(o);
  const auto source = load_facts(o.facts, "-i");
  const auto target = load_facts(o.candidate, "-j");
  const auto semantics = oracle::parse_semantics(o.semantics);
  json record{{"semantics", o.semantics}};
  bool verdict = false;
  if (semantics == oracle::Semantics::Abd) {
    const auto v = oracle::check_abd_solution(source, program, target, o.general);
    verdict = v.solution;
    if (verdict) record["labeling"] = labels_json(v.labeling);
  } else if (semantics == oracle::Semantics::Inference) {
    const auto v = oracle::check_inference_solution(source, program, target);
    verdict = v.solution;
    if (verdict) {
      json per = json::array();
      for (const auto& part : v.inferred_per_tgd) per.push_back(facts_json(part));
      record["inferred_per_tgd"] = per;
    }
  } else {
    const auto solutions = oracle::enumerate_solutions(semantics, source, program, budget_of(o), target.constants());
    verdict = solutions.count(target) != 0;
  }
  record["solution"] = verdict;
  std::cout << record.dump() << "\n";
  return verdict ? kTrue : kFalse;
}

int cmd_exists(const Options& o) {
  const auto v = oracle::exists_solution_general(load_facts(o.facts, "-i"), load_mapping(o), budget_of(o));
  json record{{"exists", v.exists}, {"authoritative", v.authoritative}};
  if (v.witness) record["witness"] = facts_json(*v.witness);
  std::cout << record.dump() << "\n";
  return v.exists ? kTrue : kFalse;
}

void dump_unifiers(const Instance& table, const query::Query& q) {
  const auto target = table.to_vector();
  for (const auto& d : q.disjuncts) {
    for (const auto& u : unification::mgu_set(d.positive, target)) {
      std::cerr << "unifier for " << d.str() << ":";
      for (std::size_t i = 0; i < u.matching.size(); ++i)
        std::cerr << " " << d.positive[i].str() << "->" << target[u.matching[i].first].str() << "#"
                  << u.matching[i].second;
      std::cerr << "\n";
    }
  }
}

int cmd_eval(const Options& o) {
  const auto program = load_mapping(o);
  const auto source = load_facts(o.facts, "-i");
  const auto q = load_query(o);
  if (o.verbose > 0) {
    const auto outcome = chase::annotated_chase(source, program.annotated() ? program : mapping::translate_tgds(program).program);
    if (outcome.succeeded()) {
      std::cerr << render_instance(outcome.representative().table) << "condition: "
                << outcome.representative().condition.str() << "\n";
      if (q.mode == query::Mode::Existential) dump_unifiers(outcome.representative().table, q);
    }
  }
  const auto result = query::certain_answers(source, program, q);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "class: " << query::class_name(result.query_class) << "\n";
  switch (result.status) {
    case query::CertainAnswers::Status::NoSolutions:
      std::cerr << "no solutions: " << result.detail << "\n";
      return kChaseFailure;
    case query::CertainAnswers::Status::Unsupported:
      std::cerr << "unsupported: " << result.detail << "\n";
      return kUsage;
    case query::CertainAnswers::Status::Answers: break;
  }
  if (q.boolean()) {
    std::cout << (result.truth() ? "true" : "false") << "\n";
    return result.truth() ? kTrue : kFalse;
  }
  for (const auto& t : result.answers) std::cout << query::render_tuple(t) << "\n";
  return kTrue;
}

int cmd_oracle_enumerate(const Options& o) {
  const auto program = load_mapping(o);
  const auto source = load_facts(o.facts, "-i");
  const auto semantics = oracle::parse_semantics(o.semantics);
  const auto budget = budget_of(o);
  const auto solutions = oracle::enumerate_solutions(semantics, source, program, budget);
  for (const auto& j : solutions) {
    json record{{"semantics", o.semantics}, {"solution", facts_json(j)}, {"extra_constants", budget.extra_constants}};
    if (semantics == oracle::Semantics::Abd && o.verbose > 0)
      record["labeling"] = labels_json(oracle::check_abd_solution(source, program, j, true).labeling);
    std::cout << record.dump() << "\n";
  }
  std::cerr << solutions.size() << " solutions\n";
  return solutions.empty() ? kFalse : kTrue;
}

json oracle_record(const Options& o, const query::Query& q, const oracle::OracleAnswer& a) {
  json record{{"semantics", o.semantics},
              {"no_solutions", a.no_solutions},
              {"domain_size", a.domain_size},
              {"extra_constants", o.extra_constants},
              {"examined", a.solutions_examined}};
  if (q.boolean())
    record["certain"] = a.truth();
  else
    record["answers"] = answers_json(a.answers);
  return record;
}

int cmd_oracle_certain(const Options& o) {
  const auto q = load_query(o);
  const auto a = oracle::certain_oracle(oracle::parse_semantics(o.semantics), load_facts(o.facts, "-i"),
                                        load_mapping(o), q, budget_of(o));
  std::cout << oracle_record(o, q, a).dump() << "\n";
  if (a.no_solutions) return kFalse;
  return !q.boolean() || a.truth() ? kTrue : kFalse;
}

int cmd_oracle_compare(const Options& o) {
  const auto program = load_mapping(o);
  const auto source = load_facts(o.facts, "-i");
  const auto q = load_query(o);
  const auto fast = query::certain_answers(source, program, q);
  const auto slow = oracle::certain_oracle(oracle::parse_semantics(o.semantics), source, program, q, budget_of(o));
  json record = oracle_record(o, q, slow);
  record["pipeline_class"] = query::class_name(fast.query_class);
  bool agree = false;
  if (fast.status == query::CertainAnswers::Status::Unsupported) {
    record["pipeline"] = "unsupported";
    record["agree"] = nullptr;
    std::cout << record.dump() << "\n";
    return kUsage;
  }
  if (fast.status == query::CertainAnswers::Status::NoSolutions) {
    record["pipeline"] = "no solutions";
    agree = slow.no_solutions;
  } else {
    record["pipeline"] = answers_json(fast.answers);
    agree = !slow.no_solutions && fast.answers == slow.answers;
  }
  record["agree"] = agree;
  std::cout << record.dump() << "\n";
  return agree ? kTrue : kFalse;
}

int cmd_gen(const std::string& which, const Options& o) {
  if (o.graph.empty()) throw CLI::ValidationError("-g", "a graph file is required");
  if (o.out.empty()) throw CLI::ValidationError("-o", "an output directory is required");
  const auto g = cli::parse_graph(read_file(o.graph));
  cli::Reduction r;
  std::vector<std::pair<std::string, std::string>> params{{"graph", o.graph}};
  if (which == "three-col-exist") r = cli::gen_threecol_existence(g);
  else if (which == "three-col-check") r = cli::gen_threecol_check(g);
  else if (which == "three-col-eval") r = cli::gen_threecol_eval(g);
  else {
    r = cli::gen_clique(g, o.clique_size);
    params.emplace_back("k", std::to_string(o.clique_size));
  }
  cli::write_reduction(r, g, o.out, params);
  std::cout << r.note << "\n";
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annotated bidirectional data exchange: chase, query answering and semantics oracles"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool facts, bool query) {
    sub->add_option("-m,--mapping", o.mapping, "mapping file");
    if (facts) sub->add_option("-i,--instance", o.facts, "source facts file");
    if (query) sub->add_option("-q,--query", o.query, "query file");
  };
  auto budget = [&](CLI::App* sub) {
    sub->add_option("--budget-extra-constants", o.extra_constants, "fresh constants added to the domain");
    sub->add_option("--budget-size", o.max_size, "largest candidate instance considered");
    sub->add_option("--semantics", o.semantics, "abd, inf, owa or gcwa")
        ->check(CLI::IsMember({"abd", "inf", "owa", "gcwa"}));
  };
  int code = kTrue;

  auto* translate = app.add_subcommand("translate", "rewrite tgds and egds as abds and aegds");
  common(translate, false, false);
  translate->add_option("-o,--out", o.out, "output directory (stdout if omitted)");
  translate->callback([&] { code = cmd_translate(o); });

  auto* chase_cmd = app.add_subcommand("chase", "annotated chase: table, condition and labels");
  common(chase_cmd, true, false);
  chase_cmd->add_option("-o,--out", o.out, "output directory (stdout if omitted)");
  chase_cmd->add_flag("--owa", o.owa, "run the unidirectional chase instead");
  chase_cmd->callback([&] { code = cmd_chase(o); });

  auto* metrics = app.add_subcommand("metrics", "density, cardinality, affected positions, safety");
  common(metrics, false, false);
  metrics->callback([&] { code = cmd_metrics(o); });

  auto* check = app.add_subcommand("check-solution", "is the candidate a solution?");
  common(check, true, false);
  check->add_option("-j,--candidate", o.candidate, "candidate target facts");
  check->add_flag("--general", o.general, "use the labeling search even when labels are forced");
  budget(check);
  check->callback([&] { code = cmd_check(o); });

  auto* exists = app.add_subcommand("exists-solution", "does some solution exist?");
  common(exists, true, false);
  budget(exists);
  exists->callback([&] { code = cmd_exists(o); });

  auto* eval = app.add_subcommand("eval", "certain answers through the chase");
  common(eval, true, true);
  eval->add_flag("-v,--verbose", o.verbose, "dump the representative and unifiers");
  eval->callback([&] { code = cmd_eval(o); });

  auto* oracle_cmd = app.add_subcommand("oracle", "bounded-domain semantics oracles");
  oracle_cmd->require_subcommand(1);
  auto* enumerate = oracle_cmd->add_subcommand("enumerate", "list every solution in the bounded domain");
  common(enumerate, true, false);
  budget(enumerate);
  enumerate->add_flag("-v,--verbose", o.verbose, "include witness labelings");
  enumerate->callback([&] { code = cmd_oracle_enumerate(o); });
  auto* certain = oracle_cmd->add_subcommand("certain", "certain answers over the bounded solutions");
  common(certain, true, true);
  budget(certain);
  certain->callback([&] { code = cmd_oracle_certain(o); });
  auto* compare = oracle_cmd->add_subcommand("compare", "chase pipeline against the oracle");
  common(compare, true, true);
  budget(compare);
  compare->callback([&] { code = cmd_oracle_compare(o); });

  auto* gen = app.add_subcommand("gen", "hardness-instance generators");
  gen->require_subcommand(1);
  for (const std::string which : {"three-col-exist", "three-col-check", "three-col-eval", "clique"}) {
    auto* sub = gen->add_subcommand(which, "reduction instance for " + which);
    sub->add_option("-g,--graph", o.graph, "edge-list graph file");
    sub->add_option("-o,--out", o.out, "output directory");
    if (which == "clique") sub->add_option("-k", o.clique_size, "clique size (>= 2)");
    sub->callback([&, which] { code = cmd_gen(which, o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kTrue : kUsage;
  } catch (const dx::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const dx::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
