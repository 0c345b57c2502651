#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "critgroup/closed_form.hpp"
#include "critgroup/errors.hpp"
#include "critgroup/json_io.hpp"
#include "critgroup/oracles.hpp"
#include "critgroup/pipeline.hpp"
#include "critgroup/snf.hpp"

namespace critgroup::cli {

namespace {

const char* method_name(Method m) {
  switch (m) {
    case Method::snf: return "generic-snf";
    case Method::pipeline: return "pipeline";
    case Method::closed: return "closed-form";
  }
  return "?";
}

std::string group_text(const AbelianGroup& g) { return to_string(g); }

}  // namespace

// --- group -----------------------------------------------------------------

int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<LayeredSpec> spec;
  try {
    spec = parse_spec(opt.spec);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\nusage: critgroup group n1,n2,...,nk [--method snf|pipeline|closed] [--json]\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<AbelianGroup> group;
  Integer trees;
  std::optional<PipelineRun> run;
  try {
    switch (opt.method) {
      case Method::snf: {
        const Graph g = layered_kpartite(*spec);
        group = generic_critical_group(g);
        trees = spanning_trees_matrixtree(g);
        break;
      }
      case Method::pipeline:
        run = run_pipeline(*spec);
        group = run->critical_group();
        trees = spanning_trees_formula(*spec);
        break;
      case Method::closed:
        group = closed_form(*spec);
        trees = spanning_trees_formula(*spec);
        break;
    }
  } catch (const DomainError& e) {
    err << "refused: " << method_name(opt.method) << " does not apply to " << opt.spec << ": "
        << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitFailure;
  }
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  int status = kExitOk;
  if (run && !run->ok()) {
    err << "internal consistency failure: a pipeline stage failed its checks\n";
    status = kExitFailure;
  }
  if (group_order(*group) != trees) {
    err << "internal consistency failure: group order " << group_order(*group).get_str()
        << " differs from tree count " << trees.get_str() << "\n";
    status = kExitFailure;
  }

  if (opt.json) {
    nlohmann::json j = group_to_json(*group);
    j["spec"] = to_string(*spec);
    j["method"] = method_name(opt.method);
    j["tree_count"] = integer_to_json(trees);
    j["elapsed_ms"] = elapsed_ms;
    if (run) {
      j["route"] = run->route;
      j["stages"] = nlohmann::json::array();
      for (const auto& s : run->stages) j["stages"].push_back(stage_to_json(s));
    }
    out << j.dump(2) << "\n";
  } else {
    out << "spec: " << to_string(*spec) << "\n";
    out << "K(G) = " << group_text(*group) << "\n";
    out << "trees: " << trees.get_str() << "\n";
    out << "method: " << method_name(opt.method) << "\n";
    if (run) {
      out << "route: " << run->route << "\n";
      for (const auto& s : run->stages) {
        out << "  stage " << s.stage_name << ": " << (s.ok() ? "ok" : "FAILED") << "\n";
      }
    }
  }
  return status;
}

// --- verify ----------------------------------------------------------------

namespace {

struct Range {
  std::size_t lo;
  std::size_t hi;
};

Range parse_range(const std::string& text, char name) {
  static const std::regex re(R"(^(?:([a-z])=)?(\d{1,6})(?:\.\.(\d{1,6}))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (m[1].matched && m[1].str()[0] != name)) {
    throw ParseError(std::string("bad range \"") + text + "\" (expected " + name + "=lo..hi)");
  }
  Range r{std::stoul(m[2].str()), std::stoul(m[3].matched ? m[3].str() : m[2].str())};
  if (r.lo > r.hi) throw ParseError("empty range \"" + text + "\"");
  return r;
}

std::vector<LayeredSpec> grid_specs(Range k, Range n) {
  if (k.lo < 2) throw ParseError("grid needs k >= 2");
  if (n.lo < 1) throw ParseError("grid needs n >= 1");
  const std::size_t width = n.hi - n.lo + 1;
  std::size_t total = 0;
  for (std::size_t kk = k.lo; kk <= k.hi; ++kk) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < kk && count <= kMaxGridSpecs; ++i) count *= width;
    total += count;
    if (total > kMaxGridSpecs) {
      throw ParseError("grid has more than " + std::to_string(kMaxGridSpecs) + " specs");
    }
  }
  std::vector<LayeredSpec> out;
  for (std::size_t kk = k.lo; kk <= k.hi; ++kk) {
    std::vector<std::size_t> parts(kk, n.lo);
    for (;;) {
      out.emplace_back(parts);
      std::size_t i = kk;
      while (i > 0 && parts[i - 1] == n.hi) parts[--i] = n.lo;
      if (i == 0) break;
      ++parts[i - 1];
    }
  }
  return out;
}

struct VerifyRow {
  std::string spec;
  std::string group;
  std::string trees;
  std::vector<std::string> checked;
  std::vector<std::string> notes;
  std::vector<std::string> problems;
};

VerifyRow verify_one(const LayeredSpec& spec) {
  VerifyRow row;
  row.spec = to_string(spec);
  try {
    const Graph g = layered_kpartite(spec);
    const AbelianGroup snf = generic_critical_group(g);
    row.group = group_text(snf);
    row.checked.push_back("snf");
    const Integer order = group_order(snf);
    const Integer mt = spanning_trees_matrixtree(g);
    const Integer formula = spanning_trees_formula(spec);
    row.trees = mt.get_str();
    row.checked.push_back("matrix-tree");
    row.checked.push_back("formula");
    if (mt != order) {
      row.problems.push_back("matrix-tree " + mt.get_str() + " vs snf order " + order.get_str());
    }
    if (formula != order) {
      row.problems.push_back("formula " + formula.get_str() + " vs snf order " + order.get_str());
    }

    if (!spec.all_parts_at_least_two()) {
      row.notes.push_back("pipeline/closed refused (some n_i < 2)");
      return row;
    }

    try {
      const PipelineRun run = run_pipeline(spec);
      row.checked.push_back("pipeline");
      if (!run.ok()) row.problems.push_back("pipeline stage check failed");
      if (run.critical_group() != snf) {
        row.problems.push_back("pipeline " + group_text(run.critical_group()) + " vs snf " +
                               row.group);
      }
    } catch (const std::exception& e) {
      row.problems.push_back(std::string("pipeline error: ") + e.what());
    }

    if (spec.k() > 6) {
      row.notes.push_back("closed refused (k > 6)");
      return row;
    }
    try {
      const ClosedFormTerms terms = closed_form_terms(spec);
      const AbelianGroup cf = canonicalize_cyclic(terms.cyclic_orders);
      row.checked.push_back("closed");
      if (terms.sigma) {
        row.notes.push_back("sigma1=" + terms.sigma->sigma1.get_str() +
                            " sigma2=" + terms.sigma->sigma2.get_str());
      }
      if (cf != snf) row.problems.push_back("closed " + group_text(cf) + " vs snf " + row.group);
    } catch (const std::exception& e) {
      row.problems.push_back(std::string("closed error: ") + e.what());
    }
  } catch (const std::exception& e) {
    row.problems.push_back(std::string("error: ") + e.what());
  }
  return row;
}

void print_row(std::ostream& out, const VerifyRow& row) {
  out << (row.problems.empty() ? "PASS" : "FAIL") << "  " << row.spec << "  K = " << row.group
      << "  trees=" << row.trees << "  [";
  for (std::size_t i = 0; i < row.checked.size(); ++i) out << (i ? "," : "") << row.checked[i];
  out << "]";
  for (const auto& n : row.notes) out << "  " << n;
  out << "\n";
  for (const auto& p : row.problems) out << "      " << p << "\n";
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<LayeredSpec> specs;
  try {
    if (opt.spec && !opt.grid.empty()) throw ParseError("give either a spec or --grid, not both");
    if (opt.spec) {
      specs.push_back(parse_spec(*opt.spec));
    } else if (opt.grid.size() == 2) {
      specs = grid_specs(parse_range(opt.grid[0], 'k'), parse_range(opt.grid[1], 'n'));
    } else {
      throw ParseError("verify needs a spec or --grid k=lo..hi n=lo..hi");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::sort(specs.begin(), specs.end(), [](const LayeredSpec& a, const LayeredSpec& b) {
    return a.k() != b.k() ? a.k() < b.k() : a.parts() < b.parts();
  });

  std::vector<VerifyRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, specs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < specs.size(); i = next++) rows[i] = verify_one(specs[i]);
    });
  }
  for (auto& t : pool) t.join();

  std::size_t failed = 0;
  for (const auto& row : rows) {
    print_row(out, row);
    if (!row.problems.empty()) ++failed;
  }
  out << rows.size() << " specs, " << rows.size() - failed << " passed, " << failed
      << " failed\n";
  return failed ? kExitFailure : kExitOk;
}

// --- snf -------------------------------------------------------------------

int cmd_snf(const SnfOptions& opt, std::ostream& out, std::ostream& err) {
  IntMatrix a;
  try {
    std::ifstream in(opt.path);
    if (!in) throw ParseError("cannot open \"" + opt.path + "\"");
    a = read_matrix(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  SnfResult r;
  try {
    r = smith_normal_form(a);
  } catch (const std::exception& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitFailure;
  }
  if (r.left * a * r.right != r.diagonal) {
    err << "internal consistency failure: P*A*Q differs from D\n";
    return kExitFailure;
  }
  const std::size_t m = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < m; ++i) out << i + 1 << ": " << r.diagonal(i, i).get_str() << "\n";
  if (opt.transforms) {
    out << "P:\n" << to_text(r.left) << "Q:\n" << to_text(r.right);
  }
  return kExitOk;
}

// --- export ----------------------------------------------------------------

int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<LayeredSpec> spec;
  try {
    spec = parse_spec(opt.spec);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Graph g = layered_kpartite(*spec);
  std::ofstream file(opt.dot_path);
  if (!file) {
    err << "error: cannot write \"" << opt.dot_path << "\"\n";
    return kExitUsage;
  }
  write_dot(file, g);
  file.close();
  if (!file) {
    err << "error: failed writing \"" << opt.dot_path << "\"\n";
    return kExitUsage;
  }
  out << "wrote " << opt.dot_path << ": " << g.vertex_count() << " nodes, " << g.edge_count()
      << " edges\n";
  return kExitOk;
}

// --- argv ------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical groups of layered k-partite graphs"};
  app.require_subcommand(1);

  GroupOptions group;
  auto* g = app.add_subcommand("group", "critical group of G_{n1,...,nk}");
  g->add_option("spec", group.spec, "part sizes, e.g. 2,3,4")->required();
  g->add_option("--method", group.method, "snf | pipeline | closed")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Method>{
              {"snf", Method::snf}, {"pipeline", Method::pipeline}, {"closed", Method::closed}},
          CLI::ignore_case));
  g->add_flag("--json", group.json, "JSON on stdout");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "cross-check every applicable method");
  v->add_option("spec", verify.spec, "single spec");
  v->add_option("--grid", verify.grid, "k=lo..hi n=lo..hi")->expected(2);
  v->add_option("--threads", verify.threads, "worker threads (0 = all cores)");

  SnfOptions snf;
  auto* s = app.add_subcommand("snf", "Smith normal form of a matrix file");
  s->add_option("file", snf.path, "matrix in the plain-text format")->required();
  s->add_flag("--transforms", snf.transforms, "also print P and Q");

  ExportOptions exp;
  auto* e = app.add_subcommand("export", "write the graph as DOT");
  e->add_option("spec", exp.spec, "part sizes")->required();
  e->add_option("--dot", exp.dot_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (g->parsed()) return cmd_group(group, out, err);
  if (v->parsed()) return cmd_verify(verify, out, err);
  if (s->parsed()) return cmd_snf(snf, out, err);
  return cmd_export(exp, out, err);
}

}  // namespace critgroup::cli
