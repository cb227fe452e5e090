// Command line front end.  Every subcommand reads and writes the JSON
// formats from json_io.hpp; exit codes are 0 for success or a valid
// object, 1 for a refuted or invalid one, 2 for usage and input errors,
// 3 for an exhausted search budget.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ordim/adversary.hpp"
#include "ordim/constructions.hpp"
#include "ordim/dot.hpp"
#include "ordim/json_io.hpp"
#include "ordim/poset.hpp"
#include "ordim/ramsey.hpp"
#include "ordim/realizers.hpp"
#include "ordim/solvers.hpp"
#include "ordim/structure.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

long long budget_from_env() {
  const char* s = std::getenv("ORDIM_BUDGET_NODES");
  if (!s || !*s) return 10000000;
  try {
    double v = std::stod(s);
    if (v < 1) throw std::invalid_argument("nonpositive");
    return (long long)v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("ORDIM_BUDGET_NODES is not a positive number: ") + s);
  }
}

void emit(const ordim::Json& j, const std::string& out_path, bool json_stdout) {
  if (!out_path.empty()) ordim::write_json_file(out_path, j);
  if (json_stdout || out_path.empty()) std::cout << ordim::dump_canonical(j);
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
  std::string family;
  int n = 0;
  int d = 0;
  double prob = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
};

int run_gen(const GenArgs& a) {
  ordim::Poset p = [&] {
    if (a.family == "chain") return ordim::chain(a.n);
    if (a.family == "antichain") return ordim::antichain(a.n);
    if (a.family == "standard") return ordim::standard_example(a.n);
    if (a.family == "kelly")
      return a.d > 0 ? ordim::kelly_rec(a.n, a.d).poset : ordim::kelly(a.n);
    if (a.family == "core") {
      int d = a.d > 0 ? a.d : 1;
      return ordim::abstract_core(a.n, d).poset;
    }
    if (a.family == "random") return ordim::random_poset(a.n, a.prob, a.seed);
    throw std::invalid_argument("unknown family: " + a.family);
  }();
  emit(ordim::poset_to_json(p), a.out, a.json);
  if (!a.json && !a.out.empty())
    std::cout << a.family << " on " << p.size() << " elements -> " << a.out << "\n";
  return kOk;
}

// ---- verify --------------------------------------------------------------

int run_verify(const std::string& kind, const std::string& poset_path,
               const std::string& witness_path, bool json) {
  auto p = ordim::poset_from_json(ordim::read_json_file(poset_path));
  ordim::Json out;
  bool ok = false;
  if (kind == "realizer") {
    auto seqs = ordim::realizer_from_json(ordim::read_json_file(witness_path));
    auto rep = ordim::verify_realizer(p, seqs);
    ok = rep.ok;
    out["valid"] = rep.ok;
    out["size"] = seqs.size();
    if (rep.bad_sequence) out["bad_sequence"] = *rep.bad_sequence;
    if (rep.order_violation)
      out["order_violation"] = {rep.order_violation->first, rep.order_violation->second};
    if (rep.unreversed) out["unreversed"] = {rep.unreversed->first, rep.unreversed->second};
  } else if (kind == "local") {
    auto seqs = ordim::realizer_from_json(ordim::read_json_file(witness_path));
    auto rep = ordim::verify_local_realizer(p, seqs);
    ok = rep.ok;
    out["valid"] = rep.ok;
    out["size"] = seqs.size();
    if (rep.ok) {
      int mx = 0;
      for (int v : rep.mu) mx = std::max(mx, v);
      out["mu_max"] = mx;
      out["mu"] = rep.mu;
    }
    if (rep.bad_sequence) out["bad_sequence"] = *rep.bad_sequence;
    if (rep.order_violation)
      out["order_violation"] = {rep.order_violation->first, rep.order_violation->second};
    if (rep.uncovered) out["uncovered"] = {rep.uncovered->first, rep.uncovered->second};
    if (rep.unreversed) out["unreversed"] = {rep.unreversed->first, rep.unreversed->second};
  } else if (kind == "boolean") {
    auto br = ordim::boolean_realizer_from_json(ordim::read_json_file(witness_path));
    auto rep = ordim::verify_boolean_realizer(p, br);
    ok = rep.ok;
    out["valid"] = rep.ok;
    out["size"] = br.orders.size();
    if (rep.witness) {
      out["witness"] = {rep.witness->first, rep.witness->second};
      out["fingerprint"] = rep.fingerprint;
      out["expected_comparable"] = rep.expected;
    }
  } else {
    throw std::invalid_argument("unknown witness kind: " + kind);
  }
  if (json)
    std::cout << ordim::dump_canonical(out);
  else
    std::cout << kind << (ok ? " valid" : " invalid") << "\n";
  return ok ? kOk : kRefuted;
}

// ---- solve ---------------------------------------------------------------

int run_solve(const std::string& what, const std::string& poset_path,
              long long budget_nodes, const std::string& cert_path, bool json) {
  auto p = ordim::poset_from_json(ordim::read_json_file(poset_path));
  ordim::Budget budget{budget_nodes, 0};
  ordim::Json out;

  if (what == "bdim") {
    // Least k accepted by the truth-table decider; k = size never exceeds
    // the plain dimension, so the loop is bounded.
    for (int k = 1; k <= std::max(1, p.size()); ++k) {
      auto res = ordim::bdim_decide(p, k, budget);
      if (!res.decided) {
        out["exact"] = false;
        out["nodes"] = budget.used;
        if (json) std::cout << ordim::dump_canonical(out);
        else std::cout << "bdim: budget exhausted after " << budget.used << " nodes\n";
        return kBudget;
      }
      if (res.yes) {
        out["value"] = k;
        out["exact"] = true;
        out["nodes"] = budget.used;
        if (!cert_path.empty())
          ordim::write_json_file(
              cert_path, ordim::boolean_realizer_to_json({res.orders, res.tau_ones}));
        if (json) std::cout << ordim::dump_canonical(out);
        else std::cout << "bdim = " << k << "\n";
        return kOk;
      }
    }
    throw std::logic_error("no order count up to the ground size was accepted");
  }

  ordim::DimResult res = what == "dim" ? ordim::dim_exact(p, budget)
                                       : ordim::ldim_exact(p, budget);
  out["lo"] = res.lo;
  out["hi"] = res.hi;
  out["exact"] = res.exact;
  out["nodes"] = res.nodes;
  if (res.exact) out["value"] = res.lo;
  if (!cert_path.empty() && !res.certificate.empty())
    ordim::write_json_file(cert_path, ordim::realizer_to_json(res.certificate));
  if (json)
    std::cout << ordim::dump_canonical(out);
  else if (res.exact)
    std::cout << what << " = " << res.lo << "\n";
  else
    std::cout << what << " in [" << res.lo << ", " << res.hi
              << "], budget exhausted after " << res.nodes << " nodes\n";
  return res.exact ? kOk : kBudget;
}

// ---- ramsey --------------------------------------------------------------

int run_ramsey_bound(int r, int t, int m, bool json) {
  auto b = ordim::pram_bound(r, t, m);
  if (json)
    std::cout << ordim::dump_canonical(ordim::ramsey_bound_to_json(b));
  else
    std::cout << b.describe() << "\n";
  return kOk;
}

int run_ramsey_extract(const std::string& grid_path, int m, bool exact,
                       const std::string& out_path, bool json) {
  auto grid = ordim::grid_from_json(ordim::read_json_file(grid_path));
  int r = 1;
  for (int c : grid.colors) r = std::max(r, c + 1);
  std::optional<ordim::MonoBox> box;
  if (exact) {
    box = ordim::find_mono_box_exact(grid, m);
  } else {
    try {
      box = ordim::extract_mono_box(grid, r, m);
    } catch (const std::length_error&) {
      box = std::nullopt;
    }
  }
  if (!box) {
    if (json) std::cout << "{\n  \"found\": false\n}\n";
    else std::cout << "no monochromatic box of side " << m << "\n";
    return kRefuted;
  }
  if (!ordim::verify_mono_box(grid, *box, m))
    throw std::logic_error("extracted box failed its own check");
  auto j = ordim::mono_box_to_json(*box);
  j["found"] = true;
  emit(j, out_path, json);
  if (!json && !out_path.empty())
    std::cout << "box of side " << m << " in color " << box->color << " -> " << out_path << "\n";
  return kOk;
}

// ---- adversary -----------------------------------------------------------

int run_adversary_cmd(int n, int d, const std::string& realizer_path, bool canned,
                      bool constructive, const std::string& out_path, bool json) {
  auto core = ordim::abstract_core(n, d);
  std::vector<std::vector<int>> ples;
  if (canned)
    ples = ordim::cooperative_family(core);
  else
    ples = ordim::realizer_from_json(ordim::read_json_file(realizer_path));
  auto run = ordim::run_adversary(core, ples, constructive);
  auto j = ordim::adversary_run_to_json(run);
  emit(j, out_path, json);
  if (!json && !out_path.empty()) {
    if (run.success)
      std::cout << "certificate: element " << ordim::to_string(core.poset.label(run.certificate.witness))
                << " sits in " << run.certificate.ple_indexes.size() << " sequences\n";
    else
      std::cout << "refutation failed: " << ordim::failure_reason_name(run.failure.reason)
                << " at stage " << run.failure.stage << "\n";
  }
  return run.success ? kOk : kRefuted;
}

// ---- structure -----------------------------------------------------------

int run_blocks(const std::string& poset_path, bool json) {
  auto p = ordim::poset_from_json(ordim::read_json_file(poset_path));
  auto bl = ordim::blocks(p);
  if (json) {
    ordim::Json j;
    j["blocks"] = bl;
    j["count"] = bl.size();
    std::cout << ordim::dump_canonical(j);
  } else {
    std::cout << bl.size() << " blocks\n";
    for (const auto& b : bl) {
      for (size_t i = 0; i < b.size(); ++i)
        std::cout << (i ? " " : "") << ordim::to_string(p.label(b[i]));
      std::cout << "\n";
    }
  }
  return kOk;
}

int run_planar(const std::string& poset_path, bool json) {
  auto p = ordim::poset_from_json(ordim::read_json_file(poset_path));
  auto rep = ordim::is_planar(ordim::cover_graph(p));
  if (json) {
    ordim::Json j;
    j["planar"] = rep.planar;
    if (rep.planar) {
      j["faces"] = rep.faces;
    } else {
      j["obstruction_kind"] = rep.obstruction_kind;
      j["obstruction"] = ordim::Json::array();
      for (auto [x, y] : rep.obstruction) j["obstruction"].push_back({x, y});
    }
    std::cout << ordim::dump_canonical(j);
  } else if (rep.planar) {
    std::cout << "planar, " << rep.faces << " faces\n";
  } else {
    std::cout << "not planar, contains a " << rep.obstruction_kind << " subdivision\n";
  }
  return rep.planar ? kOk : kRefuted;
}

int run_treedecomp(int n, int d, const std::string& out_path, bool json) {
  auto td = ordim::kelly_tree_decomposition(n, d);
  auto g = ordim::cover_graph(ordim::kelly_rec(n, d).poset);
  auto rep = ordim::verify_tree_decomposition(g, td);
  if (!rep.ok) throw std::logic_error("built decomposition failed its own check: " + rep.reason);
  auto j = ordim::tree_decomposition_to_json(td);
  j["width"] = rep.width;
  emit(j, out_path, json);
  if (!json && !out_path.empty())
    std::cout << "width " << rep.width << " decomposition, " << td.bags.size()
              << " bags -> " << out_path << "\n";
  return kOk;
}

// ---- export --------------------------------------------------------------

int run_export(const std::string& poset_path, const std::string& out_path) {
  auto p = ordim::poset_from_json(ordim::read_json_file(poset_path));
  std::string dot = ordim::to_dot(p);
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + out_path);
    f << dot;
    std::cout << "cover graph of " << p.size() << " elements -> " << out_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poset dimension toolkit"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "print machine readable JSON on stdout");
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (analyses run single threaded today)");

  // gen
  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "construct a named poset family")->fallthrough();
  cgen->add_option("family", gen.family, "chain|antichain|standard|kelly|core|random")->required();
  cgen->add_option("--n", gen.n, "family size parameter")->required();
  cgen->add_option("--d", gen.d, "depth for kelly (recursive) and core");
  cgen->add_option("--prob", gen.prob, "edge probability for random");
  cgen->add_option("--seed", gen.seed, "seed for random");
  cgen->add_option("-o,--out", gen.out, "output poset JSON path");

  // verify
  std::string vkind, vposet, vwitness;
  auto* cver = app.add_subcommand("verify", "check a realizer against a poset")->fallthrough();
  cver->add_option("kind", vkind, "realizer|local|boolean")->required();
  cver->add_option("poset", vposet, "poset JSON path")->required();
  cver->add_option("witness", vwitness, "realizer JSON path")->required();

  // solve
  std::string skind, sposet, scert;
  double sbudget = 0;
  auto* csolve = app.add_subcommand("solve", "compute a dimension invariant")->fallthrough();
  csolve->add_option("invariant", skind, "dim|ldim|bdim")->required();
  csolve->add_option("poset", sposet, "poset JSON path")->required();
  csolve->add_option("--budget-nodes", sbudget, "search node budget (default ORDIM_BUDGET_NODES or 1e7)");
  csolve->add_option("--certificate", scert, "write the certificate JSON here");

  // ramsey
  auto* cram = app.add_subcommand("ramsey", "product Ramsey bounds and extraction")->fallthrough();
  int rr = 2, rt = 1, rm = 2;
  auto* crb = cram->add_subcommand("bound", "size that forces a monochromatic box")->fallthrough();
  crb->add_option("-r", rr, "color count")->required();
  crb->add_option("-t", rt, "grid dimension")->required();
  crb->add_option("-m", rm, "box side")->required();
  std::string rgrid, rout;
  int rem = 2;
  bool rexact = false;
  auto* cre = cram->add_subcommand("extract", "find a monochromatic box in a colored grid")->fallthrough();
  cre->add_option("--grid", rgrid, "grid JSON path")->required();
  cre->add_option("-m", rem, "box side")->required();
  cre->add_flag("--exact", rexact, "exhaustive search instead of pigeonhole extraction");
  cre->add_option("-o,--out", rout, "output box JSON path");
  cram->require_subcommand(1);

  // adversary
  int an = 2, ad = 1;
  std::string arealizer, aout;
  bool acanned = false, aconstructive = false;
  auto* cadv = app.add_subcommand("adversary", "staged refutation of a low occurrence family")->fallthrough();
  cadv->add_option("--n", an, "core width")->required();
  cadv->add_option("--d", ad, "core depth")->required();
  cadv->add_option("--realizer", arealizer, "sequence family JSON path");
  cadv->add_flag("--canned", acanned, "use the built in cooperative family");
  cadv->add_flag("--constructive-ramsey", aconstructive, "pigeonhole extraction only");
  cadv->add_option("-o,--out", aout, "write the run report here");

  // structure
  auto* cstr = app.add_subcommand("structure", "cover graph analyses")->fallthrough();
  std::string bposet;
  auto* cbl = cstr->add_subcommand("blocks", "biconnected blocks of the cover graph")->fallthrough();
  cbl->add_option("poset", bposet, "poset JSON path")->required();
  std::string pposet;
  auto* cpl = cstr->add_subcommand("planar", "planarity with a two sided witness")->fallthrough();
  cpl->add_option("poset", pposet, "poset JSON path")->required();
  int tn = 3, td = 1;
  std::string tout;
  auto* ctd = cstr->add_subcommand("treedecomp", "width 3 decomposition of a recursive kelly cover graph")->fallthrough();
  ctd->add_option("--n", tn, "kelly width")->required();
  ctd->add_option("--d", td, "recursion depth")->required();
  ctd->add_option("-o,--out", tout, "output decomposition JSON path");
  cstr->require_subcommand(1);

  // export
  std::string eposet, eout;
  auto* cexp = app.add_subcommand("export", "DOT drawing of the cover graph")->fallthrough();
  cexp->add_option("poset", eposet, "poset JSON path")->required();
  cexp->add_option("-o,--out", eout, "output DOT path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*cgen) return run_gen(gen);
    if (*cver) return run_verify(vkind, vposet, vwitness, json);
    if (*csolve) {
      long long nodes = sbudget > 0 ? (long long)sbudget : budget_from_env();
      if (skind != "dim" && skind != "ldim" && skind != "bdim")
        throw std::invalid_argument("unknown invariant: " + skind);
      return run_solve(skind, sposet, nodes, scert, json);
    }
    if (*cram) {
      if (*crb) return run_ramsey_bound(rr, rt, rm, json);
      return run_ramsey_extract(rgrid, rem, rexact, rout, json);
    }
    if (*cadv) {
      if (acanned == !arealizer.empty())
        throw std::invalid_argument("pass exactly one of --realizer and --canned");
      return run_adversary_cmd(an, ad, arealizer, acanned, aconstructive, aout, json);
    }
    if (*cstr) {
      if (*cbl) return run_blocks(bposet, json);
      if (*cpl) return run_planar(pposet, json);
      return run_treedecomp(tn, td, tout, json);
    }
    if (*cexp) return run_export(eposet, eout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ordim::Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: input too large: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
