// cislimit: command-line front end.
//
// Exit status: 0 when every check passes, 1 when a verification fails (the
// report is still printed), 2 on unreadable or malformed input.

#include "cislimit/cat.hpp"
#include "cislimit/fuzz.hpp"
#include "cislimit/gallery.hpp"
#include "cislimit/homology.hpp"
#include "cislimit/io.hpp"
#include "cislimit/limit.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cislimit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

void emit(const Json& j, const std::string& out) {
  const auto text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

Cis load_cis(const std::string& path) { return cis_from_json(read_json_file(path)); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_validate(const std::string& path) {
  const auto c = load_cis(path);
  const auto r = validate_cis(c);
  std::cout << "stages: " << c.size() << "\n";
  std::cout << "tail: " << (c.stationary() ? "stationary n0=" + std::to_string(c.tail().n0)
                                           : std::string("cutoff"))
            << "\n";
  for (auto i : r.empty_y) std::cout << "note: stage " << i << " has empty Y\n";
  for (const auto& e : r.issues) {
    std::cout << "stage " << e.stage << ": " << e.clause << " fails"
              << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
  }
  if (r.ok()) {
    std::cout << "inductive: " << yes_no(is_inductive(c)) << "\n";
    const auto fs = is_finitely_semicomponible(c);
    std::cout << "finitely semicomponible: " << yes_no(fs.value)
              << (fs.truncation_relative ? " (truncation-relative)" : "") << "\n";
  }
  std::cout << (r.ok() ? "valid" : "invalid") << "\n";
  return r.ok() ? exit_ok : exit_failed;
}

int cmd_limit(const std::string& path, const std::string& out, const std::string& dot) {
  const auto c = load_cis(path);
  const auto ls = build_fundamental(c);
  emit(limit_to_json(ls), out);
  if (!dot.empty()) write_file(dot, to_dot(*ls.x, "limit"));
  if (!out.empty()) std::cout << "limit: " << ls.x->size() << " points\n";
  return exit_ok;
}

int cmd_verify(const std::string& cis_path, const std::string& limit_path) {
  const auto c = load_cis(cis_path);
  const auto ls = limit_from_json(read_json_file(limit_path), c);
  const auto a = verify_limit_axioms(c, ls);
  const auto b = verify_L5_L6(c, ls);
  std::cout << a.summary();
  for (const auto& k : b.checks) {
    if (k.axiom == "L.5" || k.axiom == "L.6") {
      std::cout << k.axiom << ": " << (k.pass ? "pass" : "FAIL") << "\n";
      for (const auto& w : k.witnesses) std::cout << "  " << w << "\n";
    }
  }
  std::cout << "limit space: " << yes_no(a.passed()) << "\n";
  if (a.passed()) {
    std::cout << "weak topology: " << yes_no(has_weak_topology(c, ls)) << "\n";
    std::cout << "images closed: " << yes_no(images_closed(ls).all_closed) << "\n";
  }
  return a.passed() && a.passed() == b.passed() ? exit_ok : exit_failed;
}

int cmd_morphism(const std::string& path, bool induced) {
  const auto m = morphism_from_json(read_json_file(path));
  const auto r = validate_morphism(m);
  for (const auto& e : r.issues) {
    std::cout << "stage " << e.stage << ": " << e.clause << " fails"
              << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
  }
  std::cout << "morphism: " << (r.ok() ? "valid" : "invalid") << "\n";
  if (!r.ok()) return exit_failed;
  std::cout << "isomorphism: " << yes_no(is_cis_isomorphism(m)) << "\n";
  if (induced) {
    const auto lh = induced_fundamental_map(m);
    std::cout << "induced map: closed=" << yes_no(lh.profile().closed)
              << " continuous=" << yes_no(lh.profile().continuous)
              << " homeomorphism=" << yes_no(lh.is_homeomorphism()) << "\n";
    std::cout << map_to_json(lh).dump(2) << "\n";
  }
  return exit_ok;
}

int cmd_diagram_limit(const std::string& path, const std::string& out) {
  const auto d = diagram_from_json(read_json_file(path));
  const auto dl = cis_direct_limit(d);
  emit(cis_to_json(*dl.limit), out);
  const bool cocone = cocone_commutes(d, dl);
  const auto r = check_limit_compatibility(d);
  auto& os = out.empty() ? std::cerr : std::cout;
  os << "cocone identities: " << yes_no(cocone) << "\n";
  os << "theta continuous: " << yes_no(r.continuous) << "\n";
  os << "theta cocone identities: " << yes_no(r.cocone) << "\n";
  os << "final topology: " << yes_no(r.final_topology) << "\n";
  for (const auto& w : r.witnesses) os << "  " << w << "\n";
  return cocone && r.passed() ? exit_ok : exit_failed;
}

void print_betti(const std::string& label, const FinSpace& x, std::size_t pmax) {
  const auto b = betti_mod2(order_complex(x), pmax);
  std::cout << label << " (" << x.size() << " points):";
  for (auto v : b) std::cout << " " << v;
  std::cout << "\n";
}

int cmd_homology(const std::string& path, std::size_t pmax) {
  const auto c = load_cis(path);
  for (std::size_t i = 0; i < c.size(); ++i) {
    print_betti("X_" + std::to_string(i), c.space(i), pmax);
  }
  const auto ls = build_fundamental(c);
  print_betti("limit", *ls.x, pmax);
  return exit_ok;
}

int cmd_invariance(const std::string& path, std::size_t p, bool co) {
  const auto c = load_cis(path);
  if (!is_inductive(c)) throw InputError(path + ": the system is not inductive");
  const auto r = co ? counter_functorial_check(c, p) : functorial_invariance_check(c, p);
  std::cout << (co ? "counter-functorial " : "functorial ") << r.summary() << "\n";
  if (r.h) std::cout << "h = " << matrix_to_json(*r.h).dump() << "\n";
  return r.passed() ? exit_ok : exit_failed;
}

int cmd_gallery(const std::string& name, const std::vector<std::string>& params,
                const std::string& out) {
  const auto c = build_example({name, params});
  emit(cis_to_json(c), out);
  return validate_cis(c).ok() ? exit_ok : exit_failed;
}

int cmd_fuzz(std::size_t count, std::uint64_t seed) {
  const auto r = run_fuzz(count, seed);
  std::cout << r.text();
  return r.passed() ? exit_ok : exit_failed;
}

int cmd_search(const std::string& path, std::size_t cap) {
  const auto c = load_cis(path);
  const auto s = search_non_fundamental(c, cap);
  const char* status = s.status == SearchStatus::found  ? "found"
                       : s.status == SearchStatus::none ? "none"
                                                        : "undecided at cap";
  std::cout << "status: " << status << "\n";
  std::cout << "topologies examined: " << s.examined << "\n";
  std::cout << "non-fundamental limits: " << s.found.size() << "\n";
  for (const auto& ls : s.found) std::cout << limit_to_json(ls).dump() << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed injective systems of finite spaces and their limits"};
  app.require_subcommand(1);

  std::string in, in2, out, dot;
  std::size_t pmax = 3, p = 0, count = 200, cap = default_search_cap;
  std::uint64_t seed = 0;
  bool induced = false, co = false;
  std::string name;
  std::vector<std::string> params;

  auto* validate = app.add_subcommand("validate", "Check a system document");
  validate->add_option("cis", in, "System document")->required();

  auto* limit = app.add_subcommand("limit", "Build the fundamental limit");
  limit->add_option("cis", in, "System document")->required();
  limit->add_option("-o,--output", out, "Write the limit document here");
  limit->add_option("--dot", dot, "Write the specialization order as DOT here");

  auto* verify = app.add_subcommand("verify", "Check a candidate limit space");
  verify->add_option("cis", in, "System document")->required();
  verify->add_option("limit", in2, "Limit document")->required();

  auto* morphism = app.add_subcommand("morphism", "Check a cis-morphism");
  morphism->add_option("morphism", in, "Morphism document")->required();
  morphism->add_flag("--induced", induced, "Also build the induced fundamental map");

  auto* diagram = app.add_subcommand("diagram-limit", "Direct limit of a diagram");
  diagram->add_option("diagram", in, "Diagram document")->required();
  diagram->add_option("-o,--output", out, "Write the limit system here");

  auto* homology = app.add_subcommand("homology", "Mod-2 Betti numbers");
  homology->add_option("cis", in, "System document")->required();
  homology->add_option("--pmax", pmax, "Highest degree")->capture_default_str();

  auto* invariance = app.add_subcommand("invariance", "Functorial invariance check");
  invariance->add_option("cis", in, "Inductive system document")->required();
  invariance->add_option("--p", p, "Degree")->required();
  invariance->add_flag("--co", co, "Use cohomology (counter-functorial check)");

  auto* gallery = app.add_subcommand("gallery", "Print an example system");
  gallery->add_option("name", name, "Example name")->required();
  gallery->add_option("params", params, "Example parameters");
  gallery->add_option("-o,--output", out, "Write the system here");

  auto* fuzz = app.add_subcommand("fuzz", "Run the property checks on random systems");
  fuzz->add_option("--count", count, "Number of systems")->capture_default_str();
  fuzz->add_option("--seed", seed, "Random seed")->required();

  auto* search = app.add_subcommand("search", "Search for non-fundamental limits");
  search->add_option("cis", in, "System document")->required();
  search->add_option("--cap", cap, "Largest limit size searched")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*validate) return cmd_validate(in);
    if (*limit) return cmd_limit(in, out, dot);
    if (*verify) return cmd_verify(in, in2);
    if (*morphism) return cmd_morphism(in, induced);
    if (*diagram) return cmd_diagram_limit(in, out);
    if (*homology) return cmd_homology(in, pmax);
    if (*invariance) return cmd_invariance(in, p, co);
    if (*gallery) return cmd_gallery(name, params, out);
    if (*fuzz) return cmd_fuzz(count, seed);
    if (*search) return cmd_search(in, cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
