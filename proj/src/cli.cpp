#include "cubemill/cli.hpp"

#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "cubemill/curvature.hpp"
#include "cubemill/dual.hpp"
#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"
#include "cubemill/gromov.hpp"
#include "cubemill/io.hpp"
#include "cubemill/paths.hpp"
#include "cubemill/tree.hpp"

namespace cubemill {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string fixture;
  std::string folding;
  std::string out;
  std::string loop;
  std::string cert;
  std::string folding_out;
  bool verify = false;
  std::optional<std::uint64_t> seed;
  int count = 100;
  int max_length = 12;
};

struct Source {
  CellComplex complex;
  std::optional<Folding> folding;
};

Source load(const Options& o) {
  if (!o.fixture.empty() && !o.input.empty()) fail(ErrorCode::InvalidArgument, "give a file or --fixture, not both");
  Source s;
  if (!o.fixture.empty()) {
    auto fx = fixture(o.fixture);
    s.complex = std::move(fx.complex);
    s.folding = std::move(fx.folding);
  } else if (!o.input.empty()) {
    s.complex = parse_complex(read_file(o.input));
  } else {
    fail(ErrorCode::InvalidArgument, "no input: give a complex file or --fixture NAME");
  }
  if (!o.folding.empty())
    s.folding = parse_folding(read_file(o.folding), s.complex.kind(), s.complex.dimension());
  return s;
}

// The given folding, or one found by search.
Folding folding_for(const Source& s) {
  if (s.folding) {
    auto check = verify_folding(s.complex, *s.folding);
    if (!check.ok) fail(ErrorCode::NotFoldable, "given labels are not a folding: " + check.reason);
    return *s.folding;
  }
  auto found = find_folding(s.complex);
  if (auto* nf = std::get_if<NotFoldable>(&found)) fail(ErrorCode::NotFoldable, nf->describe());
  return std::get<Folding>(found);
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) out << text;
  else write_file(o.out, text);
}

std::string list(const std::vector<VertexId>& v) { return format_path(EdgePath{v}); }

std::string cells(const std::vector<CellId>& v) {
  return list(std::vector<VertexId>(v.begin(), v.end()));
}

int cmd_validate(const Options& o, std::ostream& out) {
  if (!o.fixture.empty() && !o.input.empty()) fail(ErrorCode::InvalidArgument, "give a file or --fixture, not both");
  ComplexFile raw;
  if (!o.fixture.empty()) {
    auto fx = fixture(o.fixture);
    raw = {fx.complex.kind(), fx.complex.maximal_corner_lists()};
  } else if (!o.input.empty()) {
    raw = parse_complex_file(read_file(o.input));
  } else {
    fail(ErrorCode::InvalidArgument, "no input: give a complex file or --fixture NAME");
  }
  if (raw.kind == ComplexKind::Simplicial) {
    try {
      auto k = CellComplex::from_cells(raw.kind, raw.cells);
      out << "valid simplicial dim " << k.dimension() << " cells " << k.cell_count() << " vertices "
          << k.vertex_count() << "\n";
      return kOk;
    } catch (const Error& e) {
      out << "invalid " << e.what() << "\n";
      return kFailed;
    }
  }
  auto r = validate_cubical(raw.cells);
  if (!r.report.ok) {
    out << "invalid " << to_string(*r.report.violation) << ": " << r.report.message << "\n";
    for (const auto& c : r.report.offending) out << "offending " << list(c) << "\n";
    return kFailed;
  }
  const auto& k = *r.complex;
  out << "valid cubical dim " << k.dimension() << " cells " << k.cell_count() << " vertices " << k.vertex_count()
      << "\n";
  return kOk;
}

int cmd_barsub(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto sub = barycentric_subdivision(s.complex);
  emit(o, out, serialize_complex(sub.complex));
  if (!o.folding_out.empty()) write_file(o.folding_out, serialize_folding(canonical_barsub_folding(sub)));
  return kOk;
}

int cmd_fold(const Options& o, std::ostream& out) {
  auto s = load(o);
  if (s.folding && !o.folding.empty()) {
    auto check = verify_folding(s.complex, *s.folding);
    if (!check.ok) {
      out << "not a folding: " << check.reason << "\n";
      return kFailed;
    }
    out << "folding ok\n";
    return kOk;
  }
  auto found = find_folding(s.complex);
  if (auto* nf = std::get_if<NotFoldable>(&found)) {
    out << "not foldable: " << nf->describe() << "\n";
    return kFailed;
  }
  emit(o, out, serialize_folding(std::get<Folding>(found)));
  return kOk;
}

int cmd_gromov(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto h = gromov_hyperbolize(s.complex, s.folding);
  auto report = verify_gromov_properties(s.complex, h);
  if (!o.out.empty()) write_file(o.out, serialize_complex(h.complex));
  else out << serialize_complex(h.complex);
  if (!o.folding_out.empty()) write_file(o.folding_out, serialize_folding(h.folding));
  for (const auto& e : report.entries)
    out << "check " << e.name << ' ' << to_string(e.status) << (e.detail.empty() ? "" : " " + e.detail) << "\n";
  return report.all_applicable_pass() ? kOk : kFailed;
}

int cmd_links(const Options& o, std::ostream& out) {
  auto s = load(o);
  int bad = 0;
  for (VertexId v : s.complex.vertices()) {
    auto l = link_of_vertex(s.complex, v);
    auto flag = is_flag(l.complex);
    out << "vertex " << v << " link";
    for (const auto& c : l.complex.maximal_corner_lists()) out << " [" << list(c) << "]";
    out << (flag.flag ? " flag" : " not-flag [" + list(flag.witness) + "]") << "\n";
    bad += !flag.flag;
  }
  return bad ? kFailed : kOk;
}

int cmd_check_npc(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto r = check_npc(s.complex);
  if (r.ok) {
    out << "npc ok\n";
    return kOk;
  }
  out << "npc fail vertex " << *r.vertex << " clique " << list(r.clique) << "\n";
  return kFailed;
}

int cmd_hyperplanes(const Options& o, std::ostream& out) {
  auto s = load(o);
  for (const auto& h : hyperplanes(s.complex))
    out << "hyperplane " << h.id << " edges " << cells(h.edges) << " carrier " << cells(h.carrier) << "\n";
  return kOk;
}

int cmd_special(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto r = check_special(s.complex);
  for (const auto& w : r.self_intersections)
    out << "self-intersection hyperplane " << w.hyperplane << " square " << w.square << "\n";
  for (const auto& w : r.self_osculations)
    out << "self-osculation hyperplane " << w.hyperplane << " vertex " << w.vertex << " edges " << w.first << ","
        << w.second << "\n";
  for (const auto& w : r.inter_osculations)
    out << "inter-osculation hyperplanes " << w.first << "," << w.second << " vertex " << w.vertex << " edges "
        << w.first_edge << "," << w.second_edge << " square " << w.crossing_square << "\n";
  out << (r.clean() ? "special ok\n" : "special fail\n");
  return r.clean() ? kOk : kFailed;
}

int cmd_mirrors(const Options& o, std::ostream& out) {
  auto s = load(o);
  const Folding f = folding_for(s);
  for (const auto& m : mirrors(s.complex, f)) {
    auto sep = mirror_separates(s.complex, m);
    out << "mirror " << m.id << " coordinate " << m.coordinate << " side " << m.side << " cells " << cells(m.cells)
        << " components " << sep.component_count << " framings " << sep.framings.size()
        << (sep.all_separated() ? " separating" : " non-separating") << "\n";
  }
  return kOk;
}

int cmd_dual(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto d = DualComplex::build(s.complex, folding_for(s));
  if (!o.verify) {
    emit(o, out, serialize_dual(d));
    return kOk;
  }
  if (!o.out.empty()) write_file(o.out, serialize_dual(d));
  auto r = verify_dual_axioms(d);
  for (const auto& c : r.checks)
    out << "check " << c.name << (c.ok ? " pass" : " fail") << " checked " << c.checked
        << (c.witness.empty() ? "" : " witness " + c.witness) << "\n";
  return r.ok() ? kOk : kFailed;
}

int contract_fuzz(const Options& o, const DualComplex& d, std::ostream& out) {
  std::mt19937_64 rng(*o.seed);
  int verified = 0;
  std::size_t deepest = 0, moves = 0;
  for (int i = 0; i < o.count; ++i) {
    auto loop = random_loop(d, rng, static_cast<std::size_t>(o.max_length));
    auto tree = contract_loop(d, loop);
    if (verify_contraction(d, tree)) ++verified;
    else out << "unverified loop " << format_path(loop) << "\n";
    deepest = std::max(deepest, tree.depth());
    moves += tree.move_count();
  }
  out << "loops " << o.count << " verified " << verified << " max-depth " << deepest << " moves " << moves << "\n";
  return verified == o.count ? kOk : kFailed;
}

int cmd_contract(const Options& o, std::ostream& out) {
  auto s = load(o);
  auto d = DualComplex::build(s.complex, folding_for(s));
  if (o.loop.empty()) {
    if (!o.seed) fail(ErrorCode::InvalidArgument, "give --loop, or --seed for random loops");
    return contract_fuzz(o, d, out);
  }
  auto tree = contract_loop(d, parse_loop(o.loop));
  emit(o, out, serialize_contraction(tree));
  if (o.verify && !verify_contraction(d, tree)) {
    out << "certificate does not replay\n";
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.cert.empty()) fail(ErrorCode::InvalidArgument, "verify needs --cert FILE");
  auto s = load(o);
  auto d = DualComplex::build(s.complex, folding_for(s));
  auto tree = parse_contraction(read_file(o.cert));
  if (!o.loop.empty() && parse_loop(o.loop) != tree.loop) {
    out << "certificate is for a different loop\n";
    return kFailed;
  }
  const bool ok = verify_contraction(d, tree);
  out << (ok ? "certificate verified" : "certificate rejected") << " loop " << format_path(tree.loop) << " moves "
      << tree.move_count() << "\n";
  return ok ? kOk : kFailed;
}

int cmd_tree(const Options& o, std::ostream& out) {
  auto s = load(o);
  int bad = 0;
  for (const auto& t : build_trees(s.complex, folding_for(s))) {
    out << "coordinate " << t.coordinate << " mirrors " << t.mirror_ids.size() << " components "
        << t.components.size() << " edges " << t.edges.size() << "\n";
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
      out << "  " << t.vertex_name(static_cast<int>(v)) << ":";
      for (int w : t.adjacency[v]) out << ' ' << t.vertex_name(w);
      out << "\n";
    }
    for (std::size_t k = 0; k < t.components.size(); ++k)
      out << "  C" << k << " = " << cells(t.components[k]) << "\n";
    out << "  connected " << (t.connected ? "yes" : "no") << " acyclic " << (t.acyclic ? "yes" : "no")
        << " leafless " << (t.leafless ? "yes" : "no") << (t.is_tree() ? " tree" : " not a tree") << "\n";
    if (!t.cycle.empty()) {
      out << "  cycle";
      for (int v : t.cycle) out << ' ' << t.vertex_name(v);
      out << "\n";
    }
    bad += !t.is_tree();
  }
  return bad ? kFailed : kOk;
}

int cmd_fixture(const Options& o, std::ostream& out) {
  if (o.input.empty()) {
    for (const auto& n : fixture_names()) out << n << "\n";
    return kOk;
  }
  auto fx = fixture(o.input);
  emit(o, out, serialize_complex(fx.complex));
  if (!o.folding_out.empty() && fx.folding) write_file(o.folding_out, serialize_folding(*fx.folding));
  return kOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::RepeatedCorner:
    case ErrorCode::BadCornerCount:
    case ErrorCode::MissingFace:
    case ErrorCode::UnlabeledVertex:
      return kUsage;
    default:
      return kFailed;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cube complexes, foldings, hyperbolization and dual complexes", "cubemill"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const std::vector<Command> commands = {
      {"validate", "check a complex file", cmd_validate},
      {"barsub", "barycentric subdivision", cmd_barsub},
      {"fold", "find or check a folding", cmd_fold},
      {"gromov", "hyperbolize a simplicial complex", cmd_gromov},
      {"links", "vertex links and the flag condition", cmd_links},
      {"check-npc", "Gromov link condition", cmd_check_npc},
      {"hyperplanes", "hyperplanes and carriers", cmd_hyperplanes},
      {"special-check", "hyperplane pathologies", cmd_special},
      {"mirrors", "mirrors of a folding", cmd_mirrors},
      {"dual", "dual cube complex", cmd_dual},
      {"contract", "contract an edge loop of the dual", cmd_contract},
      {"verify", "replay a contraction certificate", cmd_verify},
      {"tree", "tree of spaces per coordinate", cmd_tree},
      {"fixture", "print a built-in fixture", cmd_fixture},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", o.input, c.name == std::string("fixture") ? "fixture name" : "complex file");
    sub->add_option("--fixture", o.fixture, "built-in fixture name");
    sub->add_option("--folding", o.folding, "folding file");
    sub->add_option("--out", o.out, "write the main output here");
    sub->add_option("--folding-out", o.folding_out, "write the folding here");
    sub->add_option("--loop", o.loop, "edge loop v0,v1,...");
    sub->add_option("--cert", o.cert, "certificate file");
    sub->add_flag("--verify", o.verify, "verify the result");
    sub->add_option("--seed", o.seed, "seed for random loops");
    sub->add_option("--count", o.count, "number of random loops")->check(CLI::PositiveNumber);
    sub->add_option("--max-length", o.max_length, "length bound for random loops")->check(CLI::PositiveNumber);
    subs.push_back({sub, &c});
  }

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->fn(o, out);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      err << "Internal: " << e.what() << "\n";
      return kFailed;
    }
  }
  return kUsage;
}

}  // namespace cubemill
