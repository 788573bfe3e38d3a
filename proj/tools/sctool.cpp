// Command-line front end: generate presentations, run validators, norm and
// quasigeodesic audits, diagram pipelines, and construction plans.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/input error,
// 3 inconclusive (a cap was exceeded before a verdict).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sc/families.hpp"
#include "sc/presentation.hpp"
#include "sc/scalednorm.hpp"
#include "sc/textio.hpp"
#include "sc/vkd.hpp"

using namespace sc;

namespace {

ExtNat parse_extnat(const std::string& s) {
  if (s == "inf") return ExtNat::infinity();
  return ExtNat(Int(s));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << text;
}

int report_exit(const Report& r) { return r.ok() ? 0 : 1; }

Target parse_target(const std::string& s) {
  if (s == "A") return Target::A;
  if (s == "B") return Target::B;
  if (s == "H") return Target::H;
  if (s == "G") return Target::G;
  throw error("unknown target " + s);
}

int cmd_gen(const std::string& m, const std::string& n, const std::string& k,
            const std::string& N, const std::string& target,
            const std::string& out_path) {
  ConstructionConfig cfg =
      example_config(Int(m), parse_extnat(n), Int(k), Int(N));
  Target t = parse_target(target);
  Presentation p = emit_presentation(cfg, t);
  std::ostringstream os;
  os << "alphabet:";
  for (const auto& s : p.alphabet.symbols()) os << ' ' << s;
  os << "\nlambda: " << textio::format_rat(p.lambda) << '\n';
  os << "# target " << target << " N=" << N << ", " << p.relators.size()
     << " relators";
  if (t == Target::G)
    os << " in 6 forms: [a,u_i] [x,u_i] [b,u_i] [y,u_i] u_i^l_i u_i*v_i^-1";
  os << '\n';
  for (const auto& r : p.relators)
    os << textio::format_word(r, p.alphabet) << '\n';
  if (out_path.empty())
    std::cout << os.str();
  else
    spill(out_path, os.str());
  return 0;
}

int cmd_validate(bool worked, const std::string& m, const std::string& n,
                 const std::string& k, const std::string& N,
                 const std::string& J, const std::string& lambda,
                 const std::string& pres_path) {
  Report all;
  if (!pres_path.empty()) {
    PresentationDoc doc = parse_presentation_doc(slurp(pres_path));
    Presentation p = expand_doc(doc);
    all = check_cprime(p);
  } else if (worked) {
    ConstructionConfig cfg =
        example_config(Int(m), parse_extnat(n), Int(k), Int(N));
    if (!lambda.empty()) cfg.lambda = textio::parse_rat(lambda);
    all = validate_family_conditions(cfg);
    Report pq = validate_pq(Int(m), parse_extnat(n), cfg.U, cfg.V, Int(J));
    for (auto& it : pq.items) all.items.push_back(it);
  } else {
    throw error("validate: need --worked-example or --pres");
  }
  std::cout << all.text();
  return report_exit(all);
}

ScaledSum parse_sum(const std::string& orders, const std::string& scalings) {
  ScaledSum g;
  for (const auto& t : split(orders, ',')) g.orders.push_back(parse_extnat(t));
  for (const auto& t : split(scalings, ','))
    g.scalings.push_back(textio::parse_rat(t));
  g.check();
  return g;
}

int cmd_norm(const std::string& orders, const std::string& scalings,
             long samples, unsigned seed, long cube_n, const std::string& cube_k,
             long cube_start) {
  ScaledSum g = parse_sum(orders, scalings);
  Report rep = check_norm_equivalences(g, samples, seed);
  std::cout << rep.text();
  int rc = report_exit(rep);
  if (cube_n > 0) {
    std::vector<long> P;
    for (long i = 0; i < cube_n; ++i) P.push_back(cube_start + i);
    CubeEmbedding ce =
        cube_embedding(g, P, g.scalings[(size_t)cube_start], Int(cube_k), cube_n);
    std::cout << (ce.certified ? "pass" : "FAIL") << " cube certificate: "
              << ce.points.size() << " points, side " << cube_k << ", dim "
              << cube_n << (ce.certified ? " (exhaustive)" : " (too large)")
              << '\n';
    if (!ce.certified && rc == 0) rc = 3;
  }
  return rc;
}

CentralExtSpec parse_ext(const std::string& alphabet,
                         const std::vector<std::string>& rels,
                         const std::string& lambda) {
  std::vector<std::string> syms = split(alphabet, ' ');
  Alphabet al(syms);
  CentralExtSpec s{al, {}, textio::parse_rat(lambda)};
  for (const auto& r : rels) {
    // u-word[;ell[;v-word]]
    auto parts = split(r, ';');
    ExtRelator er;
    er.u = textio::parse_word(parts[0], al);
    if (parts.size() > 1 && !parts[1].empty()) er.ell = Int(parts[1]);
    if (parts.size() > 2) er.v = textio::parse_word(parts[2], al);
    s.rels.push_back(er);
  }
  return s;
}

int cmd_audit(const std::string& alphabet, const std::vector<std::string>& rels,
              const std::string& lambda, const std::string& prefix,
              const std::string& powers, long radius, long states) {
  CentralExtSpec s = parse_ext(alphabet, rels, lambda);
  RleWord pre = prefix.empty() ? RleWord()
                               : textio::parse_word(prefix, s.alphabet);
  std::vector<std::pair<int, Int>> pw;
  if (!powers.empty())
    for (const auto& t : split(powers, ',')) {
      auto kv = split(t, ':');
      if (kv.size() != 2) throw error("powers: want i:k pairs");
      pw.push_back({std::stoi(kv[0]), Int(kv[1])});
    }
  AuditResult a = quasigeodesic_audit(pre, pw, s, BfsCaps{radius, states});
  std::cout << a.hypotheses.text();
  std::cout << "word length " << a.word_len.get_str() << ", norm "
            << a.norm.get_str()
            << (a.norm_exact ? " (exact)" : " (certified lower bound)")
            << ", constant " << textio::format_rat(a.constant) << '\n';
  if (a.inconclusive) {
    std::cout << "INCONCLUSIVE quasigeodesic bound: caps exceeded\n";
    return 3;
  }
  std::cout << (a.ok ? "pass" : "FAIL") << " quasigeodesic bound: ratio "
            << textio::format_rat(a.ratio) << '\n';
  return a.ok && a.hypotheses.ok() ? 0 : 1;
}

int cmd_diagram(const std::string& in_path, long cycle_rel,
                const std::string& pres_path,
                const std::vector<std::string>& ops,
                const std::string& out_path) {
  PresentationDoc doc = parse_presentation_doc(slurp(pres_path));
  Presentation pres = expand_doc(doc);
  if (in_path.empty() == (cycle_rel < 0))
    throw error("diagram: need exactly one of --in / --cycle");
  Diagram d = in_path.empty()
                  ? cycle_diagram(pres, pres.relators.at((size_t)cycle_rel))
                  : parse_diagram(slurp(in_path), pres);
  int rc = 0;
  for (const auto& op : ops) {
    auto parts = split(op, ':');
    const std::string& name = parts[0];
    auto arg = [&](size_t i) -> const std::string& {
      if (i >= parts.size()) throw error(name + ": missing argument");
      return parts[i];
    };
    if (name == "validate") {
      Report r = validate_diagram(d);
      std::cout << r.text();
      if (!r.ok()) rc = 1;
    } else if (name == "counts") {
      FaceCounts fc = face_counts(d);
      for (const auto& [rel, kap] : fc.kappa)
        std::cout << "relator " << rel << ": kappa " << kap.get_str()
                  << " sigma " << fc.sigma.at(rel).get_str() << '\n';
      std::cout << "boundary length " << boundary_length(d).get_str() << '\n';
    } else if (name == "remove-edge") {
      d = op_remove_inessential_edge(d, std::stol(arg(1)));
    } else if (name == "fold") {
      std::vector<long> faces;
      for (const auto& f : split(arg(1), '+')) faces.push_back(std::stol(f));
      d = op_remove_trivial_subdiagram(d, faces);
    } else if (name == "pad") {
      d = op_pad_vertex(d, std::stol(arg(1)), std::stol(arg(2)));
    } else if (name == "simple-boundary") {
      d = pad_to_simple_boundary(d);
    } else if (name == "quotient") {
      Diagram rep = parse_diagram(slurp(arg(2)), pres);
      d = op_quotient_face(d, std::stol(arg(1)), rep);
    } else if (name == "excise") {
      d = op_excise(d, std::stol(arg(1)), std::stol(arg(2)));
    } else if (name == "normalize") {
      long lvl = std::stol(arg(1));
      if (lvl < 1 || lvl > 4) throw error("normalize: level 1..4");
      d.aspherical = true;  // pipeline asserts the hypotheses explicitly
      d.generators_nontrivial = true;
      d = normalize(d, (Wlog)lvl);
    } else if (name == "greendlinger") {
      GreendlingerFace g = greendlinger_check(d);
      if (g.applicable)
        std::cout << "pass greendlinger: face " << g.face << " shares "
                  << g.shared.get_str() << " boundary letters\n";
      else
        std::cout << "pass greendlinger: not applicable (no bounded faces)\n";
    } else if (name == "perimeter") {
      Report r = perimeter_check(d, textio::parse_rat(arg(1)));
      std::cout << r.text();
      if (!r.ok()) rc = 1;
    } else {
      throw error("unknown diagram op " + name);
    }
  }
  if (!out_path.empty()) spill(out_path, format_diagram(d));
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact small-cancellation and diagram toolkit"};
  app.require_subcommand(1);

  std::string m = "1", n = "2", k = "14", N = "16", J = "64", target = "G";
  std::string lambda, pres_path, out_path;
  bool worked = false;

  auto* gen = app.add_subcommand("gen", "emit a presentation");
  gen->add_option("--m", m);
  gen->add_option("--n", n);
  gen->add_option("--k", k);
  gen->add_option("--N", N);
  gen->add_option("--target", target, "A|B|H|G");
  gen->add_option("--out", out_path);

  auto* val = app.add_subcommand("validate", "family / presentation checks");
  val->add_flag("--worked-example", worked,
                "validate the worked parameter choice");
  val->add_option("--m", m);
  val->add_option("--n", n);
  val->add_option("--k", k);
  val->add_option("--N", N);
  val->add_option("--J", J);
  val->add_option("--lambda", lambda);
  val->add_option("--pres", pres_path, "presentation file (check C'(lambda))");

  std::string orders, scalings, cube_k = "2";
  long samples = 1000, cube_n = 0, cube_start = 0;
  unsigned seed = 1;
  auto* nrm = app.add_subcommand("norm", "scaled-sum norm checks");
  nrm->add_option("--orders", orders, "comma list, inf allowed")->required();
  nrm->add_option("--scalings", scalings, "comma list of rationals")
      ->required();
  nrm->add_option("--samples", samples);
  nrm->add_option("--seed", seed);
  nrm->add_option("--cube-n", cube_n, "certify an n-cube when > 0");
  nrm->add_option("--cube-k", cube_k, "cube side");
  nrm->add_option("--cube-start", cube_start, "first coordinate index");

  std::string alphabet = "a x", prefix, powers;
  std::vector<std::string> rels;
  long radius = 8, states = 100000;
  auto* aud = app.add_subcommand("audit", "quasigeodesic audit");
  aud->add_option("--alphabet", alphabet, "space-separated symbols");
  aud->add_option("--rel", rels, "u-word[;ell[;v-word]] (repeatable)")
      ->required();
  aud->add_option("--lambda", lambda)->default_str("1/13");
  aud->add_option("--prefix", prefix, "prefix word");
  aud->add_option("--powers", powers, "i:k comma list");
  aud->add_option("--radius", radius);
  aud->add_option("--states", states);

  std::string in_path;
  std::vector<std::string> ops;
  long cycle_rel = -1;
  auto* dia = app.add_subcommand("diagram", "load and transform a diagram");
  dia->add_option("--in", in_path, "diagram file");
  dia->add_option("--cycle", cycle_rel,
                  "start from the one-face diagram of relator INDEX");
  dia->add_option("--pres", pres_path)->required();
  dia->add_option("--op", ops,
                  "validate | counts | remove-edge:D | fold:F+F | pad:V:F | "
                  "simple-boundary | quotient:F:FILE | excise:S:R | "
                  "normalize:L | greendlinger | perimeter:LAMBDA");
  dia->add_option("--out", out_path, "write the resulting diagram");

  auto* pln = app.add_subcommand("plan", "dimension-realization recipe");
  std::string pk = "4", pm = "4", pn = "4";
  pln->add_option("--k", pk);
  pln->add_option("--m", pm);
  pln->add_option("--n", pn);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(m, n, k, N, target, out_path);
    if (val->parsed())
      return cmd_validate(worked, m, n, k, N, J, lambda, pres_path);
    if (nrm->parsed())
      return cmd_norm(orders, scalings, samples, seed, cube_n, cube_k,
                      cube_start);
    if (aud->parsed())
      return cmd_audit(alphabet, rels, lambda.empty() ? "1/13" : lambda,
                       prefix, powers, radius, states);
    if (dia->parsed())
      return cmd_diagram(in_path, cycle_rel, pres_path, ops, out_path);
    if (pln->parsed()) {
      std::cout << plan_construction(parse_extnat(pk), parse_extnat(pm),
                                     parse_extnat(pn));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
