#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hs/atlas.hpp"
#include "hs/checker.hpp"
#include "hs/counter.hpp"
#include "hs/logic.hpp"
#include "hs/parser.hpp"
#include "hs/sat.hpp"

namespace {

// Input the user supplied is unusable: exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path);
}

hs::Formula formula_from(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty() && !file.empty()) throw InputError("give a formula or --file, not both");
  if (!file.empty()) return hs::parse_formula(read_file(file));
  if (inline_text.empty()) throw InputError("no formula given");
  return hs::parse_formula(inline_text);
}

long to_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw InputError("not an integer: " + s);
  }
  if (used != s.size()) throw InputError("not an integer: " + s);
  return v;
}

struct ParseArgs {
  std::string formula, file;
};

int run_parse(const ParseArgs& a) {
  std::cout << hs::render(formula_from(a.formula, a.file)) << "\n";
  return 0;
}

struct McArgs {
  std::string model, formula, formula_file;
  std::vector<long> interval;
};

int run_mc(const McArgs& a) {
  const auto model = hs::load_model(read_file(a.model));
  const auto phi = formula_from(a.formula, a.formula_file);
  const hs::Interval i{a.interval[0], a.interval[1]};
  if (i.x >= i.y) throw InputError("interval needs X < Y");
  bool value = false;
  if (model.domain().is_finite()) {
    value = hs::mc_finite(model, i, phi);
  } else {
    const auto r = hs::mc_periodic(model, i, phi);
    if (const auto* ns = std::get_if<hs::NotStabilized>(&r)) {
      std::cout << "unknown\n";
      std::cerr << "evaluation of " << hs::render(ns->subformula) << " gave up: " << ns->reason
                << "\n";
      return 1;
    }
    value = std::get<bool>(r);
  }
  std::cout << (value ? "true" : "false") << "\n";
  return value ? 0 : 1;
}

struct SatArgs {
  std::string formula, file, out;
  long finite = 0;
  unsigned threads = 1;
  std::size_t max_size = 0;
  bool verify = false;
};

int run_sat(const SatArgs& a) {
  const auto phi = formula_from(a.formula, a.file);
  hs::SatResult r;
  if (a.finite > 0) {
    r = hs::sat_bounded_finite(phi, a.finite);
  } else {
    hs::SatOptions opt;
    opt.threads = a.threads;
    opt.max_size = a.max_size;
    r = hs::sat_bbll(phi, opt);
  }
  if (std::holds_alternative<hs::Unsat>(r)) {
    std::cout << "UNSAT\n";
    return 1;
  }
  if (const auto* u = std::get_if<hs::Unknown>(&r)) {
    std::cout << "UNKNOWN\n";
    std::cerr << u->reason << "\n";
    return 1;
  }
  const auto& s = std::get<hs::Sat>(r);
  if (a.verify && !hs::check_certificate(phi, s.model, s.witness)) {
    std::cerr << "certificate failed verification\n";
    return 2;
  }
  const auto cert = hs::save_certificate(s);
  std::string target = a.out;
  if (target.empty() && !a.file.empty()) target = a.file + ".cert.ism";
  std::cout << "SAT\n";
  if (target.empty()) {
    std::cout << cert;
  } else {
    write_file(target, cert);
    std::cerr << "certificate written to " << target << "\n";
  }
  return 0;
}

struct ClassifyArgs {
  std::string cls = "sd", fragment;
};

int run_classify(const ClassifyArgs& a) {
  const auto label = hs::classify(hs::parse_fragment(a.fragment), hs::parse_class_context(a.cls));
  std::cout << hs::to_string(label) << "\n";
  return label == hs::ComplexityLabel::Undecidable ? 1 : 0;
}

struct AtlasArgs {
  std::string cls = "sd", format = "dot";
};

int run_atlas(const AtlasArgs& a) {
  const auto ctx = hs::parse_class_context(a.cls);
  if (a.format == "dot") {
    std::cout << hs::hasse_dot(ctx);
  } else if (a.format == "jsonl") {
    std::cout << hs::classification_jsonl(ctx);
  } else {
    throw InputError("unknown format " + a.format + " (dot or jsonl)");
  }
  return 0;
}

struct EncodeArgs {
  std::string ica, target = "AE";
};

int run_encode(const EncodeArgs& a) {
  const auto automaton = hs::load_ica(read_file(a.ica));
  std::string target = a.target;
  if (target == "AE") target = "A E";
  if (target == "iAB") target = "iA B";
  std::cout << hs::render(hs::encode_fragment(automaton, hs::parse_fragment(target))) << "\n";
  return 0;
}

struct BisimArgs {
  std::string left, right, fragment;
  std::vector<std::string> certify;
};

int run_bisim(const BisimArgs& a) {
  const auto m = hs::load_model(read_file(a.left));
  const auto m2 = hs::load_model(read_file(a.right));
  const auto f = hs::parse_fragment(a.fragment);
  if (!a.certify.empty()) {
    const auto x = hs::parse_modality(a.certify[0]);
    if (!x) throw InputError("unknown modality " + a.certify[0]);
    const hs::Interval i{to_long(a.certify[2]), to_long(a.certify[3])};
    const hs::Interval i2{to_long(a.certify[4]), to_long(a.certify[5])};
    const bool ok = hs::certify_undefinability(*x, f, m, m2, i, i2, a.certify[1]);
    std::cout << (ok ? "certified" : "not certified") << "\n";
    return ok ? 0 : 1;
  }
  const auto z = hs::largest_f_bisimulation(m, m2, f);
  for (const auto& [i, i2] : z.pairs) {
    std::cout << i.x << " " << i.y << " " << i2.x << " " << i2.y << "\n";
  }
  return z.pairs.empty() ? 1 : 0;
}

struct MirrorArgs {
  std::string text;
  bool fragment = false, formula = false;
};

int run_mirror(const MirrorArgs& a) {
  if (a.fragment && a.formula) throw InputError("--fragment and --formula exclude each other");
  if (!a.formula) {
    try {
      std::cout << hs::to_string(hs::mirror_fragment(hs::parse_fragment(a.text))) << "\n";
      return 0;
    } catch (const std::invalid_argument&) {
      if (a.fragment) throw;
    }
  }
  std::cout << hs::render(hs::mirror_formula(hs::parse_formula(a.text))) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval temporal logic toolkit"};
  app.require_subcommand(1, 1);

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Print the canonical form of a formula");
  parse->add_option("formula", parse_args.formula, "Formula text");
  parse->add_option("--file", parse_args.file, "Read the formula from a file");

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Model check a formula at an interval");
  mc->add_option("--model", mc_args.model, ".ism model file")->required();
  mc->add_option("--interval", mc_args.interval, "X Y")->required()->expected(2);
  mc->add_option("--formula", mc_args.formula, "Formula text");
  mc->add_option("--formula-file", mc_args.formula_file, "Read the formula from a file");

  SatArgs sat_args;
  auto* sat = app.add_subcommand("sat", "Decide satisfiability");
  sat->add_option("formula", sat_args.formula, "Formula text");
  sat->add_option("--file", sat_args.file, "Read the formula from a file");
  sat->add_option("--out", sat_args.out, "Certificate file");
  sat->add_option("--finite", sat_args.finite, "Bounded search over finite models up to N points")
      ->check(CLI::PositiveNumber);
  sat->add_option("--threads", sat_args.threads, "Worker threads, 0 for all cores");
  sat->add_option("--max-size", sat_args.max_size, "Give up beyond this Pre+Per");
  sat->add_flag("--verify", sat_args.verify, "Re-check the certificate before printing");

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Decidability and complexity of a fragment");
  classify->add_option("--class", classify_args.cls, "sd or nat");
  classify->add_option("fragment", classify_args.fragment, "Fragment, e.g. \"A B iB\"")->required();

  AtlasArgs atlas_args;
  auto* atlas = app.add_subcommand("atlas", "All fragments with their classification");
  atlas->add_option("--class", atlas_args.cls, "sd or nat");
  atlas->add_option("--format", atlas_args.format, "dot or jsonl");

  EncodeArgs encode_args;
  auto* encode = app.add_subcommand("encode", "Compile a counter automaton to a formula");
  encode->add_option("--ica", encode_args.ica, ".ica automaton file")->required();
  encode->add_option("--target", encode_args.target, "AE or iAB");

  BisimArgs bisim_args;
  auto* bisim = app.add_subcommand("bisim", "Largest bisimulation between finite models");
  bisim->add_option("--left", bisim_args.left, ".ism model file")->required();
  bisim->add_option("--right", bisim_args.right, ".ism model file")->required();
  bisim->add_option("--fragment", bisim_args.fragment, "Fragment")->required();
  bisim->add_option("--certify", bisim_args.certify, "X p x y x' y'")->expected(6);

  MirrorArgs mirror_args;
  auto* mirror = app.add_subcommand("mirror", "Time-reverse a formula or fragment");
  mirror->add_option("text", mirror_args.text, "Formula or fragment")->required();
  mirror->add_flag("--fragment", mirror_args.fragment, "Read the text as a fragment");
  mirror->add_flag("--formula", mirror_args.formula, "Read the text as a formula");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*parse) return run_parse(parse_args);
    if (*mc) return run_mc(mc_args);
    if (*sat) return run_sat(sat_args);
    if (*classify) return run_classify(classify_args);
    if (*atlas) return run_atlas(atlas_args);
    if (*encode) return run_encode(encode_args);
    if (*bisim) return run_bisim(bisim_args);
    if (*mirror) return run_mirror(mirror_args);
  } catch (const hs::ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
