// qf1ca: validate, run, sweep, build and transform automaton files.
// Exit codes: 0 pass, 1 semantic failure, 2 usage or parse failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qf1ca/qf1ca.hpp"

using namespace qf1ca;

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kUsage = 2;

io::AnyAutomaton load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return io::parse_automaton(text.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text << '\n';
}

std::string config_name(const AutomatonHeader& h, const Configuration& c) {
  return h.states.at(c.state) + "@" + std::to_string(c.counter);
}

std::vector<std::string> words_up_to(const std::string& alphabet, std::size_t k) {
  std::vector<std::string> out{""};
  for (std::size_t begin = 0, len = 1; len <= k; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

struct ValidateArgs {
  std::string file;
  double tol = kDefaultTol;
  bool strict = true;
  int oracle_maxlen = -1;
};

int cmd_validate(const ValidateArgs& args) {
  const io::AnyAutomaton any = load(args.file);
  const GeneralQf1ca a = io::as_general(any);
  bool ok = true;

  std::vector<StructureViolation> structure =
      std::visit([](const auto& x) { return validate_structure(x); }, any);
  for (const auto& v : structure) {
    std::cout << "structure " << to_string(v.kind) << ": " << v.detail << '\n';
    ok = false;
  }
  if (const auto* s = std::get_if<SimpleQf1ca>(&any)) {
    const SimpleReport rep = check_simple(*s, args.tol);
    for (const auto& f : rep.failures) {
      std::cout << "unitary V(" << f.symbol.ch() << "," << sign_bit(f.sign)
                << ") residual " << io::format_prob(f.residual) << '\n';
      ok = false;
    }
  }
  const ConditionReport rep = check_conditions(a, args.tol, args.strict);
  for (const auto& v : rep.violations) {
    std::cout << "condition (" << v.condition << ") symbol " << v.symbol.ch() << " signs "
              << sign_bit(v.s1) << "," << sign_bit(v.s2) << " states " << a.header.states[v.q1] << ","
              << a.header.states[v.q2] << " residual " << io::format_prob(v.residual) << '\n';
  }
  ok = ok && rep.ok();
  std::cout << "conditions (" << (args.strict ? "strict" : "literal") << "): "
            << (rep.ok() ? "ok" : "violated") << ", max residual " << io::format_prob(rep.max_residual)
            << '\n';

  if (args.oracle_maxlen >= 0) {
    double worst = 0.0;
    std::string worst_word;
    const Counter bound = args.oracle_maxlen + 2;
    for (const auto& w : words_up_to(a.header.alphabet, static_cast<std::size_t>(args.oracle_maxlen))) {
      const double r = isometry_oracle(a, w, bound);
      if (r > worst) {
        worst = r;
        worst_word = w;
      }
    }
    const bool oracle_ok = worst <= args.tol;
    std::cout << "isometry oracle (words <= " << args.oracle_maxlen << ", K = " << bound
              << "): " << (oracle_ok ? "ok" : "violated") << ", max residual " << io::format_prob(worst);
    if (!oracle_ok) std::cout << " on '" << worst_word << "'";
    std::cout << '\n';
    ok = ok && oracle_ok;
  }
  std::cout << (ok ? "valid" : "invalid") << '\n';
  return ok ? kOk : kSemantic;
}

int cmd_run(const std::string& file, const std::string& word, bool trace) {
  const GeneralQf1ca a = io::as_general(load(file));
  check_word(a.header, word);
  RunResult r;
  try {
    r = run(a, word, {.keep_vectors = trace});
  } catch (const NegativeCounter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  }
  if (trace) {
    std::cout << "step,symbol,p_accept_inc,p_reject_inc,residual_norm2,surviving\n";
    for (const auto& st : r.trace) {
      std::cout << st.step_index << ',' << st.symbol.ch() << ',' << io::format_prob(st.p_accept_inc)
                << ',' << io::format_prob(st.p_reject_inc) << ',' << io::format_prob(st.residual_norm2)
                << ',';
      bool first = true;
      for (const auto& [c, amp] : *st.surviving) {
        std::cout << (first ? "" : " ") << config_name(a.header, c) << '=' << io::format_prob(amp.real())
                  << (amp.imag() < 0 ? "" : "+") << io::format_prob(amp.imag()) << 'i';
        first = false;
      }
      std::cout << '\n';
    }
  }
  std::cout << "p_accept " << io::format_prob(r.p_accept) << '\n'
            << "p_reject " << io::format_prob(r.p_reject) << '\n'
            << "p_residual " << io::format_prob(r.p_residual) << '\n'
            << "p_reject_total " << io::format_prob(r.p_reject_total) << '\n';
  return kOk;
}

int cmd_sweep(const std::string& file, const std::string& pattern,
              const std::vector<std::string>& ranges, const std::string& out_path) {
  const GeneralQf1ca a = io::as_general(load(file));
  io::SweepSpec spec;
  spec.pattern = pattern;
  for (const auto& r : ranges) {
    auto [name, range] = io::parse_range(r);
    if (!spec.ranges.emplace(name, range).second) throw ParseError("range for '" + name + "' given twice");
  }
  // Check every expanded word before writing anything.
  for (const auto& values : io::sweep_assignments(spec)) check_word(a.header, io::expand_pattern(spec, values));
  std::ostringstream csv;
  io::write_sweep_csv(a, spec, csv);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + out_path);
    out << csv.str();
  }
  return kOk;
}

int cmd_zoo(const std::string& name, const std::vector<std::string>& params, const std::string& emit) {
  std::map<std::string, std::string> kv;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw BadParameter("--param expects key=value, got " + p);
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  const ZooEntry e = make_zoo_entry(name, kv);
  std::cerr << e.name << ": " << e.claims << '\n';
  write_text(emit, io::emit_automaton(e.automaton));
  return kOk;
}

int cmd_transform(const std::string& file, bool mo_mm, bool nonneg, const std::string& emit) {
  if (mo_mm == nonneg) throw BadParameter("choose exactly one of --mo-to-mm and --nonnegative");
  const GeneralQf1ca a = io::as_general(load(file));
  write_text(emit, io::emit_automaton(mo_mm ? mo_to_mm(a) : eliminate_negative(a)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum finite one-counter automata toolkit"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "check well-formedness of an automaton file");
  validate->add_option("file", va.file)->required();
  validate->add_option("--tol", va.tol, "tolerance")->capture_default_str();
  validate->add_flag("--strict,!--literal", va.strict, "realizable sign pairs (default) or same-sign conditions");
  validate->add_option("--oracle-maxlen", va.oracle_maxlen, "also run the isometry oracle on all words up to this length");

  std::string file, word;
  bool trace = false;
  auto* run_cmd = app.add_subcommand("run", "run a word and print the probabilities");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("word", word, "input word (omit for the empty word)");
  run_cmd->add_flag("--trace", trace, "print one row per tape symbol");

  std::string pattern, out_path;
  std::vector<std::string> ranges;
  auto* sweep = app.add_subcommand("sweep", "tabulate a block pattern into CSV");
  sweep->add_option("file", file)->required();
  sweep->add_option("--pattern", pattern, "e.g. \"0^a 1 0^b 1 0^c\"")->required();
  sweep->add_option("--range", ranges, "e.g. a=1..3 (repeatable)");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");

  std::string name, emit;
  std::vector<std::string> params;
  auto* zoo = app.add_subcommand("zoo", "emit a built-in automaton");
  zoo->add_option("name", name)->required();
  zoo->add_option("--param", params, "key=value (repeatable)");
  zoo->add_option("--emit", emit, "output path (default stdout)");

  bool mo_mm = false, nonneg = false;
  auto* transform = app.add_subcommand("transform", "apply a construction and emit the result");
  transform->add_option("file", file)->required();
  transform->add_flag("--mo-to-mm", mo_mm, "measure-once to measure-many");
  transform->add_flag("--nonnegative", nonneg, "remove negative counter values");
  transform->add_option("--emit", emit, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(va);
    if (*run_cmd) return cmd_run(file, word, trace);
    if (*sweep) return cmd_sweep(file, pattern, ranges, out_path);
    if (*zoo) return cmd_zoo(name, params, emit);
    if (*transform) return cmd_transform(file, mo_mm, nonneg, emit);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BadParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedAcceptance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  }
  return kUsage;
}
