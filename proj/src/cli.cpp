#include "oqa/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oqa/error.hpp"
#include "oqa/serialize.hpp"

namespace oqa::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kInvalidInput = 2;

/// Raised when a command ran to completion but its verdict is negative.
struct VerdictFailure {
  std::string message;
};

struct Options {
  bool json = false;
  std::string output;
  std::string what;
  std::vector<std::string> refs;
  std::string order = "row-major,first-major";
  std::string format = "csv";
  std::string fixture;
  std::vector<std::string> sets;
};

class Runner {
 public:
  Runner(const Options& opt, std::istream& in, std::ostream& out) : opt_(opt), in_(in), out_(out) {}

  void check();
  void build();
  void export_();
  void eval();
  void catalog_list();
  void catalog_export();

 private:
  Json load(const std::string& ref);
  void emit_json(const Json& j) { out_ << j.dump(2) << "\n"; }
  ReportSink sink(const std::string& prefix);
  void finish_report(const CheckReport& report);
  const std::string& ref(std::size_t i, const char* what);

  const Options& opt_;
  std::istream& in_;
  std::ostream& out_;
};

// Catalog entries that are bare tensors get the Hopf context they need
// for the qt and weakr checks.
Json catalog_bundle(const std::string& name) {
  Fixture f = catalog_get(name);
  const std::string base = name.substr(0, name.find('('));
  if (base == "sweedler4_rmatrix") return to_json(QtBundle{sweedler4_hopf(), std::get<TensorElement>(f.object)});
  if (base == "kz2_rmatrix") return to_json(QtBundle{kz2_hopf(), std::get<TensorElement>(f.object)});
  if (base == "ex45_weak_r")
    return to_json(WeakRBundle{sweedler4_hopf(), kz2_hopf(), std::get<TensorElement>(f.object)});
  return fixture_to_json(f.object, name);
}

Json Runner::load(const std::string& ref) {
  static const std::string prefix = "catalog:";
  if (ref.rfind(prefix, 0) == 0) return catalog_bundle(ref.substr(prefix.size()));
  std::stringstream buf;
  if (ref == "-") {
    buf << in_.rdbuf();
  } else {
    std::ifstream file(ref);
    if (!file) throw Error("IoError", "cannot read '" + ref + "'");
    buf << file.rdbuf();
  }
  return parse_json(buf.str());
}

const std::string& Runner::ref(std::size_t i, const char* what) {
  if (i >= opt_.refs.size()) throw Error("UsageError", std::string("missing ") + what);
  return opt_.refs[i];
}

ReportSink Runner::sink(const std::string& prefix) {
  if (opt_.json) return {};
  return [this, prefix](const AxiomResult& r) {
    AxiomResult shown = r;
    shown.axiom = prefix + r.axiom;
    out_ << format_result(shown) << "\n" << std::flush;
  };
}

void Runner::finish_report(const CheckReport& report) {
  if (opt_.json)
    emit_json(to_json(report));
  else
    out_ << (report.passed() ? "PASS " : "FAIL ") << report.subject() << "\n";
  if (!report.passed()) {
    const AxiomResult* f = report.first_failure();
    throw VerdictFailure{f ? format_result(*f) : report.subject() + " failed"};
  }
}

void Runner::check() {
  Json j = load(ref(0, "object reference"));
  const std::string& what = opt_.what;
  if (what == "oqa") {
    finish_report(check_oqa(oqa_from_json(j), sink("")));
  } else if (what == "nonuple") {
    Nonuple n = nonuple_from_json(j);
    CheckReport report(n.name);
    report.merge("", check_nonuple(n, sink("")));
    if (report.passed()) report.merge("", derived_identities(n, sink("")));
    finish_report(report);
  } else if (what == "hopf") {
    finish_report(check_hopf(hopf_from_json(j), sink("")));
  } else if (what == "qt") {
    QtBundle b = qt_from_json(j);
    CheckReport report(b.hopf.name);
    report.merge("hopf:", check_hopf(b.hopf, sink("hopf:")));
    report.merge("", check_quasitriangular(b.hopf, b.p, sink("")));
    finish_report(report);
  } else if (what == "weakr") {
    WeakRBundle b = weakr_from_json(j);
    CheckReport report(b.H.name + "/" + b.Hp.name);
    report.merge("H:", check_hopf(b.H, sink("H:")));
    report.merge("H':", check_hopf(b.Hp, sink("H':")));
    report.merge("", check_weak_rmatrix(b.H, b.Hp, b.r, sink("")));
    finish_report(report);
  }
}

void Runner::build() {
  const std::string& what = opt_.what;
  if (what == "thm35") {
    emit_json(to_json(build_thm35(nonuple_from_json(load(ref(0, "nonuple (r)"))),
                                  nonuple_from_json(load(ref(1, "nonuple (q)"))))));
  } else if (what == "thm36") {
    emit_json(to_json(build_thm36(nonuple_from_json(load(ref(0, "nonuple"))))));
  } else if (what == "thm37") {
    emit_json(to_json(build_thm37(oqa_from_json(load(ref(0, "OQA"))))));
  } else if (what == "radford") {
    emit_json(to_json(radford_double(certify(oqa_from_json(load(ref(0, "OQA")))))));
  } else if (what == "tensor-oqa") {
    emit_json(to_json(tensor_oqa(certify(oqa_from_json(load(ref(0, "first OQA")))),
                                 certify(oqa_from_json(load(ref(1, "second OQA")))))));
  } else if (what == "bicrossed") {
    WeakRBundle w = weakr_from_json(load(ref(0, "weak R-matrix bundle")));
    if (opt_.refs.size() < 3) {
      emit_json(to_json(bicrossed_coproduct(certify(w.H), certify(w.Hp), w.r)));
      return;
    }
    QtBundle q = qt_from_json(load(ref(1, "quasitriangular bundle for H")));
    QtBundle qp = qt_from_json(load(ref(2, "quasitriangular bundle for H'")));
    auto [hopf, p] = qt_bicrossed(certify(w.H), certify(w.Hp), q.p, qp.p, w.r);
    emit_json(to_json(QtBundle{std::move(hopf), std::move(p)}));
  } else if (what == "cor39") {
    WeakRBundle w = weakr_from_json(load(ref(0, "weak R-matrix bundle")));
    QtBundle q = qt_from_json(load(ref(1, "quasitriangular bundle for H")));
    QtBundle qp = qt_from_json(load(ref(2, "quasitriangular bundle for H'")));
    if (!same_algebra(q.hopf.A, w.H.A) || !same_algebra(qp.hopf.A, w.Hp.A))
      throw Error("ComponentMismatch", "the quasitriangular bundles do not match the weak R-matrix bundle");
    emit_json(to_json(cor39_oqa(certify(w.H), certify(w.Hp), q.p, qp.p, w.r)));
  }
}

// The 2-leg element an export refers to: the r of an OQA or a tensor.
TensorElement two_leg_element(const Json& j) {
  const std::string kind = bundle_kind(j);
  if (kind == "oqa") return oqa_from_json(j).r;
  if (kind == "tensor") return tensor_from_json(j);
  throw Error("ShapeMismatch", "cannot export a '" + kind + "' bundle as a matrix");
}

void Runner::export_() {
  Json j = load(ref(0, "object reference"));
  const OrderingSpec spec = parse_ordering(opt_.order);
  if (opt_.what == "matrix") {
    Json m;
    if (bundle_kind(j) == "matrix") {
      m = j;
    } else {
      TensorElement t = two_leg_element(j);
      if (t.arity() != 2) throw Error("ShapeMismatch", "only 2-leg elements export as matrices");
      m = matrix_to_json(to_matrix(t, spec), spec);
    }
    if (opt_.format == "json") {
      emit_json(m);
      return;
    }
    for (const auto& row : m.at("cells")) {
      bool first = true;
      for (const auto& c : row) {
        out_ << (first ? "" : ",") << c.get<std::string>();
        first = false;
      }
      out_ << "\n";
    }
  } else if (opt_.what == "diff") {
    if (opt_.fixture.empty()) throw Error("UsageError", "export diff needs --fixture");
    DiffReport d = compare_to_expected(two_leg_element(j), opt_.fixture, spec);
    if (opt_.json || opt_.format == "json") {
      emit_json(to_json(d));
    } else {
      for (const auto& c : d.diffs)
        out_ << "(" << c.row + 1 << "," << c.col + 1 << ") expected " << c.expected.to_string() << ", computed "
             << c.computed.to_string() << (c.recorded_typo ? " [recorded]" : "") << "\n";
      out_ << d.diffs.size() << " differing cells under " << to_string(spec) << "\n";
    }
    if (!d.all_recorded()) throw VerdictFailure{"unrecorded differences against " + opt_.fixture};
  }
}

Assignment parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, Rational> named;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("UsageError", "--set expects NAME=RATIONAL, got '" + s + "'");
    Rational q;
    if (q.set_str(s.substr(eq + 1), 10) != 0) throw Error("ParseError", "'" + s.substr(eq + 1) + "' is not a rational");
    q.canonicalize();
    named[s.substr(0, eq)] = q;
  }
  return to_assignment(named);
}

void Runner::eval() {
  Json j = load(ref(0, "object reference"));
  EvalContext ctx(parse_sets(opt_.sets));
  const std::string kind = bundle_kind(j);
  if (kind == "oqa") {
    emit_json(to_json(evaluate(oqa_from_json(j), ctx)));
  } else if (kind == "nonuple") {
    emit_json(to_json(evaluate(nonuple_from_json(j), ctx)));
  } else if (kind == "hopf") {
    emit_json(to_json(evaluate(hopf_from_json(j), ctx)));
  } else if (kind == "qt") {
    QtBundle b = qt_from_json(j);
    emit_json(to_json(QtBundle{evaluate(b.hopf, ctx), ctx.tensor(b.p)}));
  } else if (kind == "weakr") {
    WeakRBundle b = weakr_from_json(j);
    emit_json(to_json(WeakRBundle{evaluate(b.H, ctx), evaluate(b.Hp, ctx), ctx.tensor(b.r)}));
  } else if (kind == "tensor") {
    emit_json(to_json(ctx.tensor(tensor_from_json(j)), j.value("name", "tensor")));
  } else if (kind == "algebra") {
    emit_json(to_json(ctx.algebra(algebra_from_json(j))));
  } else if (kind == "matrix") {
    std::vector<std::string> params{"a", "nu", "x"};
    Json out = j;
    for (auto& row : out.at("cells"))
      for (auto& c : row) c = ctx.scalar(parse_scalar(c.get<std::string>(), params)).to_string();
    emit_json(out);
  } else {
    throw Error("ShapeMismatch", "cannot evaluate a '" + kind + "' bundle");
  }
}

void Runner::catalog_list() {
  std::vector<std::string> names = catalog_names();
  if (opt_.json) {
    emit_json(Json(names));
    return;
  }
  for (const auto& n : names) out_ << n << "\n";
}

void Runner::catalog_export() { emit_json(catalog_bundle(ref(0, "fixture name"))); }

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact checker and builder for oriented quantum algebras", "oqa"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "Emit reports as JSON");
  app.add_option("--output", opt.output, "Write the primary output to PATH");

  auto* check = app.add_subcommand("check", "Verify the axioms of a bundle");
  check->add_option("kind", opt.what)->required()->check(CLI::IsMember({"oqa", "nonuple", "hopf", "qt", "weakr"}));
  check->add_option("refs", opt.refs, "File, '-' for stdin, or catalog:NAME")->required();

  auto* build = app.add_subcommand("build", "Run a construction and emit the certified result");
  build->add_option("kind", opt.what)
      ->required()
      ->check(CLI::IsMember({"thm35", "thm36", "thm37", "radford", "tensor-oqa", "bicrossed", "cor39"}));
  build->add_option("refs", opt.refs, "Input bundles")->required();

  auto* exp = app.add_subcommand("export", "Export a 2-leg element as a matrix, or diff it against a fixture");
  exp->add_option("kind", opt.what)->required()->check(CLI::IsMember({"matrix", "diff"}));
  exp->add_option("refs", opt.refs)->required();
  exp->add_option("--order", opt.order, "Basis ordering, e.g. row-major,first-major");
  exp->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--fixture", opt.fixture, "Expected-matrix fixture for diff");

  auto* ev = app.add_subcommand("eval", "Substitute rational parameter values and re-emit");
  ev->add_option("refs", opt.refs)->required();
  ev->add_option("--set", opt.sets, "NAME=RATIONAL")->required();

  auto* cat = app.add_subcommand("catalog", "List or export built-in fixtures");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list");
  auto* cat_export = cat->add_subcommand("export");
  cat_export->add_option("name", opt.refs)->required();

  for (auto* s : {check, build, exp, ev, cat, cat_list, cat_export}) s->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return kInvalidInput;
  }

  std::ostringstream buffered;
  std::ostream& target = opt.output.empty() ? out : buffered;
  Runner runner(opt, in, target);
  int status = kOk;
  try {
    try {
      if (*check) runner.check();
      else if (*build) runner.build();
      else if (*exp) runner.export_();
      else if (*ev) runner.eval();
      else if (*cat_list) runner.catalog_list();
      else if (*cat_export) runner.catalog_export();
    } catch (const VerdictFailure& v) {
      write_error(err, "VerdictFailed", v.message);
      status = kVerdictFailed;
    }
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what());
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    write_error(err, "ShapeMismatch", e.what());
    return kInvalidInput;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
    return kInvalidInput;
  }
  if (!opt.output.empty()) {
    std::ofstream file(opt.output, std::ios::binary);
    if (!(file << buffered.str())) {
      write_error(err, "IoError", "cannot write '" + opt.output + "'");
      return kInvalidInput;
    }
  }
  return status;
}

}  // namespace oqa::cli
