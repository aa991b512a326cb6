#include "oqa/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "json.hpp"

#include "oqa/error.hpp"

#ifndef OQA_DEFAULT_CATALOG_DIR
#define OQA_DEFAULT_CATALOG_DIR "data"
#endif

namespace oqa {

using nlohmann::json;

namespace {

Scalar half() { return Scalar(Rational(1, 2)); }

std::uint32_t eij(int n, int i, int j) { return static_cast<std::uint32_t>((i - 1) * n + (j - 1)); }

SparseVec vec(std::initializer_list<std::pair<std::uint32_t, long>> entries) {
  SparseVec v;
  for (const auto& [i, c] : entries) v.emplace_back(i, Scalar(c));
  return v;
}

TensorElement tensor_from(std::vector<AlgebraPtr> legs,
                          std::initializer_list<std::pair<std::vector<std::string>, Scalar>> terms) {
  TensorElement t(std::move(legs));
  for (const auto& [labels, c] : terms) t.add_term(labels, c);
  return t;
}

}  // namespace

Scalar param_a() { return Scalar::parameter("a"); }
Scalar param_nu() { return Scalar::parameter("nu"); }

// ------------------------------------------------------------ matrices

AlgebraMap mn_automorphism(int n, const Scalar& a) {
  AlgebraPtr M = matrix_algebra(n);
  std::vector<SparseVec> images;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) images.push_back({{eij(n, i, j), a.pow(i - j)}});
  return make_map(M, M, std::move(images), true);
}

TensorElement mn_rmatrix(int n, const Scalar& a) {
  AlgebraPtr M = matrix_algebra(n);
  TensorElement p({M, M});
  const Scalar x = a - a.inverse();
  for (int i = 1; i <= n; ++i) {
    p.add_term({eij(n, i, i), eij(n, i, i)}, a);
    for (int j = i + 1; j <= n; ++j) {
      p.add_term({eij(n, i, j), eij(n, j, i)}, x);
      p.add_term({eij(n, i, i), eij(n, j, j)}, Scalar(1));
      p.add_term({eij(n, j, j), eij(n, i, i)}, Scalar(1));
    }
  }
  return p;
}

OqaCandidate mn_oqa(int n, const Scalar& a) {
  AlgebraMap f = mn_automorphism(n, a);
  return certify(make_oqa("mn_oqa(" + std::to_string(n) + ")", matrix_algebra(n), mn_rmatrix(n, a), f, f));
}

TensorElement ex34_case2_stated_inverse(const Scalar& a) {
  AlgebraPtr H = matrix_algebra(2);
  AlgebraPtr Hp = matrix_algebra(3);
  const Scalar ai = a.inverse();
  return tensor_from({H, Hp}, {{{"E11", "E11"}, ai},
                               {{"E22", "E22"}, ai},
                               {{"E22", "E33"}, Scalar(1)},
                               {{"E22", "E11"}, Scalar(1)},
                               {{"E11", "E22"}, Scalar(1)},
                               {{"E11", "E33"}, Scalar(1)},
                               {{"E12", "E21"}, ai - a}});
}

Nonuple ex34_nonuple(int which_case, const Scalar& a) {
  AlgebraPtr H = matrix_algebra(2);
  AlgebraPtr Hp = matrix_algebra(3);
  TensorElement r;
  std::optional<TensorElement> R;
  if (which_case == 1) {
    r = tensor_from({H, Hp}, {{{"E11", "E11"}, Scalar(1)},
                              {{"E22", "E22"}, Scalar(1)},
                              {{"E22", "E33"}, Scalar(-1)},
                              {{"E22", "E11"}, Scalar(-1)},
                              {{"E11", "E22"}, Scalar(-1)},
                              {{"E11", "E33"}, Scalar(-1)}});
    R = r;
  } else if (which_case == 2) {
    r = tensor_from({H, Hp}, {{{"E11", "E11"}, a},
                              {{"E22", "E22"}, a},
                              {{"E22", "E33"}, Scalar(1)},
                              {{"E22", "E11"}, Scalar(1)},
                              {{"E11", "E22"}, Scalar(1)},
                              {{"E11", "E33"}, Scalar(1)},
                              {{"E12", "E21"}, a - a.inverse()}});
    R = ex34_case2_stated_inverse(a);
  } else {
    throw Error("UnknownFixture", "the matrix nonuple has cases 1 and 2");
  }
  AlgebraMap f = mn_automorphism(2, a);
  AlgebraMap fp = mn_automorphism(3, a);
  Nonuple n{"ex34_nonuple_case" + std::to_string(which_case),
            H,
            Hp,
            mn_rmatrix(2, a),
            mn_rmatrix(3, a),
            std::move(r),
            f,
            f,
            fp,
            fp,
            std::nullopt,
            std::nullopt,
            std::move(R),
            false};
  return certify(std::move(n));
}

// ------------------------------------------------- Sweedler and KZ2

AlgebraPtr sweedler_algebra() {
  static const AlgebraPtr A = [] {
    // Basis 1, g, x, gx with g² = 1, x² = 0, xg = −gx.
    enum : std::uint32_t { e1, g, x, gx };
    std::vector<SparseVec> mul(16);
    auto set = [&](std::uint32_t i, std::uint32_t j, SparseVec v) { mul[i * 4 + j] = std::move(v); };
    for (std::uint32_t i = 0; i < 4; ++i) {
      set(e1, i, vec({{i, 1}}));
      set(i, e1, vec({{i, 1}}));
    }
    set(g, g, vec({{e1, 1}}));
    set(g, x, vec({{gx, 1}}));
    set(g, gx, vec({{x, 1}}));
    set(x, g, vec({{gx, -1}}));
    set(gx, g, vec({{x, -1}}));
    return make_algebra("H4", {"1", "g", "x", "gx"}, std::move(mul), vec({{e1, 1}}));
  }();
  return A;
}

AlgebraPtr kz2_algebra() {
  static const AlgebraPtr A =
      make_algebra("KZ2", {"1", "t"}, {vec({{0, 1}}), vec({{1, 1}}), vec({{1, 1}}), vec({{0, 1}})}, vec({{0, 1}}));
  return A;
}

HopfAlgebra sweedler4_hopf() {
  AlgebraPtr A = sweedler_algebra();
  std::vector<TensorElement> delta{
      tensor_from({A, A}, {{{"1", "1"}, Scalar(1)}}),
      tensor_from({A, A}, {{{"g", "g"}, Scalar(1)}}),
      tensor_from({A, A}, {{{"1", "x"}, Scalar(1)}, {{"x", "g"}, Scalar(1)}}),
      tensor_from({A, A}, {{{"g", "gx"}, Scalar(1)}, {{"gx", "1"}, Scalar(1)}}),
  };
  // S(g) = g, S(x) = gx, S(gx) = −x.
  AlgebraMap S(A, A, {vec({{0, 1}}), vec({{1, 1}}), vec({{3, 1}}), vec({{2, -1}})});
  return certify(make_hopf("sweedler4", A, std::move(delta), {Scalar(1), Scalar(1), Scalar(0), Scalar(0)}, S));
}

HopfAlgebra kz2_hopf() {
  AlgebraPtr A = kz2_algebra();
  std::vector<TensorElement> delta{tensor_from({A, A}, {{{"1", "1"}, Scalar(1)}}),
                                   tensor_from({A, A}, {{{"t", "t"}, Scalar(1)}})};
  return certify(make_hopf("kz2", A, std::move(delta), {Scalar(1), Scalar(1)}, identity_map(A)));
}

TensorElement sweedler_rmatrix(const Scalar& nu) {
  AlgebraPtr A = sweedler_algebra();
  const Scalar h = half();
  const Scalar hn = nu * h;
  return tensor_from({A, A}, {{{"1", "1"}, h},
                              {{"1", "g"}, h},
                              {{"g", "1"}, h},
                              {{"g", "g"}, -h},
                              {{"x", "x"}, hn},
                              {{"x", "gx"}, hn},
                              {{"gx", "gx"}, hn},
                              {{"gx", "x"}, -hn}});
}

TensorElement kz2_rmatrix() {
  AlgebraPtr A = kz2_algebra();
  const Scalar h = half();
  return tensor_from({A, A}, {{{"1", "1"}, h}, {{"1", "t"}, h}, {{"t", "1"}, h}, {{"t", "t"}, -h}});
}

TensorElement ex45_weak_r() {
  const Scalar h = half();
  return tensor_from({sweedler_algebra(), kz2_algebra()},
                     {{{"1", "1"}, h}, {{"1", "t"}, h}, {{"g", "1"}, h}, {{"g", "t"}, -h}});
}

namespace {

// U(1) = 1, U(g) = g, U(x) = −x, U(gx) = xg = −gx.
AlgebraMap ex45_U() {
  AlgebraPtr A = sweedler_algebra();
  return make_map(A, A, {vec({{0, 1}}), vec({{1, 1}}), vec({{2, -1}}), vec({{3, -1}})}, true);
}

}  // namespace

OqaCandidate ex45_H_oqa(const Scalar& nu) {
  AlgebraPtr A = sweedler_algebra();
  return certify(make_oqa("ex45_H_oqa", A, sweedler_rmatrix(nu), identity_map(A), ex45_U()));
}

OqaCandidate ex45_Hprime_oqa() {
  AlgebraPtr A = kz2_algebra();
  return certify(make_oqa("ex45_Hprime_oqa", A, kz2_rmatrix(), identity_map(A), identity_map(A)));
}

Nonuple ex45_nonuple(const Scalar& nu) {
  AlgebraPtr H = sweedler_algebra();
  AlgebraPtr Hp = kz2_algebra();
  Nonuple n{"ex45_nonuple",  H, Hp, sweedler_rmatrix(nu), kz2_rmatrix(), ex45_weak_r(), identity_map(H), ex45_U(),
            identity_map(Hp), identity_map(Hp), std::nullopt, std::nullopt, std::nullopt, false};
  return certify(std::move(n));
}

TensorElement expected_ex45_alpha(const Scalar& nu) {
  AlgebraPtr H = sweedler_algebra();
  AlgebraPtr Hp = kz2_algebra();
  const Scalar h = half();
  const Scalar hn = nu * h;
  return tensor_from({H, Hp, H, Hp}, {{{"1", "1", "1", "1"}, h},
                                      {{"1", "1", "g", "t"}, h},
                                      {{"g", "t", "1", "1"}, h},
                                      {{"g", "t", "g", "t"}, -h},
                                      {{"x", "t", "gx", "1"}, hn},
                                      {{"x", "t", "x", "t"}, hn},
                                      {{"gx", "1", "gx", "1"}, hn},
                                      {{"gx", "1", "x", "t"}, -hn}});
}

// ------------------------------------------------------ expected data

std::filesystem::path catalog_dir() {
  if (const char* env = std::getenv("OQA_CATALOG_DIR"); env && *env) return env;
  return OQA_DEFAULT_CATALOG_DIR;
}

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("UnknownFixture", "cannot open fixture data file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("BadFixture", path.string() + ": " + e.what());
  }
}

}  // namespace

ExpectedMatrix load_expected(const std::string& fixture_name) {
  json j = read_json(catalog_dir() / (fixture_name + ".json"));
  try {
    ExpectedMatrix m;
    m.name = j.at("name").get<std::string>();
    m.rows = j.at("rows").get<std::size_t>();
    m.cols = j.at("cols").get<std::size_t>();
    m.ordering = parse_ordering(j.value("ordering", std::string("row-major,first-major")));
    const auto params = j.at("params").get<std::vector<std::string>>();
    std::vector<std::pair<VarId, Scalar>> subs;
    const json substitutions = j.value("substitute", json::object());
    for (const auto& [name, expr] : substitutions.items())
      subs.emplace_back(intern_variable(name), parse_scalar(expr.get<std::string>(), params));
    auto cell = [&](const std::string& text) {
      Scalar s = parse_scalar(text, params);
      for (const auto& [v, value] : subs) s = s.substitute(v, value);
      return s;
    };
    m.cells.assign(m.rows, std::vector<Scalar>(m.cols));
    auto at = [&](std::size_t r, std::size_t c) -> Scalar& {
      if (r >= m.rows || c >= m.cols) throw Error("BadFixture", fixture_name + ": cell outside the matrix");
      return m.cells[r][c];
    };

    const std::string layout = j.at("layout").get<std::string>();
    if (layout == "blocks") {
      const auto bs = j.at("block_size").get<std::size_t>();
      for (const auto& block : j.at("blocks")) {
        const auto b = block.at("block").get<std::vector<std::size_t>>();
        for (const auto& entry : block.at("entries")) {
          Scalar v = cell(entry.at("value").get<std::string>());
          for (const auto& rc : entry.at("cells")) {
            const auto p = rc.get<std::vector<std::size_t>>();
            at((b.at(0) - 1) * bs + p.at(0) - 1, (b.at(1) - 1) * bs + p.at(1) - 1) = v;
          }
        }
      }
    } else if (layout == "rows") {
      auto rows = j.at("matrix").get<std::vector<std::vector<std::string>>>();
      // A printed row with a missing entry is only accepted together with
      // a repair record saying where the entry is restored.
      std::map<std::size_t, json> repairs;
      for (const auto& rep : j.value("row_repairs", json::array()))
        repairs[rep.at("row").get<std::size_t>()] = rep;
      if (rows.size() != m.rows) throw Error("BadFixture", fixture_name + ": wrong number of rows");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        if (auto it = repairs.find(r + 1); it != repairs.end()) {
          const auto pos = it->second.at("insert_zero_at_column").get<std::size_t>();
          if (pos == 0 || pos > row.size() + 1) throw Error("BadFixture", fixture_name + ": bad repair column");
          row.insert(row.begin() + static_cast<std::ptrdiff_t>(pos - 1), "0");
          m.transcription_notes.push_back(it->second.at("note").get<std::string>());
        }
        if (row.size() != m.cols)
          throw Error("BadFixture", fixture_name + ": row " + std::to_string(r + 1) + " has " +
                                        std::to_string(row.size()) + " entries");
        for (std::size_t c = 0; c < row.size(); ++c) at(r, c) = cell(row[c]);
      }
    } else {
      throw Error("BadFixture", fixture_name + ": unknown layout '" + layout + "'");
    }
    for (const auto& t : j.value("suspected_typos", json::array()))
      m.suspected_typos.push_back(
          {t.at("row").get<std::size_t>() - 1, t.at("col").get<std::size_t>() - 1, t.at("note").get<std::string>()});
    for (const auto& n : j.value("notes", json::array())) m.transcription_notes.push_back(n.get<std::string>());
    return m;
  } catch (const json::exception& e) {
    throw Error("BadFixture", fixture_name + ": " + e.what());
  }
}

bool DiffReport::all_recorded() const {
  for (const auto& d : diffs)
    if (!d.recorded_typo) return false;
  return true;
}

DiffReport compare_to_expected(const TensorElement& computed, const ExpectedMatrix& expected,
                               const OrderingSpec& ordering) {
  if (computed.arity() != 2 || computed.legs()[0]->dim() != expected.rows ||
      computed.legs()[1]->dim() != expected.cols)
    throw Error("ShapeMismatch", "computed element does not flatten to a " + std::to_string(expected.rows) + "×" +
                                     std::to_string(expected.cols) + " matrix");
  Matrix m = to_matrix(computed, ordering);
  DiffReport report{expected.name, ordering, {}};
  for (std::size_t r = 0; r < expected.rows; ++r)
    for (std::size_t c = 0; c < expected.cols; ++c)
      if (!(m[r][c] == expected.cells[r][c])) {
        bool recorded = false;
        for (const auto& t : expected.suspected_typos) recorded = recorded || (t.row == r && t.col == c);
        report.diffs.push_back({r, c, expected.cells[r][c], m[r][c], recorded});
      }
  return report;
}

DiffReport compare_to_expected(const TensorElement& computed, const std::string& fixture_name,
                               const OrderingSpec& ordering) {
  return compare_to_expected(computed, load_expected(fixture_name), ordering);
}

// ----------------------------------------------------------- registry

namespace {

struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(const std::string& text) {
  Call c;
  auto open = text.find('(');
  if (open == std::string::npos) {
    c.name = text;
    return c;
  }
  if (text.back() != ')') throw Error("UnknownFixture", "malformed fixture reference '" + text + "'");
  c.name = text.substr(0, open);
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      c.args.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !c.args.empty()) c.args.push_back(cur);
  return c;
}

Scalar scalar_arg(const Call& c, std::size_t i, const Scalar& fallback) {
  static const std::vector<std::string> params{"a", "nu"};
  if (i >= c.args.size()) return fallback;
  return parse_scalar(c.args[i], params);
}

int int_arg(const Call& c, std::size_t i) {
  if (i >= c.args.size()) throw Error("UnknownFixture", c.name + " needs an integer argument");
  try {
    std::size_t used = 0;
    int v = std::stoi(c.args[i], &used);
    if (used != c.args[i].size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error("UnknownFixture", c.name + ": '" + c.args[i] + "' is not an integer");
  }
}

AlgebraPtr algebra_arg(const Call& c, std::size_t i) {
  const std::string name = i < c.args.size() ? c.args[i] : "K";
  if (name == "K") return ground_field();
  if (name == "KZ2") return kz2_algebra();
  if (name == "H4" || name == "sweedler4") return sweedler_algebra();
  if (name.size() > 1 && name[0] == 'M') return matrix_algebra(std::stoi(name.substr(1)));
  throw Error("UnknownFixture", "unknown algebra '" + name + "'");
}

struct Entry {
  std::string signature;
  std::string provenance;
  std::function<FixtureObject(const Call&)> make;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"mn_oqa(n)", "matrix algebra OQA with the standard R-matrix p_{a,n} and f(E_ij) = a^(i-j) E_ij",
       [](const Call& c) -> FixtureObject {
         int n = int_arg(c, 0);
         if (n < 2) throw Error("UnknownFixture", "mn_oqa needs n >= 2");
         return mn_oqa(n, scalar_arg(c, 1, param_a()));
       }},
      {"mn_rmatrix(n)", "the R-matrix p_{a,n}",
       [](const Call& c) -> FixtureObject { return mn_rmatrix(int_arg(c, 0), scalar_arg(c, 1, param_a())); }},
      {"ex34_nonuple_case1", "M2/M3 nonuple, weak part with R = r",
       [](const Call& c) -> FixtureObject { return ex34_nonuple(1, scalar_arg(c, 0, param_a())); }},
      {"ex34_nonuple_case2", "M2/M3 nonuple, weak part with an a-dependent E12⊗E21 term",
       [](const Call& c) -> FixtureObject { return ex34_nonuple(2, scalar_arg(c, 0, param_a())); }},
      {"ex34_case2_stated_R", "stated inverse of the second M2/M3 weak part",
       [](const Call& c) -> FixtureObject { return ex34_case2_stated_inverse(scalar_arg(c, 0, param_a())); }},
      {"ex45_H_oqa(nu)", "four-dimensional OQA (H4, p(nu), id, U)",
       [](const Call& c) -> FixtureObject { return ex45_H_oqa(scalar_arg(c, 0, param_nu())); }},
      {"ex45_Hprime_oqa", "(KZ2, p', id, id)", [](const Call&) -> FixtureObject { return ex45_Hprime_oqa(); }},
      {"ex45_nonuple(nu)", "H4/KZ2 nonuple",
       [](const Call& c) -> FixtureObject { return ex45_nonuple(scalar_arg(c, 0, param_nu())); }},
      {"sweedler4_hopf", "four-dimensional Sweedler Hopf algebra",
       [](const Call&) -> FixtureObject { return sweedler4_hopf(); }},
      {"kz2_hopf", "group algebra of Z2", [](const Call&) -> FixtureObject { return kz2_hopf(); }},
      {"sweedler4_rmatrix(nu)", "universal R-matrix family of the Sweedler algebra",
       [](const Call& c) -> FixtureObject { return sweedler_rmatrix(scalar_arg(c, 0, param_nu())); }},
      {"kz2_rmatrix", "universal R-matrix of KZ2", [](const Call&) -> FixtureObject { return kz2_rmatrix(); }},
      {"ex45_weak_r", "weak R-matrix between H4 and KZ2", [](const Call&) -> FixtureObject { return ex45_weak_r(); }},
      {"expected_ex41_alpha", "expected 36×36 matrix (M2⊗M3 construction), data file",
       [](const Call&) -> FixtureObject { return load_expected("expected_ex41_alpha"); }},
      {"expected_ex43_alpha", "expected 16×16 matrix (M2⊗M2 construction), data file",
       [](const Call&) -> FixtureObject { return load_expected("expected_ex43_alpha"); }},
      {"expected_ex45_alpha(nu)", "expected four-leg element of the H4/KZ2 construction",
       [](const Call& c) -> FixtureObject { return expected_ex45_alpha(scalar_arg(c, 0, param_nu())); }},
      {"trivial_oqa(A)", "(A, 1⊗1, id, id) for A in K, KZ2, H4, M<n>",
       [](const Call& c) -> FixtureObject { return trivial_oqa(algebra_arg(c, 0)); }},
  };
  return entries;
}

std::string base_name(const std::string& signature) { return signature.substr(0, signature.find('(')); }

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.signature);
  return out;
}

Fixture catalog_get(const std::string& name) {
  Call call = parse_call(name);
  for (const auto& e : registry())
    if (base_name(e.signature) == call.name) return Fixture{name, e.make(call), e.provenance};
  throw Error("UnknownFixture", "no catalog entry named '" + call.name + "'");
}

}  // namespace oqa
