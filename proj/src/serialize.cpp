#include "oqa/serialize.hpp"

#include <algorithm>
#include <unordered_map>

#include "oqa/error.hpp"

namespace oqa {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("ShapeMismatch", std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw Error("ShapeMismatch", std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

// ------------------------------------------------------------------ writer

std::string JsonWriter::algebra(const AlgebraPtr& A) {
  if (auto it = by_name_.find(A->name); it != by_name_.end()) {
    if (!same_algebra(it->second, A))
      throw Error("ShapeMismatch", "two different algebras are both named '" + A->name + "'");
    return A->name;
  }
  for (const auto& f : A->factors) algebra(f);
  by_name_.emplace(A->name, A);
  algebras_.push_back(algebra_definition(A));
  return A->name;
}

Json JsonWriter::algebra_definition(const AlgebraPtr& A) {
  Json def = Json::object();
  def["name"] = A->name;
  def["basis"] = A->basis;
  if (A->is_tensor_product()) {
    def["factors"] = Json::array({A->factors[0]->name, A->factors[1]->name});
    return def;
  }
  if (A->matrix_order > 0) def["matrix_order"] = A->matrix_order;
  def["unit"] = vec(A, A->unit);
  Json mul = Json::array();
  for (std::uint32_t i = 0; i < A->dim(); ++i)
    for (std::uint32_t j = 0; j < A->dim(); ++j) {
      const SparseVec& out = A->product(i, j);
      if (out.empty()) continue;
      mul.push_back(Json{{"l", A->basis[i]}, {"r", A->basis[j]}, {"out", vec(A, out)}});
    }
  def["mul"] = std::move(mul);
  return def;
}

Json JsonWriter::scalar(const Scalar& s) {
  for (VarId v : s.variables()) params_.insert(variable_name(v));
  return s.to_string();
}

Json JsonWriter::vec(const AlgebraPtr& A, const SparseVec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v) out[A->basis[i]] = scalar(c);
  return out;
}

Json JsonWriter::map(const AlgebraMap& f) {
  algebra(f.source());
  algebra(f.target());
  Json images = Json::object();
  for (std::uint32_t i = 0; i < f.source()->dim(); ++i) images[f.source()->basis[i]] = vec(f.target(), f.image(i));
  return Json{{"images", std::move(images)}};
}

Json JsonWriter::tensor(const TensorElement& t) {
  Json legs = Json::array();
  for (const auto& A : t.legs()) legs.push_back(algebra(A));
  Json terms = Json::array();
  for (const auto& [idx, c] : t.terms()) terms.push_back(Json{{"idx", t.labels(idx)}, {"c", scalar(c)}});
  return Json{{"legs", std::move(legs)}, {"terms", std::move(terms)}};
}

Json JsonWriter::finish(const std::string& kind, const std::string& name, const Json& body) const {
  Json out = Json::object();
  out["kind"] = kind;
  out["name"] = name;
  out["params"] = Json(std::vector<std::string>(params_.begin(), params_.end()));
  out["algebras"] = algebras_;
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

// ------------------------------------------------------------------ reader

JsonReader::JsonReader(const Json& bundle) {
  if (!bundle.is_object()) throw Error("ShapeMismatch", "a bundle must be a JSON object");
  if (bundle.contains("params"))
    for (const auto& p : bundle.at("params")) params_.push_back(p.get<std::string>());
  if (bundle.contains("algebras"))
    for (const auto& def : bundle.at("algebras")) define(def);
}

AlgebraPtr JsonReader::define(const Json& def) {
  const std::string name = text_field(def, "name");
  std::vector<std::string> basis = field(def, "basis").get<std::vector<std::string>>();
  AlgebraPtr A;
  if (def.contains("factors")) {
    const Json& f = def.at("factors");
    if (!f.is_array() || f.size() != 2) throw Error("ShapeMismatch", "'" + name + "': factors must name two algebras");
    A = tensor_algebra(algebra(f[0]), algebra(f[1]));
    if (A->name != name || A->basis != basis)
      throw Error("ShapeMismatch", "'" + name + "' does not match the tensor product of its factors");
  } else {
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < basis.size(); ++i)
      if (!index.emplace(basis[i], i).second) throw Error("ShapeMismatch", "'" + name + "': repeated basis label");
    const std::size_t n = basis.size();
    auto lookup = [&](const std::string& label) {
      auto it = index.find(label);
      if (it == index.end()) throw Error("UnknownLabel", "algebra '" + name + "' has no basis element '" + label + "'");
      return it->second;
    };
    auto read_vec = [&](const Json& j) {
      SparseVec v;
      for (const auto& [label, c] : j.items()) v.emplace_back(lookup(label), scalar(c));
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      SparseVec out;
      for (auto& t : v)
        if (!t.second.is_zero()) out.push_back(std::move(t));
      return out;
    };
    std::vector<SparseVec> mul(n * n);
    for (const auto& entry : field(def, "mul"))
      mul[lookup(text_field(entry, "l")) * n + lookup(text_field(entry, "r"))] = read_vec(field(entry, "out"));
    A = make_algebra(name, basis, std::move(mul), read_vec(field(def, "unit")));
    if (def.contains("matrix_order")) {
      AlgebraPtr M = matrix_algebra(def.at("matrix_order").get<int>());
      if (!same_algebra(M, A)) throw Error("ShapeMismatch", "'" + name + "' is not the stated matrix algebra");
      A = M;
    } else if (same_algebra(A, ground_field())) {
      A = ground_field();
    }
  }
  if (auto it = algebras_.find(name); it != algebras_.end() && !same_algebra(it->second, A))
    throw Error("ShapeMismatch", "algebra '" + name + "' is defined twice");
  algebras_[name] = A;
  return A;
}

AlgebraPtr JsonReader::algebra(const Json& ref) {
  if (ref.is_object()) return define(ref);
  if (!ref.is_string()) throw Error("ShapeMismatch", "an algebra reference must be a name or a definition");
  const std::string name = ref.get<std::string>();
  auto it = algebras_.find(name);
  if (it == algebras_.end()) throw Error("ShapeMismatch", "algebra '" + name + "' is not defined in the bundle");
  return it->second;
}

Scalar JsonReader::scalar(const Json& j) const {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw Error("ShapeMismatch", "a scalar must be a string such as \"a - a^-1\"");
  return parse_scalar(j.get<std::string>(), params_);
}

SparseVec JsonReader::vec(const AlgebraPtr& A, const Json& j) const {
  if (!j.is_object()) throw Error("ShapeMismatch", "an element must be an object {label: scalar}");
  SparseVec v;
  for (const auto& [label, c] : j.items()) {
    Scalar s = scalar(c);
    std::uint32_t i = A->index_of(label);
    v = sparse_add(v, SparseVec{{i, s}});
  }
  return v;
}

AlgebraMap JsonReader::map(const Json& j, const AlgebraPtr& source, const AlgebraPtr& target) const {
  const Json& images = field(j, "images");
  std::vector<SparseVec> out(source->dim());
  std::vector<bool> seen(source->dim(), false);
  for (const auto& [label, img] : images.items()) {
    std::uint32_t i = source->index_of(label);
    out[i] = vec(target, img);
    seen[i] = true;
  }
  for (std::uint32_t i = 0; i < source->dim(); ++i)
    if (!seen[i]) throw Error("ShapeMismatch", "map has no image for '" + source->basis[i] + "'");
  return make_map(source, target, std::move(out), false);
}

TensorElement JsonReader::tensor(const Json& j) {
  std::vector<AlgebraPtr> legs;
  for (const auto& name : field(j, "legs")) legs.push_back(algebra(name));
  TensorElement t(legs);
  for (const auto& term : field(j, "terms")) {
    auto labels = field(term, "idx").get<std::vector<std::string>>();
    if (labels.size() != legs.size()) throw Error("ShapeMismatch", "term index does not match the number of legs");
    t.add_term(labels, scalar(field(term, "c")));
  }
  return t;
}

// ------------------------------------------------------------------ bundles

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("ParseError", std::string("invalid JSON: ") + e.what());
  }
}

std::string bundle_kind(const Json& bundle) { return text_field(bundle, "kind"); }

namespace {

void expect_kind(const Json& j, const std::string& kind) {
  std::string k = bundle_kind(j);
  if (k != kind) throw Error("ShapeMismatch", "expected a '" + kind + "' bundle, got '" + k + "'");
}

void expect_legs(const TensorElement& t, const std::vector<AlgebraPtr>& legs, const char* what) {
  if (!same_legs(t.legs(), legs)) throw Error("ShapeMismatch", std::string(what) + " lies in the wrong tensor product");
}

Json hopf_body(JsonWriter& w, const HopfAlgebra& h) {
  Json delta = Json::object();
  Json counit = Json::object();
  for (std::uint32_t i = 0; i < h.A->dim(); ++i) {
    delta[h.A->basis[i]] = w.tensor(h.delta[i]);
    counit[h.A->basis[i]] = w.scalar(h.counit[i]);
  }
  return Json{{"name", h.name},
              {"algebra", w.algebra(h.A)},
              {"delta", std::move(delta)},
              {"counit", std::move(counit)},
              {"antipode", w.map(h.antipode)}};
}

HopfAlgebra read_hopf(JsonReader& rd, const Json& j) {
  AlgebraPtr A = rd.algebra(field(j, "algebra"));
  std::vector<TensorElement> delta;
  std::vector<Scalar> counit;
  const Json& d = field(j, "delta");
  const Json& e = field(j, "counit");
  for (const auto& label : A->basis) {
    if (!d.contains(label) || !e.contains(label))
      throw Error("ShapeMismatch", "coproduct or counit missing for '" + label + "'");
    delta.push_back(rd.tensor(d.at(label)));
    counit.push_back(rd.scalar(e.at(label)));
  }
  return make_hopf(text_field(j, "name"), A, std::move(delta), std::move(counit),
                   rd.map(field(j, "antipode"), A, A));
}

}  // namespace

Json to_json(const AlgebraPtr& A) {
  JsonWriter w;
  w.algebra(A);
  return w.finish("algebra", A->name, Json{{"algebra", A->name}});
}

Json to_json(const TensorElement& t, const std::string& name) {
  JsonWriter w;
  Json body = w.tensor(t);
  return w.finish("tensor", name, body);
}

Json to_json(const OqaCandidate& c) {
  JsonWriter w;
  Json body = Json::object();
  body["algebra"] = w.algebra(c.H);
  body["r"] = w.tensor(c.r);
  body["D"] = w.map(c.D);
  body["U"] = w.map(c.U);
  if (c.r_inv) body["r_inv"] = w.tensor(*c.r_inv);
  if (c.legwise) body["legwise"] = w.tensor(*c.legwise);
  return w.finish("oqa", c.name, body);
}

Json to_json(const Nonuple& n) {
  JsonWriter w;
  Json body = Json::object();
  body["H"] = w.algebra(n.H);
  body["H'"] = w.algebra(n.Hp);
  body["p"] = w.tensor(n.p);
  body["p'"] = w.tensor(n.pp);
  body["r"] = w.tensor(n.r);
  body["D"] = w.map(n.D);
  body["U"] = w.map(n.U);
  body["D'"] = w.map(n.Dp);
  body["U'"] = w.map(n.Up);
  if (n.P) body["P"] = w.tensor(*n.P);
  if (n.Pp) body["P'"] = w.tensor(*n.Pp);
  if (n.R) body["R"] = w.tensor(*n.R);
  return w.finish("nonuple", n.name, body);
}

Json to_json(const HopfAlgebra& h) {
  JsonWriter w;
  Json body = hopf_body(w, h);
  body.erase("name");
  return w.finish("hopf", h.name, body);
}

Json to_json(const QtBundle& b) {
  JsonWriter w;
  Json body = Json::object();
  body["hopf"] = hopf_body(w, b.hopf);
  body["p"] = w.tensor(b.p);
  return w.finish("qt", b.hopf.name, body);
}

Json to_json(const WeakRBundle& b) {
  JsonWriter w;
  Json body = Json::object();
  body["H"] = hopf_body(w, b.H);
  body["H'"] = hopf_body(w, b.Hp);
  body["r"] = w.tensor(b.r);
  return w.finish("weakr", b.H.name + "/" + b.Hp.name, body);
}

Json matrix_to_json(const Matrix& m, const OrderingSpec& spec) {
  Json cells = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(c.to_string());
    cells.push_back(std::move(r));
  }
  return Json{{"kind", "matrix"},
              {"rows", m.size()},
              {"cols", m.empty() ? 0 : m[0].size()},
              {"ordering", to_string(spec)},
              {"cells", std::move(cells)}};
}

Json to_json(const ExpectedMatrix& m) {
  Json out = matrix_to_json(m.cells, m.ordering);
  out["name"] = m.name;
  Json typos = Json::array();
  for (const auto& t : m.suspected_typos) typos.push_back(Json{{"row", t.row + 1}, {"col", t.col + 1}, {"note", t.note}});
  out["suspected_typos"] = std::move(typos);
  out["notes"] = m.transcription_notes;
  return out;
}

Json to_json(const CheckReport& r) {
  Json results = Json::array();
  for (const auto& a : r.results()) {
    Json e{{"axiom", a.axiom}, {"pass", a.pass}};
    if (a.witness)
      e["witness"] = Json{{"index", a.witness->labels}, {"lhs", a.witness->lhs.to_string()},
                          {"rhs", a.witness->rhs.to_string()}};
    else
      e["witness"] = nullptr;
    if (!a.detail.empty()) e["detail"] = a.detail;
    results.push_back(std::move(e));
  }
  return Json{{"subject", r.subject()}, {"pass", r.passed()}, {"results", std::move(results)}};
}

Json to_json(const DiffReport& d) {
  Json diffs = Json::array();
  for (const auto& c : d.diffs)
    diffs.push_back(Json{{"row", c.row + 1},
                         {"col", c.col + 1},
                         {"expected", c.expected.to_string()},
                         {"computed", c.computed.to_string()},
                         {"recorded_typo", c.recorded_typo}});
  return Json{{"fixture", d.fixture},
              {"ordering", to_string(d.ordering)},
              {"exact", d.exact()},
              {"all_recorded", d.all_recorded()},
              {"diffs", std::move(diffs)}};
}

Json fixture_to_json(const FixtureObject& obj, const std::string& name) {
  return std::visit(
      [&](const auto& o) -> Json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, TensorElement>)
          return to_json(o, name);
        else
          return to_json(o);
      },
      obj);
}

AlgebraPtr algebra_from_json(const Json& j) {
  JsonReader rd(j);
  return rd.algebra(j.contains("algebra") ? j.at("algebra") : Json(text_field(j, "name")));
}

TensorElement tensor_from_json(const Json& j) {
  expect_kind(j, "tensor");
  JsonReader rd(j);
  return rd.tensor(j);
}

OqaCandidate oqa_from_json(const Json& j) {
  expect_kind(j, "oqa");
  JsonReader rd(j);
  AlgebraPtr H = rd.algebra(field(j, "algebra"));
  TensorElement r = rd.tensor(field(j, "r"));
  std::optional<TensorElement> r_inv;
  if (j.contains("r_inv")) r_inv = rd.tensor(j.at("r_inv"));
  OqaCandidate c = make_oqa(text_field(j, "name"), H, std::move(r), rd.map(field(j, "D"), H, H),
                            rd.map(field(j, "U"), H, H), std::move(r_inv));
  if (c.r_inv) expect_legs(*c.r_inv, {H, H}, "r_inv");
  if (j.contains("legwise")) c.legwise = rd.tensor(j.at("legwise"));
  return c;
}

Nonuple nonuple_from_json(const Json& j) {
  expect_kind(j, "nonuple");
  JsonReader rd(j);
  AlgebraPtr H = rd.algebra(field(j, "H"));
  AlgebraPtr Hp = rd.algebra(field(j, "H'"));
  auto opt = [&](const char* key, const std::vector<AlgebraPtr>& legs) -> std::optional<TensorElement> {
    if (!j.contains(key)) return std::nullopt;
    TensorElement t = rd.tensor(j.at(key));
    expect_legs(t, legs, key);
    return t;
  };
  Nonuple n{text_field(j, "name"),
            H,
            Hp,
            rd.tensor(field(j, "p")),
            rd.tensor(field(j, "p'")),
            rd.tensor(field(j, "r")),
            rd.map(field(j, "D"), H, H),
            rd.map(field(j, "U"), H, H),
            rd.map(field(j, "D'"), Hp, Hp),
            rd.map(field(j, "U'"), Hp, Hp),
            opt("P", {H, H}),
            opt("P'", {Hp, Hp}),
            opt("R", {H, Hp}),
            false};
  expect_legs(n.p, {H, H}, "p");
  expect_legs(n.pp, {Hp, Hp}, "p'");
  expect_legs(n.r, {H, Hp}, "r");
  return n;
}

HopfAlgebra hopf_from_json(const Json& j) {
  expect_kind(j, "hopf");
  JsonReader rd(j);
  return read_hopf(rd, j);
}

QtBundle qt_from_json(const Json& j) {
  expect_kind(j, "qt");
  JsonReader rd(j);
  HopfAlgebra h = read_hopf(rd, field(j, "hopf"));
  TensorElement p = rd.tensor(field(j, "p"));
  expect_legs(p, {h.A, h.A}, "p");
  return QtBundle{std::move(h), std::move(p)};
}

WeakRBundle weakr_from_json(const Json& j) {
  expect_kind(j, "weakr");
  JsonReader rd(j);
  HopfAlgebra h = read_hopf(rd, field(j, "H"));
  HopfAlgebra hp = read_hopf(rd, field(j, "H'"));
  TensorElement r = rd.tensor(field(j, "r"));
  expect_legs(r, {h.A, hp.A}, "r");
  return WeakRBundle{std::move(h), std::move(hp), std::move(r)};
}

}  // namespace oqa
