#pragma once

#include <map>
#include <set>
#include <string>

#include "json.hpp"
#include "oqa/catalog.hpp"

namespace oqa {

using Json = nlohmann::ordered_json;

/// Accumulates the algebras and parameters referenced while an object is
/// written, so that a bundle is self-contained. Algebras are emitted in
/// dependency order (factors before their tensor product).
class JsonWriter {
 public:
  /// Registers A (and its factors) and returns the name used to refer to it.
  std::string algebra(const AlgebraPtr& A);
  Json scalar(const Scalar& s);
  /// {label: scalar} over the basis of A.
  Json vec(const AlgebraPtr& A, const SparseVec& v);
  /// {"images": {label: element}}.
  Json map(const AlgebraMap& f);
  /// {"legs": [...], "terms": [{"idx": [...], "c": ...}]}.
  Json tensor(const TensorElement& t);

  /// {"kind", "name", "params", "algebras", ...body}.
  Json finish(const std::string& kind, const std::string& name, const Json& body) const;

 private:
  Json algebra_definition(const AlgebraPtr& A);
  std::vector<Json> algebras_;
  std::map<std::string, AlgebraPtr> by_name_;
  std::set<std::string> params_;
};

/// Reads the "params" and "algebras" sections of a bundle and resolves the
/// references inside it. Algebra definitions are validated by make_algebra;
/// a definition with "factors" is the tensor product of the named algebras.
class JsonReader {
 public:
  explicit JsonReader(const Json& bundle);

  const std::vector<std::string>& params() const { return params_; }
  /// A name defined in the bundle, or an inline definition.
  AlgebraPtr algebra(const Json& ref);
  Scalar scalar(const Json& j) const;
  SparseVec vec(const AlgebraPtr& A, const Json& j) const;
  /// Uncertified; checkers and builders certify as needed.
  AlgebraMap map(const Json& j, const AlgebraPtr& source, const AlgebraPtr& target) const;
  TensorElement tensor(const Json& j);

 private:
  AlgebraPtr define(const Json& def);
  std::vector<std::string> params_;
  std::map<std::string, AlgebraPtr> algebras_;
};

/// Parses text as JSON; throws Error("ParseError").
Json parse_json(const std::string& text);
/// The "kind" field of a bundle; throws Error("ShapeMismatch") when absent.
std::string bundle_kind(const Json& bundle);

struct QtBundle {
  HopfAlgebra hopf;
  TensorElement p;
};

struct WeakRBundle {
  HopfAlgebra H;
  HopfAlgebra Hp;
  TensorElement r;
};

Json to_json(const AlgebraPtr& A);
Json to_json(const TensorElement& t, const std::string& name = "tensor");
Json to_json(const OqaCandidate& c);
Json to_json(const Nonuple& n);
Json to_json(const HopfAlgebra& h);
Json to_json(const QtBundle& b);
Json to_json(const WeakRBundle& b);
Json to_json(const ExpectedMatrix& m);
Json to_json(const CheckReport& r);
Json to_json(const DiffReport& d);
Json matrix_to_json(const Matrix& m, const OrderingSpec& spec);
/// Any catalog object in its bundle form.
Json fixture_to_json(const FixtureObject& obj, const std::string& name);

AlgebraPtr algebra_from_json(const Json& j);
TensorElement tensor_from_json(const Json& j);
OqaCandidate oqa_from_json(const Json& j);
Nonuple nonuple_from_json(const Json& j);
HopfAlgebra hopf_from_json(const Json& j);
QtBundle qt_from_json(const Json& j);
WeakRBundle weakr_from_json(const Json& j);

}  // namespace oqa
