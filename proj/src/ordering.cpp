#include "oqa/ordering.hpp"

#include <sstream>

#include "oqa/error.hpp"

namespace oqa {

OrderingSpec parse_ordering(const std::string& text) {
  OrderingSpec spec;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part == "row-major")
      spec.units = OrderingSpec::Units::RowMajor;
    else if (part == "col-major")
      spec.units = OrderingSpec::Units::ColMajor;
    else if (part == "first-major")
      spec.pairs = OrderingSpec::Pairs::FirstMajor;
    else if (part == "second-major")
      spec.pairs = OrderingSpec::Pairs::SecondMajor;
    else if (!part.empty())
      throw Error("BadOrdering", "unknown ordering component '" + part + "'");
  }
  return spec;
}

std::string to_string(const OrderingSpec& spec) {
  return std::string(spec.units == OrderingSpec::Units::RowMajor ? "row-major" : "col-major") + "," +
         (spec.pairs == OrderingSpec::Pairs::FirstMajor ? "first-major" : "second-major");
}

std::vector<OrderingSpec> all_orderings() {
  using U = OrderingSpec::Units;
  using P = OrderingSpec::Pairs;
  return {{U::RowMajor, P::FirstMajor}, {U::RowMajor, P::SecondMajor}, {U::ColMajor, P::FirstMajor},
          {U::ColMajor, P::SecondMajor}};
}

std::uint32_t axis_position(const Algebra& leg, std::uint32_t idx, const OrderingSpec& spec) {
  if (leg.is_tensor_product()) {
    const Algebra& A = *leg.factors[0];
    const Algebra& B = *leg.factors[1];
    const auto da = static_cast<std::uint32_t>(A.dim());
    const auto db = static_cast<std::uint32_t>(B.dim());
    std::uint32_t a = axis_position(A, idx / db, spec);
    std::uint32_t b = axis_position(B, idx % db, spec);
    return spec.pairs == OrderingSpec::Pairs::FirstMajor ? a * db + b : b * da + a;
  }
  if (leg.matrix_order > 0 && spec.units == OrderingSpec::Units::ColMajor) {
    const auto n = static_cast<std::uint32_t>(leg.matrix_order);
    return (idx % n) * n + idx / n;
  }
  return idx;
}

Matrix to_matrix(const TensorElement& t, const OrderingSpec& spec) {
  if (t.arity() != 2) throw Error("ShapeMismatch", "matrix export needs a 2-leg element");
  const Algebra& A = *t.legs()[0];
  const Algebra& B = *t.legs()[1];
  Matrix m(A.dim(), std::vector<Scalar>(B.dim()));
  for (const auto& [idx, c] : t.terms()) m[axis_position(A, idx[0], spec)][axis_position(B, idx[1], spec)] = c;
  return m;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += row[j].to_string();
    }
    out += '\n';
  }
  return out;
}

}  // namespace oqa
