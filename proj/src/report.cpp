#include "oqa/report.hpp"

#include <sstream>

#include "oqa/error.hpp"

namespace oqa {

bool CheckReport::passed() const { return first_failure() == nullptr; }

const AxiomResult* CheckReport::find(const std::string& axiom) const {
  for (const auto& r : results_)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

const AxiomResult* CheckReport::first_failure() const {
  for (const auto& r : results_)
    if (!r.pass) return &r;
  return nullptr;
}

void CheckReport::add(AxiomResult r) {
  results_.push_back(std::move(r));
  if (sink_) sink_(results_.back());
}

void CheckReport::add_equality(const std::string& axiom, const TensorElement& lhs, const TensorElement& rhs) {
  if (!same_legs(lhs.legs(), rhs.legs())) {
    add_fail(axiom, "sides live in different tensor products");
    return;
  }
  auto diff = first_difference(lhs, rhs);
  if (!diff) {
    add_pass(axiom);
    return;
  }
  add({axiom, false, Witness{lhs.labels(diff->index), diff->lhs, diff->rhs}, {}});
}

void CheckReport::merge(const std::string& prefix, const CheckReport& other) {
  for (auto r : other.results()) {
    r.axiom = prefix + r.axiom;
    add(std::move(r));
  }
}

std::string format_result(const AxiomResult& r) {
  std::ostringstream out;
  out << (r.pass ? "PASS " : "FAIL ") << r.axiom;
  if (r.witness) {
    out << ": at [";
    for (std::size_t k = 0; k < r.witness->labels.size(); ++k) out << (k ? ", " : "") << r.witness->labels[k];
    out << "] lhs = " << r.witness->lhs.to_string() << ", rhs = " << r.witness->rhs.to_string();
    if (!r.detail.empty()) out << " (" << r.detail << ")";
  } else if (!r.detail.empty()) {
    out << ": " << r.detail;
  }
  return out.str();
}

std::string CheckReport::to_text() const {
  std::string out;
  for (const auto& r : results_) out += format_result(r) + "\n";
  return out;
}

void throw_uncertified(const std::string& what, const CheckReport& report) {
  const AxiomResult* f = report.first_failure();
  throw Error("Uncertified", what + " failed certification" + (f ? ": " + format_result(*f) : std::string()));
}

}  // namespace oqa
