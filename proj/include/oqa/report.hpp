#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oqa/tensor.hpp"

namespace oqa {

/// First coefficient at which the two sides of a failed identity differ.
struct Witness {
  std::vector<std::string> labels;  // one basis label per leg
  Scalar lhs;
  Scalar rhs;
};

struct AxiomResult {
  std::string axiom;
  bool pass = false;
  std::optional<Witness> witness;
  std::string detail;  // free text for failures without a coefficient witness
};

using ReportSink = std::function<void(const AxiomResult&)>;

/// Ordered list of axiom verdicts. Every axiom is recorded, including those
/// evaluated after an earlier failure.
class CheckReport {
 public:
  explicit CheckReport(std::string subject = {}, ReportSink sink = {})
      : subject_(std::move(subject)), sink_(std::move(sink)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<AxiomResult>& results() const { return results_; }
  bool passed() const;
  const AxiomResult* find(const std::string& axiom) const;
  const AxiomResult* first_failure() const;

  void add(AxiomResult r);
  void add_pass(const std::string& axiom) { add({axiom, true, std::nullopt, {}}); }
  void add_fail(const std::string& axiom, std::string detail) { add({axiom, false, std::nullopt, std::move(detail)}); }
  /// Records lhs == rhs, with the first differing coefficient on failure.
  void add_equality(const std::string& axiom, const TensorElement& lhs, const TensorElement& rhs);
  /// Appends the results of `other`, prefixing each axiom name.
  void merge(const std::string& prefix, const CheckReport& other);

  const ReportSink& sink() const { return sink_; }

  /// One line per axiom: `PASS name` or `FAIL name: detail`.
  std::string to_text() const;

 private:
  std::string subject_;
  ReportSink sink_;
  std::vector<AxiomResult> results_;
};

std::string format_result(const AxiomResult& r);

/// Raised by constructors whose inputs fail certification; names the first
/// failed axiom.
[[noreturn]] void throw_uncertified(const std::string& what, const CheckReport& report);

}  // namespace oqa
