#pragma once

// Machine-readable result rows shared by every CLI command.
//
// CSV layout: the command's input columns (fixed per command, in the order the
// command echoes them), then
//   quantity, value_re, value_im, reference_re, reference_im, provenance,
//   uncertainty, abs_dev, rel_dev, atol, rtol, checked, pass, note
// JSON: an array of objects with the same fields, inputs nested under "inputs".

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotquad/wirtinger.hpp"

namespace rotquad {

struct ResultRecord {
  std::string command;
  std::vector<std::pair<std::string, double>> inputs;
  std::string quantity;
  cplx value{};
  cplx reference{};
  std::string provenance;
  double uncertainty = std::numeric_limits<double>::quiet_NaN();
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  // pass iff abs_dev <= atol + rtol |reference|; unchecked rows always pass.
  bool checked = false;
  double atol = 0.0;
  double rtol = 0.0;
  bool pass = true;
  std::string note;
};

struct Tolerance {
  double atol = 0.0;
  double rtol = 0.0;
};

/// Fill deviations and the pass flag. Without a tolerance the row is
/// informational.
ResultRecord make_record(std::string command, std::vector<std::pair<std::string, double>> inputs,
                         std::string quantity, cplx value, cplx reference, std::string provenance,
                         std::optional<Tolerance> tolerance, std::string note = {});

bool all_pass(const std::vector<ResultRecord>& records);

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records);
void write_json(std::ostream& os, const std::vector<ResultRecord>& records);

/// Shortest round-trip decimal text; empty for NaN.
std::string format_number(double v);

}  // namespace rotquad
