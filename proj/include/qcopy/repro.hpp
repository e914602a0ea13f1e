#pragma once

// Table of reference constants recomputed from scratch.

#include <functional>
#include <string>
#include <vector>

#include "qcopy/serialize.hpp"

namespace qcopy {

struct ReproRow {
  std::string name;
  double reference_value;
  double computed;
  double tolerance;
  std::string source;
  bool pass;  // |computed - reference_value| <= tolerance
};

// Hook applied to every computed value before comparison; lets a harness
// inject faults.  Receives the row name and the honest value.
using Tamper = std::function<double(const std::string&, double)>;

std::vector<ReproRow> reproduction_rows(const Tamper& tamper = {});
bool all_pass(const std::vector<ReproRow>& rows);

Json to_json(const ReproRow& row);
std::string repro_csv(const std::vector<ReproRow>& rows);

}  // namespace qcopy
