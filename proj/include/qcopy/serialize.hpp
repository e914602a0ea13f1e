#pragma once

// JSON and CSV encodings.  Every real number is rounded to 12 significant
// digits so that identical runs produce byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "qcopy/machines.hpp"
#include "qcopy/metrics.hpp"
#include "qcopy/optimizer.hpp"

namespace qcopy {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

// Shortest text for x with at most 12 significant digits; "nan", "inf" and
// "-inf" for non-finite values.
std::string format_number(double x);
double round_sig(double x);

Json to_json(const DistanceReport& report);
Json to_json(const CloningMachine& machine);
Json to_json(const MachineGram& gram);
Json to_json(const SearchResult& result);
Json to_json(const AverageComparison& comparison);

struct SweepRow {
  double param;
  DistanceReport report;
};

struct SweepTable {
  std::string machine;
  std::string param_name;
  std::vector<SweepRow> rows;
};

// param,d_a,d_b,d_ab_1,d_ab_2,d_ab_3,fidelity,s_a,s_b,s_ab
std::string csv_header();
std::string to_csv(const SweepTable& table);
Json to_json(const SweepTable& table);

}  // namespace qcopy
