#pragma once
// CSV writers. Header row first, floats with 9 significant digits, fields
// quoted only when they contain a comma, quote or line break.

#include <iosfwd>
#include <string>
#include <vector>

#include "uavmm/harness/experiments.hpp"
#include "uavmm/harness/scenario.hpp"
#include "uavmm/sensing.hpp"

namespace uavmm {

std::string format_double(double v);
std::string csv_field(const std::string& s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);

enum class SummaryKind { Mse, Misalignment, SpectralEfficiency, All };
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, SummaryKind kind);

void write_pathloss_csv(std::ostream& out, const std::vector<PathlossRow>& rows);
void write_beamspace_csv(std::ostream& out, const BeamspaceMap& map);

}  // namespace uavmm
