#include "uavmm/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace uavmm {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << "\r\n";
}

namespace {

std::string u(std::uint64_t v) { return std::to_string(v); }
std::string d(double v) { return format_double(v); }

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  CsvWriter w(out);
  w.row({"trial", "seed", "method", "tx_power_dbm", "n_measurements", "psi_b", "omega_b", "psi_u",
         "omega_u", "psi_b_nav", "omega_b_nav", "psi_u_nav", "omega_u_nav", "psi_u_est",
         "omega_u_est", "sq_error", "received_power_dbm", "max_power_dbm", "misaligned",
         "rate_bps_hz", "spectral_efficiency"});
  for (const TrialRecord& r : records) {
    w.row({u(r.trial), u(r.seed), method_name(r.method), d(r.tx_power_dbm), u(r.n_measurements),
           d(r.psi_b), d(r.omega_b), d(r.psi_u), d(r.omega_u), d(r.psi_b_nav), d(r.omega_b_nav),
           d(r.psi_u_nav), d(r.omega_u_nav), d(r.psi_u_est), d(r.omega_u_est), d(r.sq_error),
           d(r.received_power_dbm), d(r.max_power_dbm), r.misaligned ? "1" : "0",
           d(r.rate_bps_hz), d(r.spectral_efficiency)});
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, SummaryKind kind) {
  CsvWriter w(out);
  std::vector<std::string> head{"method", "tx_power_dbm", "n_measurements", "trials"};
  const bool mse = kind == SummaryKind::Mse || kind == SummaryKind::All;
  const bool mis = kind == SummaryKind::Misalignment || kind == SummaryKind::All;
  const bool se = kind == SummaryKind::SpectralEfficiency || kind == SummaryKind::All;
  if (mse) head.insert(head.end(), {"mse", "mse_se"});
  if (mis) head.insert(head.end(), {"misalignment_rate", "misalignment_se"});
  if (se) head.insert(head.end(), {"spectral_efficiency", "spectral_efficiency_se"});
  w.row(head);
  for (const SummaryRow& r : rows) {
    std::vector<std::string> f{method_name(r.method), d(r.tx_power_dbm), u(r.n_measurements),
                               u(r.trials)};
    if (mse) f.insert(f.end(), {d(r.mse), d(r.mse_se)});
    if (mis) f.insert(f.end(), {d(r.misalignment_rate), d(r.misalignment_se)});
    if (se) f.insert(f.end(), {d(r.spectral_efficiency), d(r.spectral_efficiency_se)});
    w.row(f);
  }
}

void write_pathloss_csv(std::ostream& out, const std::vector<PathlossRow>& rows) {
  CsvWriter w(out);
  w.row({"step", "yaw_rad", "pitch_rad", "roll_rad", "scheme1_db", "scheme2_db", "scheme3_db"});
  for (const PathlossRow& r : rows) {
    w.row({u(r.step), d(r.attitude.yaw()), d(r.attitude.pitch()), d(r.attitude.roll()),
           d(r.scheme1_db), d(r.scheme2_db), d(r.scheme3_db)});
  }
}

void write_beamspace_csv(std::ostream& out, const BeamspaceMap& map) {
  CsvWriter w(out);
  w.row({"psi_u", "omega_u", "energy"});
  for (std::size_t i = 0; i < map.psi.size(); ++i)
    for (std::size_t j = 0; j < map.omega.size(); ++j)
      w.row({d(map.psi[i]), d(map.omega[j]), d(map.at(i, j))});
}

}  // namespace uavmm
