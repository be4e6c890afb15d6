#ifndef TOWERFORGE_REPORT_HPP
#define TOWERFORGE_REPORT_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "towerforge/towers.hpp"

namespace tf {

inline constexpr const char* kToolName = "towerforge";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Report envelope: tool id, echoed command line, optional timestamp, payload
// and an overall pass flag. Serialization round-trips losslessly and the
// field order is fixed.
struct ReportEnvelope {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  std::string timestamp;  // empty = suppressed
  bool pass = false;
  Json payload;
};

Json envelope_json(const ReportEnvelope& env);
ReportEnvelope envelope_from_json(const Json& j);
std::string iso8601_now();

Json certificate_json(const TowerCertificate& cert);
std::string certificate_text(const TowerCertificate& cert);
// One CSV row per check; `header` controls the heading line.
std::string certificate_csv(const TowerCertificate& cert, bool header);
// One CSV row per certificate (scan mode).
std::string scan_csv_header();
std::string scan_csv_row(const TowerCertificate& cert);
std::string scan_text_row(const TowerCertificate& cert);

Json classgroup_json(const FormClassGroup& G);
Json gamma_json(int n);
Json unit_json(const FundamentalUnit& u);

}  // namespace tf

#endif
