#include "towerforge/report.hpp"

#include <chrono>
#include <sstream>

namespace tf {

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json envelope_json(const ReportEnvelope& env) {
  Json j;
  j["tool"] = env.tool;
  j["version"] = env.version;
  j["command"] = env.command;
  if (!env.timestamp.empty()) j["timestamp"] = env.timestamp;
  j["pass"] = env.pass;
  j["payload"] = env.payload;
  return j;
}

ReportEnvelope envelope_from_json(const Json& j) {
  ReportEnvelope env;
  env.tool = j.at("tool").get<std::string>();
  env.version = j.at("version").get<std::string>();
  env.command = j.at("command").get<std::string>();
  env.timestamp = j.contains("timestamp") ? j.at("timestamp").get<std::string>() : "";
  env.pass = j.at("pass").get<bool>();
  env.payload = j.at("payload");
  return env;
}

Json certificate_json(const TowerCertificate& cert) {
  Json j;
  j["p"] = cert.triple.p;
  j["q"] = cert.triple.q;
  j["qprime"] = cert.triple.qprime;
  j["m"] = cert.triple.m;
  j["d"] = cert.triple.d;
  j["case"] = std::string(1, case_char(cert.triple.case_label));
  j["n"] = cert.triple.n;
  j["gamma_order"] = cert.gamma_order;
  j["cl2_k"] = cert.cl2_k.str();
  j["pass"] = cert.pass;
  Json witness;
  witness["x"] = cert.witness_x;
  witness["y"] = cert.witness_y;
  witness["u"] = cert.witness_u;
  witness["eps"] = cert.eps;
  witness["eps_norm"] = cert.eps_norm;
  witness["q_insolvable"] = cert.q_insolvable;
  witness["qprime_insolvable"] = cert.qprime_insolvable;
  j["witness"] = witness;
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    Json row;
    row["table"] = c.table;
    row["row"] = c.row;
    row["col"] = c.col;
    row["expected"] = c.expected;
    row["computed"] = c.computed;
    row["pass"] = c.pass;
    checks.push_back(row);
  }
  j["checks"] = checks;
  j["discrepancies"] = cert.discrepancies;
  return j;
}

std::string certificate_text(const TowerCertificate& cert) {
  std::ostringstream os;
  os << "triple (" << cert.triple.p << ", " << cert.triple.q << ", "
     << cert.triple.qprime << ")  d = " << cert.triple.d << "  case "
     << case_char(cert.triple.case_label) << "  n = " << cert.triple.n << "\n";
  os << "Cl_2(k) = " << cert.cl2_k.str()
     << "   |Gal(k^2/k)| = " << cert.gamma_order << "\n";
  os << "unit witness: x = " << cert.witness_x << ", y = " << cert.witness_y
     << ", eta^2 = eps_m^" << cert.witness_u << ", eps_m = " << cert.eps
     << " (norm " << (cert.eps_norm > 0 ? "+1" : "-1") << ")\n";
  os << "q-class obstruction: " << cert.q_insolvable << "\n";
  os << "q'-class obstruction: " << cert.qprime_insolvable << "\n";
  int shown = 0;
  for (const auto& c : cert.checks) {
    if (c.pass) continue;
    if (!shown) os << "failed checks:\n";
    os << "  " << c.table;
    if (c.row) os << "[" << c.row << "]";
    os << " " << c.col << ": expected " << c.expected << ", computed "
       << c.computed << "\n";
    ++shown;
  }
  os << "checks: " << cert.checks.size() - shown << "/" << cert.checks.size()
     << " passed  ->  " << (cert.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

}  // namespace

std::string certificate_csv(const TowerCertificate& cert, bool header) {
  std::ostringstream os;
  if (header) os << "p,q,qprime,case,n,table,row,col,expected,computed,pass\n";
  for (const auto& c : cert.checks) {
    os << cert.triple.p << "," << cert.triple.q << "," << cert.triple.qprime
       << "," << case_char(cert.triple.case_label) << "," << cert.triple.n
       << "," << c.table << "," << c.row << "," << c.col << ","
       << csv_escape(c.expected) << "," << csv_escape(c.computed) << ","
       << (c.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string scan_csv_header() {
  return "p,q,qprime,case,n,gamma_order,cl2_k,checks,failed,pass\n";
}

std::string scan_csv_row(const TowerCertificate& cert) {
  std::ostringstream os;
  os << cert.triple.p << "," << cert.triple.q << "," << cert.triple.qprime
     << "," << case_char(cert.triple.case_label) << "," << cert.triple.n << ","
     << cert.gamma_order << "," << csv_escape(cert.cl2_k.str()) << ","
     << cert.checks.size() << "," << cert.discrepancies.size() << ","
     << (cert.pass ? "true" : "false") << "\n";
  return os.str();
}

std::string scan_text_row(const TowerCertificate& cert) {
  std::ostringstream os;
  os << "(" << cert.triple.p << ", " << cert.triple.q << ", "
     << cert.triple.qprime << ")  case " << case_char(cert.triple.case_label)
     << "  n=" << cert.triple.n << "  |Gamma|=" << cert.gamma_order << "  "
     << (cert.pass ? "PASS" : "FAIL");
  if (!cert.pass) os << "  (" << cert.discrepancies.size() << " discrepancies)";
  os << "\n";
  return os.str();
}

Json classgroup_json(const FormClassGroup& G) {
  Json j;
  j["disc"] = G.disc();
  j["h"] = G.h();
  if (G.disc() > 0) j["sense"] = "narrow";
  j["invariants"] = G.invariants().str();
  j["two_sylow"] = G.two_sylow().str();
  j["ambiguous_classes"] = G.ambiguous_count();
  Json cls = Json::array();
  std::size_t cap = std::min<std::size_t>(G.classes().size(), 10000);
  for (std::size_t i = 0; i < cap; ++i) cls.push_back(G.classes()[i].str());
  j["classes"] = cls;
  return j;
}

namespace {

std::string ab_vec_name(std::uint8_t v) {
  if (!v) return "0";
  std::string out;
  if (v & 1) out += "r";
  if (v & 2) out += out.empty() ? "s" : "+s";
  if (v & 4) out += out.empty() ? "t" : "+t";
  return out;
}

}  // namespace

Json gamma_json(int n) {
  if (n < 1 || n > 10)
    throw std::domain_error("gamma report supports 1 <= n <= 10");
  TowerGroup G(n);
  Json j;
  j["n"] = n;
  j["order"] = G.order();
  j["ab"] = abelianization(G).str();
  Subgroup Gd = derived_subgroup(G);
  j["derived_order"] = Gd.order();
  j["derived_ab"] = abelianization(G, Gd).str();
  j["second_derived_order"] = derived_subgroup(G, Gd).order();
  j["exponent"] = exponent(G);
  Json subs = Json::array();
  for (std::uint8_t w = 1; w <= 7; ++w) {
    Subgroup H = hyperplane_subgroup(G, w);
    Json s;
    s["hyperplane"] = ab_vec_name(w) + " = 0";
    s["order"] = H.order();
    s["ab"] = abelianization(G, H).str();
    Json ker = Json::array();
    for (std::uint8_t v : transfer_kernel(G, H)) ker.push_back(ab_vec_name(v));
    s["transfer_kernel"] = ker;
    subs.push_back(s);
  }
  j["index2_subgroups"] = subs;
  auto rep = presentation_consistency(n);
  Json vars = Json::array();
  for (const auto& v : rep.variants) {
    Json vr;
    vr["commutator"] = v.name;
    vr["orientation"] = v.orientation;
    vr["consistent"] = v.consistent;
    vr["order_ok"] = v.order_ok;
    vr["relations_ok"] = v.relations_ok;
    vr["ab_ok"] = v.ab_ok;
    vars.push_back(vr);
  }
  j["presentation_variants"] = vars;
  j["adopted_consistent"] = rep.adopted_ok;
  return j;
}

Json unit_json(const FundamentalUnit& u) {
  Json j;
  j["m"] = u.m;
  j["x"] = u.x.get_str();
  j["y"] = u.y.get_str();
  j["half"] = u.half;
  j["norm"] = u.norm;
  j["unit"] = u.str();
  return j;
}

}  // namespace tf
