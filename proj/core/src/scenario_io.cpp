#include "folprod/scenario_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace folprod {

namespace {

using nlohmann::json;

const json& member(const json& j, const std::string& parent,
                   const char* key) {
  if (!j.is_object())
    throw Error(ErrorCode::ParseError, parent, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw Error(ErrorCode::ParseError,
                parent.empty() ? key : parent + "." + key, "missing");
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number())
    throw Error(ErrorCode::ParseError, path, "expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw Error(ErrorCode::ParseError, path, "expected an integer");
  return j.get<int>();
}

Cx complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw Error(ErrorCode::ParseError, path, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Poly poly_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::ParseError, path,
                "expected a non-empty array of [re, im] coefficients");
  Poly p;
  for (size_t i = 0; i < j.size(); ++i)
    p.push_back(complex_at(j[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

void reject_unknown_keys(const json& j, const std::string& parent,
                         std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw Error(ErrorCode::ParseError,
                  parent.empty() ? it.key() : parent + "." + it.key(),
                  "unknown key");
  }
}

json cx_json(Cx z) { return json::array({z.real(), z.imag()}); }

json point_json(const PointCP1& p) {
  json j;
  if (p.is_infinity()) {
    j["chart"] = "infinity";
    j["value"] = cx_json(Cx(0.0, 0.0));
  } else {
    j["chart"] = "standard";
    j["value"] = cx_json(p.as_complex());
  }
  return j;
}

}  // namespace

MappingTorusScenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "document", e.what());
  }
  reject_unknown_keys(doc, "",
                      {"phi", "speed", "family", "n_max", "tolerances"});

  const json& jphi = member(doc, "", "phi");
  reject_unknown_keys(jphi, "phi", {"a", "b", "c", "d"});
  MoebiusMap phi = MoebiusMap::make(
      complex_at(member(jphi, "phi", "a"), "phi.a"),
      complex_at(member(jphi, "phi", "b"), "phi.b"),
      complex_at(member(jphi, "phi", "c"), "phi.c"),
      complex_at(member(jphi, "phi", "d"), "phi.d"));

  const json& jspeed = member(doc, "", "speed");
  reject_unknown_keys(jspeed, "speed", {"a0", "terms"});
  SpeedProfile speed;
  speed.a0 = number_at(member(jspeed, "speed", "a0"), "speed.a0");
  if (jspeed.contains("terms")) {
    const json& jterms = jspeed["terms"];
    if (!jterms.is_array())
      throw Error(ErrorCode::ParseError, "speed.terms", "expected an array");
    for (size_t i = 0; i < jterms.size(); ++i) {
      std::string path = "speed.terms[" + std::to_string(i) + "]";
      reject_unknown_keys(jterms[i], path, {"k", "cos", "sin"});
      SpeedTerm term;
      term.k = int_at(member(jterms[i], path, "k"), path + ".k");
      if (term.k < 1)
        throw Error(ErrorCode::ValidationError, path + ".k",
                    "frequency must be a positive integer");
      if (jterms[i].contains("cos"))
        term.cos_coeff = number_at(jterms[i]["cos"], path + ".cos");
      if (jterms[i].contains("sin"))
        term.sin_coeff = number_at(jterms[i]["sin"], path + ".sin");
      speed.terms.push_back(term);
    }
  }
  std::stable_sort(speed.terms.begin(), speed.terms.end(),
                   [](const SpeedTerm& a, const SpeedTerm& b) {
                     return a.k < b.k;
                   });

  const json& jfam = member(doc, "", "family");
  reject_unknown_keys(jfam, "family", {"g_num", "g_den", "mu", "twist"});
  Poly g_num = poly_at(member(jfam, "family", "g_num"), "family.g_num");
  Poly g_den = poly_at(member(jfam, "family", "g_den"), "family.g_den");
  std::vector<TwistTerm> twist;
  if (jfam.contains("twist")) {
    const json& jtwist = jfam["twist"];
    if (!jtwist.is_array())
      throw Error(ErrorCode::ParseError, "family.twist", "expected an array");
    for (size_t i = 0; i < jtwist.size(); ++i) {
      std::string path = "family.twist[" + std::to_string(i) + "]";
      reject_unknown_keys(jtwist[i], path, {"k", "coeff"});
      TwistTerm term;
      term.k = int_at(member(jtwist[i], path, "k"), path + ".k");
      term.coeff =
          complex_at(member(jtwist[i], path, "coeff"), path + ".coeff");
      twist.push_back(term);
    }
  }
  std::stable_sort(twist.begin(), twist.end(),
                   [](const TwistTerm& a, const TwistTerm& b) {
                     return a.k < b.k;
                   });

  int n_max = 64;
  if (doc.contains("n_max")) n_max = int_at(doc["n_max"], "n_max");

  Tolerances tol;
  if (doc.contains("tolerances")) {
    const json& jtol = doc["tolerances"];
    reject_unknown_keys(jtol, "tolerances",
                        {"winding_snap", "residual", "quadrature",
                         "periodicity"});
    if (jtol.contains("winding_snap"))
      tol.winding_snap =
          number_at(jtol["winding_snap"], "tolerances.winding_snap");
    if (jtol.contains("residual"))
      tol.residual = number_at(jtol["residual"], "tolerances.residual");
    if (jtol.contains("quadrature"))
      tol.quadrature = number_at(jtol["quadrature"], "tolerances.quadrature");
    if (jtol.contains("periodicity"))
      tol.periodicity =
          number_at(jtol["periodicity"], "tolerances.periodicity");
  }

  const json& jmu = member(jfam, "family", "mu");
  try {
    RationalFunction g(std::move(g_num), std::move(g_den));
    EquivariantFamily family =
        jmu.is_string() && jmu.get<std::string>() == "auto"
            ? EquivariantFamily::with_auto_mu(std::move(g), phi,
                                              std::move(twist))
            : EquivariantFamily(std::move(g),
                                complex_at(jmu, "family.mu"),
                                std::move(twist));
    return MappingTorusScenario(phi, std::move(speed), std::move(family),
                                n_max, tol);
  } catch (const Error& e) {
    // A family that fails to descend is a validation failure of the
    // document's family section; hypothesis codes keep their own names so
    // the CLI diagnostics stay exact.
    if (e.code() == ErrorCode::NotProjectivelyInvariant)
      throw Error(ErrorCode::ValidationError, "family", e.what());
    throw;
  }
}

MappingTorusScenario parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ParseError, "file", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const MappingTorusScenario& scenario) {
  json doc;
  const MoebiusMap& m = scenario.phi();
  doc["phi"] = {{"a", cx_json(m.a)},
                {"b", cx_json(m.b)},
                {"c", cx_json(m.c)},
                {"d", cx_json(m.d)}};

  json terms = json::array();
  for (const auto& t : scenario.speed().terms)
    terms.push_back(
        {{"k", t.k}, {"cos", t.cos_coeff}, {"sin", t.sin_coeff}});
  doc["speed"] = {{"a0", scenario.speed().a0}, {"terms", terms}};

  json g_num = json::array(), g_den = json::array();
  for (Cx c : scenario.family().g().num()) g_num.push_back(cx_json(c));
  for (Cx c : scenario.family().g().den()) g_den.push_back(cx_json(c));
  json twist = json::array();
  for (const auto& t : scenario.family().twist())
    twist.push_back({{"k", t.k}, {"coeff", cx_json(t.coeff)}});
  doc["family"] = {{"g_num", g_num},
                   {"g_den", g_den},
                   {"mu", cx_json(scenario.family().mu())},
                   {"twist", twist}};

  doc["n_max"] = scenario.n_max();
  const Tolerances& tol = scenario.tolerances();
  doc["tolerances"] = {{"winding_snap", tol.winding_snap},
                       {"residual", tol.residual},
                       {"quadrature", tol.quadrature},
                       {"periodicity", tol.periodicity}};
  return doc.dump(2) + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(),
                  nullptr))
    throw Error(ErrorCode::NumericalFailure, "sha-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string scenario_digest(const MappingTorusScenario& scenario) {
  return sha256_hex(serialize_scenario(scenario));
}

std::string report_to_json(const VerificationReport& report) {
  json doc;
  doc["version"] = "0.1.0";
  doc["scenario_digest"] = report.scenario_digest;
  doc["passed"] = report.passed;
  doc["diagnostic"] = report.diagnostic;
  doc["sum_l_ord"] = report.sum_l_ord;
  doc["residual"] = report.residual;
  doc["constancy_ok"] = report.constancy_ok;

  json orbits = json::array();
  for (const auto& orbit : report.orbits) {
    json points = json::array();
    for (const auto& p : orbit.points) points.push_back(point_json(p));
    orbits.push_back({{"points", points},
                      {"period_n", orbit.period_n},
                      {"length_l", orbit.length_l},
                      {"order", orbit.order}});
  }
  doc["orbits"] = orbits;

  json tubes = json::array();
  for (const auto& tc : report.tube_checks)
    tubes.push_back({{"orbit_index", tc.orbit_index},
                     {"relative_error", tc.relative_error}});
  doc["tube_checks"] = tubes;
  doc["stokes_checks"] = report.stokes_checks;
  if (report.prop2_residual)
    doc["prop2_residual"] = *report.prop2_residual;
  else
    doc["prop2_residual"] = nullptr;
  return doc.dump(2) + "\n";
}

}  // namespace folprod
