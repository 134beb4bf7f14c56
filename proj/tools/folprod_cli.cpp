#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folprod/arithmetic_side.hpp"
#include "folprod/scenario_io.hpp"
#include "folprod/winding.hpp"

namespace {

using folprod::Cx;

// "re" or "re,im" — the comma form avoids shell-hostile parentheses.
Cx parse_complex_arg(const std::string& text, const std::string& what) {
  try {
    size_t comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    size_t used = 0;
    double re = std::stod(text.substr(0, comma));
    std::string rest = text.substr(comma + 1);
    double im = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(rest);
    return {re, im};
  } catch (const std::exception&) {
    throw folprod::Error(folprod::ErrorCode::ParseError, what,
                         "expected re or re,im, got '" + text + "'");
  }
}

// Coefficient lists: each token is one coefficient or a ';'-joined run,
// low degree first.
folprod::Poly parse_poly_args(const std::vector<std::string>& tokens,
                              const std::string& what) {
  folprod::Poly p;
  for (const auto& token : tokens) {
    size_t pos = 0;
    while (pos <= token.size()) {
      size_t next = token.find(';', pos);
      std::string piece = token.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      if (!piece.empty()) p.push_back(parse_complex_arg(piece, what));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  if (p.empty())
    throw folprod::Error(folprod::ErrorCode::ParseError, what,
                         "no coefficients given");
  return p;
}

// Gaussian integer literal: a, bi, a+bi, a-bi, with "i" and "-i" meaning
// coefficient 1. Whitespace-free, as shells deliver it.
folprod::GaussianInt parse_gaussian_arg(const std::string& text) {
  const auto fail = [&]() -> folprod::GaussianInt {
    throw folprod::Error(folprod::ErrorCode::ParseError, "gaussian",
                         "expected a+bi, got '" + text + "'");
  };
  if (text.empty()) return fail();
  std::int64_t re = 0, im = 0;
  size_t pos = 0;
  auto read_signed = [&](std::int64_t& out, bool implicit_one) -> bool {
    size_t start = pos;
    std::int64_t sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -1;
      ++pos;
    }
    size_t digits = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == digits) {
      if (!implicit_one) {
        pos = start;
        return false;
      }
      out = sign;  // bare "i" / "-i"
      return true;
    }
    out = sign * std::int64_t(std::stoll(text.substr(digits, pos - digits)));
    return true;
  };
  // First component: real part, or the whole thing may be an imaginary term.
  if (!read_signed(re, false)) return fail();
  if (pos < text.size() && text[pos] == 'i') {
    im = re;
    re = 0;
    ++pos;
  } else if (pos < text.size()) {
    size_t mark = pos;
    if (!read_signed(im, true)) return fail();
    if (pos >= text.size() || text[pos] != 'i') {
      (void)mark;
      return fail();
    }
    ++pos;
  }
  if (pos != text.size()) return fail();
  return {re, im};
}

void print_places(const std::vector<folprod::PlaceValuation>& places) {
  for (const auto& v : places) {
    switch (v.kind) {
      case folprod::PlaceValuation::Kind::finite_prime:
        std::printf("  p = %-18lld ord %+d   log N = %.12f   log|f|_v = %+.12f\n",
                    static_cast<long long>(v.p), v.ord, v.log_norm, v.log_abs);
        break;
      case folprod::PlaceValuation::Kind::gaussian_prime:
        std::printf("  pi = %-17s ord %+d   log N = %.12f   log|f|_v = %+.12f\n",
                    folprod::gauss_str(v.pi).c_str(), v.ord, v.log_norm,
                    v.log_abs);
        break;
      case folprod::PlaceValuation::Kind::infinite_real:
        std::printf("  infinite (real)                          log|f|_v = %+.12f\n",
                    v.log_abs);
        break;
      case folprod::PlaceValuation::Kind::infinite_complex:
        std::printf("  infinite (complex)                       log|f|_v = %+.12f\n",
                    v.log_abs);
        break;
    }
  }
}

std::string point_text(const folprod::PointCP1& p) {
  if (p.is_infinity()) return "inf";
  Cx z = p.as_complex();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

void print_orbits(const std::vector<folprod::ClosedOrbitRecord>& orbits) {
  std::printf("orbits: %zu\n", orbits.size());
  for (size_t i = 0; i < orbits.size(); ++i) {
    const auto& orb = orbits[i];
    std::printf("  [%zu] n = %d   l = %.12f   ord = %+d   points:", i,
                orb.period_n, orb.length_l, orb.order);
    for (const auto& p : orb.points) std::printf(" %s", point_text(p).c_str());
    std::printf("\n");
  }
}

int finish_report(const folprod::VerificationReport& report,
                  const std::string& json_path) {
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out)
      throw folprod::Error(folprod::ErrorCode::ParseError, "json",
                           "cannot write " + json_path);
    out << folprod::report_to_json(report);
  }
  if (!report.diagnostic.empty()) {
    std::fprintf(stderr, "%s\n", report.diagnostic.c_str());
    return 1;
  }
  return report.passed ? 0 : 2;
}

std::vector<folprod::Method> parse_partition(const std::string& text) {
  std::vector<folprod::Method> methods;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c == 'A')
      methods.push_back(folprod::Method::A);
    else if (c == 'B')
      methods.push_back(folprod::Method::B);
    else
      throw folprod::Error(folprod::ErrorCode::ParseError, "partition",
                           "expected letters A/B, got '" + text + "'");
  }
  return methods;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Verification laboratory for the foliated product formula: closed "
      "orbits of mapping-torus suspensions, leafwise argument-principle "
      "integrals, and the number-field analogy."};
  app.require_subcommand(1);

  std::string scenario_path, json_path, partition_text;
  auto* verify = app.add_subcommand(
      "verify", "Run the full product-formula verification on a scenario");
  verify->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  verify->add_option("--partition", partition_text,
                     "per-orbit method letters, e.g. AB or A,B "
                     "(A: l*ord terms, B: tube surface integrals)");
  verify->add_option("--json", json_path, "write the machine report here");

  std::string orbits_path;
  auto* orbits_cmd = app.add_subcommand(
      "orbits", "List the closed orbits carrying zeros and poles");
  orbits_cmd->add_option("scenario", orbits_path, "scenario JSON file")
      ->required();

  std::vector<std::string> num_args, den_args;
  std::string center_text;
  double radius = 0.25;
  auto* order_cmd = app.add_subcommand(
      "order", "Zeros-minus-poles count inside a chordal circle");
  order_cmd->add_option("--num", num_args,
                        "numerator coefficients, low degree first (re or "
                        "re,im; ';'-joinable)")
      ->required();
  order_cmd->add_option("--den", den_args, "denominator coefficients")
      ->required();
  order_cmd->add_option("--center", center_text, "circle center (re or re,im)")
      ->required();
  order_cmd->add_option("--radius", radius, "chordal radius")->required();

  std::string rational_text, gaussian_text;
  auto* arith_cmd = app.add_subcommand(
      "arith", "Places and product-formula residual over Q or Q(i)");
  auto* rat_opt =
      arith_cmd->add_option("--rational", rational_text, "p/q or p");
  auto* gauss_opt = arith_cmd->add_option(
      "--gaussian", gaussian_text, "a+bi or a+bi/c+di");
  rat_opt->excludes(gauss_opt);

  std::string analogy_path, analogy_rational;
  auto* analogy_cmd = app.add_subcommand(
      "analogy", "Closed orbits beside number-field places, one table");
  analogy_cmd->add_option("scenario", analogy_path, "scenario JSON file")
      ->required();
  analogy_cmd->add_option("--rational", analogy_rational, "p/q or p");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      folprod::MappingTorusScenario scenario =
          folprod::parse_scenario(scenario_path);
      folprod::VerificationReport report =
          folprod::verify_all(scenario, parse_partition(partition_text));
      report.scenario_digest = folprod::scenario_digest(scenario);

      std::printf("scenario: %s\n", scenario_path.c_str());
      std::printf("digest:   %s\n", report.scenario_digest.c_str());
      if (!scenario.transverse()) {
        std::printf("flow:     %zu compact leaves (Proposition 2 regime)\n",
                    scenario.compact_leaves().size());
      } else {
        print_orbits(report.orbits);
        std::printf("sum l*ord = %.15g   residual = %.3e\n", report.sum_l_ord,
                    report.residual);
        std::printf("order constancy: %s\n",
                    report.constancy_ok ? "ok" : "VIOLATED");
        for (const auto& tc : report.tube_checks)
          std::printf("tube check [%zu]: relative error %.3e\n",
                      tc.orbit_index, tc.relative_error);
        for (double s : report.stokes_checks)
          std::printf("stokes check: %.3e\n", s);
      }
      if (report.prop2_residual)
        std::printf("prop2 residual = %.3e\n", *report.prop2_residual);
      std::printf("%s\n", report.passed ? "PASS" : "FAIL");
      return finish_report(report, json_path);
    }

    if (*orbits_cmd) {
      folprod::MappingTorusScenario scenario =
          folprod::parse_scenario(orbits_path);
      print_orbits(folprod::find_singular_orbits(scenario));
      return 0;
    }

    if (*order_cmd) {
      folprod::RationalFunction f(parse_poly_args(num_args, "num"),
                                  parse_poly_args(den_args, "den"));
      folprod::PointCP1 center = folprod::PointCP1::from_complex(
          parse_complex_arg(center_text, "center"));
      int order = folprod::winding_order(f, center, radius);
      std::printf("order = %+d\n", order);
      return 0;
    }

    if (*arith_cmd) {
      std::vector<folprod::PlaceValuation> places;
      if (!rational_text.empty()) {
        size_t slash = rational_text.find('/');
        std::int64_t p = std::stoll(rational_text.substr(0, slash));
        std::int64_t q = slash == std::string::npos
                             ? 1
                             : std::stoll(rational_text.substr(slash + 1));
        places = folprod::rational_places(p, q);
        std::printf("places of %lld/%lld:\n", static_cast<long long>(p),
                    static_cast<long long>(q));
      } else if (!gaussian_text.empty()) {
        size_t slash = gaussian_text.find('/');
        folprod::GaussianInt n =
            parse_gaussian_arg(gaussian_text.substr(0, slash));
        folprod::GaussianInt d =
            slash == std::string::npos
                ? folprod::GaussianInt{1, 0}
                : parse_gaussian_arg(gaussian_text.substr(slash + 1));
        places = folprod::gaussian_places(n, d);
        std::printf("places of %s / %s:\n", folprod::gauss_str(n).c_str(),
                    folprod::gauss_str(d).c_str());
      } else {
        std::fprintf(stderr, "arith needs --rational or --gaussian\n");
        return 1;
      }
      print_places(places);
      double residual = folprod::product_formula_residual(places);
      std::printf("product formula residual = %.3e\n", residual);
      return residual < 1e-12 ? 0 : 2;
    }

    if (*analogy_cmd) {
      folprod::MappingTorusScenario scenario =
          folprod::parse_scenario(analogy_path);
      folprod::VerificationReport report =
          folprod::verify_product_formula(scenario);
      if (!report.diagnostic.empty()) {
        std::fprintf(stderr, "%s\n", report.diagnostic.c_str());
        return 1;
      }
      if (!analogy_rational.empty()) {
        size_t slash = analogy_rational.find('/');
        std::int64_t p = std::stoll(analogy_rational.substr(0, slash));
        std::int64_t q = slash == std::string::npos
                             ? 1
                             : std::stoll(analogy_rational.substr(slash + 1));
        auto places = folprod::rational_places(p, q);
        std::fputs(folprod::analogy_table(report, &places).c_str(), stdout);
      } else {
        std::fputs(folprod::analogy_table(report).c_str(), stdout);
      }
      return report.passed ? 0 : 2;
    }
  } catch (const folprod::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
