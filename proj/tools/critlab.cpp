// critlab: command-line front end. Every subcommand prints a human-readable
// summary, or with --json the deterministic report envelope.
//
// Exit codes: 0 ok, 1 malformed input, 2 precondition not met, 3 resource cap,
// 4 internal failure.

#include "critlab/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace critlab;
using report::Json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) {
    Rational r = parse_rational(t);
    if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw std::invalid_argument("not a small integer: " + t);
    out.push_back(static_cast<int>(r.get_num().get_si()));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(report::rat(x));
  return out;
}

// d is optional on the command line; when given it must match the a-list.
family::FamilySpec make_spec(int d, const std::string& a, const std::string& b) {
  auto spec = family::FamilySpec::numeric(parse_rationals(a), parse_rational(b));
  if (d != 0 && spec.degree() != d)
    throw std::invalid_argument("--a needs d-1 = " + std::to_string(d - 1) + " entries, got " + std::to_string(spec.degree() - 1));
  return spec;
}

Json spec_inputs(const family::FamilySpec& s, std::uint64_t p) {
  return {{"d", s.degree()}, {"a", rationals_json(s.a())}, {"b", report::rat(s.b())}, {"p", p}};
}

void print_human(const Json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const bool flat_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    if (v.is_object() && !v.empty()) {
      os << pad << it.key() << ":\n";
      print_human(v, os, indent + 2);
    } else if (v.is_array() && !flat_array) {
      os << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object()) {
          os << pad << "  [" << i << "]\n";
          print_human(v[i], os, indent + 4);
        } else if (v[i].is_array()) {
          os << pad << "  [" << i << "] [";
          for (std::size_t k = 0; k < v[i].size(); ++k) os << (k ? ", " : "") << scalar(v[i][k]);
          os << "]\n";
        } else {
          os << pad << "  [" << i << "] " << scalar(v[i]) << "\n";
        }
      }
    } else if (flat_array) {
      os << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
      os << "]\n";
    } else {
      os << pad << it.key() << ": " << scalar(v) << "\n";
    }
  }
}

struct Output {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for p-adic critical orbits of polynomial families"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print the JSON report")->configurable(false);

  Output out;

  // val
  std::string val_q;
  std::uint64_t val_p_arg = 0;
  auto* val = app.add_subcommand("val", "p-adic valuation of a rational");
  val->add_option("q", val_q, "rational number n or n/m")->required();
  val->add_option("-p", val_p_arg, "prime")->required();

  // cyclo
  std::uint64_t cy_m = 0, cy_p = 0;
  auto* cyclo = app.add_subcommand("cyclo", "valuation of 1 - zeta_m with the Phi_m(1) cross-check");
  cyclo->add_option("-m", cy_m, "order of the root of unity")->required();
  cyclo->add_option("-p", cy_p, "prime")->required();

  // family
  int fam_d = 0;
  std::uint64_t fam_p = 0;
  bool fam_pp = false, fam_lambda = false;
  std::string fam_numeric;
  auto* fam = app.add_subcommand("family", "the critically marked family F_{a,b}");
  fam->add_option("-d", fam_d, "degree")->required();
  fam->add_option("-p", fam_p, "prime for --check-pp / --lambda");
  fam->add_flag("--check-pp", fam_pp, "check the mod-p congruences for F and Phi");
  fam->add_flag("--lambda", fam_lambda, "check the Jacobian of the recentering map mod p");
  fam->add_option("--numeric", fam_numeric, "a1,...,a_{d-1};b");

  // orbit / pcb / height share the spec flags
  int sp_d = 0;
  std::string sp_a, sp_b, sp_zeta;
  std::uint64_t sp_p = 0;
  std::size_t sp_steps = 20;
  auto add_spec = [&](CLI::App* sc) {
    sc->add_option("-d", sp_d, "degree (checked against --a)");
    sc->add_option("--a", sp_a, "critical points a1,...,a_{d-1}")->required();
    sc->add_option("--b", sp_b, "critical value b = F(abar)")->required();
    sc->add_option("-p", sp_p, "prime")->required();
  };
  auto* orb = app.add_subcommand("orbit", "iterate a point and certify escape or boundedness");
  add_spec(orb);
  orb->add_option("--zeta", sp_zeta, "starting point")->required();
  orb->add_option("--max-steps", sp_steps, "iteration budget");
  auto* pcb = app.add_subcommand("pcb", "integrality criterion for postcritical boundedness");
  add_spec(pcb);
  auto* height = app.add_subcommand("height", "local canonical height of a point, or of all critical points");
  add_spec(height);
  height->add_option("--zeta", sp_zeta, "point (default: every critical point)");
  height->add_option("--max-steps", sp_steps, "iteration budget");

  // gleason / misiurewicz
  int gl_d = 0, gl_N = 0, gl_n = 0;
  std::string cache_dir;
  bool no_cache = false;
  auto add_cache = [&](CLI::App* sc) {
    sc->add_option("--cache", cache_dir, "cache directory (default: $CRITLAB_CACHE or ~/.cache/critlab)");
    sc->add_flag("--no-cache", no_cache, "compute without touching the cache");
  };
  auto* gle = app.add_subcommand("gleason", "simplicity of the roots of Gamma_N");
  gle->add_option("-d", gl_d, "degree")->required();
  gle->add_option("-N", gl_N, "period")->required();
  add_cache(gle);
  auto* mis = app.add_subcommand("misiurewicz", "multiple roots of Gamma_N - Gamma_n");
  mis->add_option("-d", gl_d, "degree")->required();
  mis->add_option("-N", gl_N, "N")->required();
  mis->add_option("-n", gl_n, "n < N")->required();
  add_cache(mis);

  // variety
  int va_d = 0;
  std::string va_m, va_n;
  std::uint64_t va_p = 0;
  auto* var = app.add_subcommand("variety", "explicit points and simplicity of V^{m,n} for d = 2, 3");
  var->add_option("-d", va_d, "degree (2 or 3)")->required();
  var->add_option("--m", va_m, "m_1,...")->required();
  var->add_option("--n", va_n, "n_1,...")->required();
  var->add_option("-p", va_p, "prime")->required();

  // psi
  std::string ps_chain, ps_primes;
  auto* psi_cmd = app.add_subcommand("psi", "postcritically finite psi chains and their rescalings");
  psi_cmd->add_option("--chain", ps_chain, "indices n1,n2,... (psi_{n1} applied first)")->required();
  psi_cmd->add_option("-p", ps_primes, "primes p1,p2,...")->required();

  for (auto* sc : app.get_subcommands({})) sc->add_flag("--json", as_json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto gamma_source = [&](int d, int N) -> QPoly {
    if (no_cache) return gleason::gamma(d, N);
    gleason::GammaCache cache(cache_dir.empty() ? gleason::default_cache_dir() : std::filesystem::path(cache_dir));
    try {
      return cache.get(d, N);
    } catch (const std::filesystem::filesystem_error&) {
      return gleason::gamma(d, N);  // unwritable cache: compute in memory
    }
  };

  try {
    if (*val) {
      out.command = "val";
      const Rational q = parse_rational(val_q);
      const Prime p(val_p_arg);
      out.inputs = {{"q", report::rat(q)}, {"p", val_p_arg}};
      out.result = {{"valuation", report::val(val_p(q, p))}};
    } else if (*cyclo) {
      out.command = "cyclo";
      if (cy_m < 1) throw std::invalid_argument("m must be >= 1");
      const Prime p(cy_p);
      const Rational phi1 = cyclotomic_poly(cy_m).evaluate(Rational(1));
      const ValOrInf v = val_one_minus_zeta(cy_m, p);
      const ValOrInf oracle = is_zero(phi1) ? ValOrInf::infinity() : val_p(phi1, p).scaled(Rational(1, euler_phi(cy_m)));
      out.inputs = {{"m", cy_m}, {"p", cy_p}};
      out.result = {{"valuation", report::val(v)}, {"oracle_valuation", report::val(oracle)}, {"phi_m_at_1", report::rat(phi1)},
                    {"agrees", v == oracle}};
    } else if (*fam) {
      out.command = "family";
      if (fam_d < 2) throw std::invalid_argument("degree must be >= 2");
      out.inputs = {{"d", fam_d}};
      out.result = {{"d", fam_d}};
      if ((fam_pp || fam_lambda) && fam_p == 0) throw std::invalid_argument("--check-pp and --lambda need -p");
      if (fam_p != 0) {
        const Prime p(fam_p);
        out.inputs["p"] = fam_p;
        out.result["epsilon"] = report::rat(family::epsilon(fam_d, p));
        if (fam_pp) out.result["congruences"] = report::to_json(family::check_lemma_pp(fam_d, p));
        if (fam_lambda) out.result["lambda_jacobian"] = report::to_json(family::lambda_jacobian_check(fam_d, p));
      }
      if (!fam_numeric.empty()) {
        const auto parts = split(fam_numeric, ';');
        if (parts.size() != 2) throw std::invalid_argument("--numeric expects a1,...,a_{d-1};b");
        const auto spec = make_spec(fam_d, parts[0], parts[1]);
        out.inputs["a"] = rationals_json(spec.a());
        out.inputs["b"] = report::rat(spec.b());
        out.result["F"] = report::poly(family::build_F(spec));
        out.result["critical_value_barycenter"] = report::rat(family::critical_value_barycenter(spec));
      } else if (!fam_pp && !fam_lambda) {
        out.result["F"] = family::build_F_symbolic(fam_d).str();
      }
    } else if (*orb) {
      out.command = "orbit";
      const auto spec = make_spec(sp_d, sp_a, sp_b);
      const Prime p(sp_p);
      const Rational zeta = parse_rational(sp_zeta);
      out.inputs = spec_inputs(spec, sp_p);
      out.inputs["zeta"] = report::rat(zeta);
      out.inputs["max_steps"] = sp_steps;
      out.result = {{"floor", report::to_json(orbit::orbit_floor(spec, p))},
                    {"verdict", report::to_json(orbit::iterate_orbit(spec, zeta, p, sp_steps))}};
    } else if (*pcb) {
      out.command = "pcb";
      const auto spec = make_spec(sp_d, sp_a, sp_b);
      const Prime p(sp_p);
      out.inputs = spec_inputs(spec, sp_p);
      out.result = {{"postcritically_bounded", orbit::decide_pcb(spec, p)}, {"floor", report::to_json(orbit::orbit_floor(spec, p))}};
    } else if (*height) {
      out.command = "height";
      const auto spec = make_spec(sp_d, sp_a, sp_b);
      const Prime p(sp_p);
      out.inputs = spec_inputs(spec, sp_p);
      out.inputs["max_steps"] = sp_steps;
      if (!sp_zeta.empty()) {
        const Rational zeta = parse_rational(sp_zeta);
        out.inputs["zeta"] = report::rat(zeta);
        out.result = report::to_json(orbit::canonical_height(spec, zeta, p, sp_steps));
      } else {
        out.result = report::to_json(orbit::postcritical_height(spec, p, sp_steps));
      }
    } else if (*gle) {
      out.command = "gleason";
      gleason::check_degree(gl_d);
      if (gl_N < 1) throw std::invalid_argument("N must be >= 1");
      out.inputs = {{"d", gl_d}, {"N", gl_N}};
      out.result = report::to_json(gleason::check_gleason_poly(gl_d, gl_N, gamma_source(gl_d, gl_N)));
    } else if (*mis) {
      out.command = "misiurewicz";
      gleason::check_degree(gl_d);
      if (!(gl_N > gl_n && gl_n >= 1)) throw std::invalid_argument("need N > n >= 1");
      // warm the in-memory table from the cache; the check reuses it
      if (!no_cache) gamma_source(gl_d, gl_N);
      out.inputs = {{"d", gl_d}, {"N", gl_N}, {"n", gl_n}};
      out.result = report::to_json(gleason::check_misiurewicz(gl_d, gl_N, gl_n));
    } else if (*var) {
      out.command = "variety";
      const auto m = parse_ints(va_m), n = parse_ints(va_n);
      const Prime p(va_p);
      out.inputs = {{"d", va_d}, {"m", m}, {"n", n}, {"p", va_p}};
      const auto w = variety::eliminate(va_d, m, n);
      out.result["witness"] = report::to_json(w);
      out.result["audit"] = report::to_json(variety::integrality_audit(w, p));
      try {
        out.result["simplicity"] = report::to_json(variety::check_simplicity_symbolic(va_d, n, p));
      } catch (const DomainError& e) {
        out.result["simplicity"] = nullptr;
        out.result["simplicity_skipped"] = e.what();
      }
    } else if (*psi_cmd) {
      out.command = "psi";
      const auto idx = parse_ints(ps_chain);
      std::vector<std::uint64_t> primes;
      for (int q : parse_ints(ps_primes)) {
        if (q < 2) throw std::invalid_argument("not a prime: " + std::to_string(q));
        primes.push_back(Prime(static_cast<std::uint64_t>(q)).value());
      }
      out.inputs = {{"chain", idx}, {"primes", primes}};
      out.result = report::to_json(psi::rescale_report(psi::build_chain(idx), primes));
    }
  } catch (const DomainError& e) {
    std::cerr << "precondition not met: " << e.what() << "\n";
    return 2;
  } catch (const variety::DegenerateError& e) {
    std::cerr << "precondition not met: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }

  if (as_json) {
    Json env = report::envelope(out.command, out.inputs, out.result);
    report::validate_report(env);
    std::cout << env.dump(2) << "\n";
  } else {
    std::cout << out.command << "\n";
    print_human(out.inputs, std::cout, 2);
    std::cout << "result:\n";
    print_human(out.result, std::cout, 2);
  }
  return 0;
}
