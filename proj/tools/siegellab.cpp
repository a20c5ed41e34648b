#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exactmat.hpp"
#include "fourier.hpp"
#include "geometry.hpp"
#include "hecke.hpp"
#include "jacobi.hpp"
#include "jsonio.hpp"
#include "lattice.hpp"
#include "lfn.hpp"
#include "qmat.hpp"
#include "reduction.hpp"
#include "theta.hpp"

using namespace sgl;

namespace {

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string read_input(const std::string& in_path, bool pipe) {
  if (pipe && !in_path.empty())
    throw ArgumentError("choose either --in or --pipe, not both");
  if (pipe) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (in_path.empty()) throw ArgumentError("command needs --in or --pipe");
  std::ifstream in(in_path);
  if (!in) throw ArgumentError("cannot open input file: " + in_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Budget 0 means unlimited; anything else caps the planned enumeration and
// turns an oversized request into a resource error up front.
void check_budget(long planned, long budget) {
  if (budget > 0 && planned > budget) {
    throw TruncationError("planned enumeration of " + std::to_string(planned) +
                          " nodes exceeds the budget " +
                          std::to_string(budget));
  }
}

long grid_nodes(int genus, long bound) {
  if (bound < 0) return 0;
  long rows = bound / 2 + 1;
  if (genus <= 1) return rows;
  return rows * rows * (2 * bound + 1);
}

long lattice_box_nodes(int rank, long bound, int genus) {
  double side = 2.0 * std::floor(std::sqrt(static_cast<double>(bound))) + 1.0;
  double box = std::pow(side, rank * std::max(1, genus));
  if (box > 4e18) return std::numeric_limits<long>::max() / 2;
  return static_cast<long>(box);
}

std::string canonical_op(const std::string& op) {
  if (op == "T(p)" || op == "T") return "T";
  if (op == "T0(p2)" || op == "T0") return "T0";
  if (op == "T1(p2)" || op == "T1") return "T1";
  if (op == "T2(p2)" || op == "T2") return "T2";
  if (op == "T3(p2)" || op == "T3") return "T3";
  throw ArgumentError("unknown operator: " + op);
}

ThetaCharacteristic parse_characteristic(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos)
    throw ArgumentError("characteristic format is a1,..;b1,..");
  auto parse_half = [](const std::string& part) {
    std::vector<int> out;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "0" && item != "1")
        throw ArgumentError("characteristic entries are 0 or 1");
      out.push_back(item == "1" ? 1 : 0);
    }
    if (out.empty()) throw ArgumentError("empty characteristic half");
    return out;
  };
  ThetaCharacteristic ch;
  ch.upper = parse_half(text.substr(0, semi));
  ch.lower = parse_half(text.substr(semi + 1));
  if (ch.upper.size() != ch.lower.size())
    throw ArgumentError("characteristic halves differ in length");
  return ch;
}

std::vector<Q> parse_rational_list(const std::string& text) {
  std::vector<Q> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(q_from_string(item));
  if (out.empty()) throw ArgumentError("empty eigenvalue list");
  return out;
}

std::vector<long> parse_index_list(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_array())
    throw ArgumentError(std::string("payload needs integer array: ") + name);
  std::vector<long> out;
  for (const Json& v : *it) {
    if (!v.is_number_integer())
      throw ArgumentError(std::string("entries must be integers: ") + name);
    out.push_back(v.get<long>());
  }
  return out;
}

// a(p) of the weight 18 eigenform, built from the 24th power of the Euler
// product times the weight 6 Eisenstein series.
Q weight18_coefficient(long n) {
  long nmax = n;
  std::vector<Z> phi(nmax + 1, Z(0));
  phi[0] = 1;
  for (long j = 1;; ++j) {
    long g1 = j * (3 * j - 1) / 2;
    long g2 = j * (3 * j + 1) / 2;
    if (g1 > nmax) break;
    Z s = (j % 2 == 1) ? -1 : 1;
    phi[g1] += s;
    if (g2 <= nmax) phi[g2] += s;
  }
  std::vector<Z> pw(nmax + 1, Z(0));
  pw[0] = 1;
  for (int t = 0; t < 24; ++t) {
    std::vector<Z> nxt(nmax + 1, Z(0));
    for (long i = 0; i <= nmax; ++i) {
      if (pw[i] == 0) continue;
      for (long j = 0; i + j <= nmax; ++j) nxt[i + j] += pw[i] * phi[j];
    }
    pw = nxt;
  }
  std::vector<Q> e6(nmax + 1, Q(0));
  e6[0] = 1;
  for (long m = 1; m <= nmax; ++m) {
    Z sig = 0;
    for (long d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      Z t;
      mpz_pow_ui(t.get_mpz_t(), Z(d).get_mpz_t(), 5);
      sig += t;
    }
    e6[m] = Q(-504) * Q(sig);
  }
  Q out(0);
  for (long i = 0; i + 1 <= n; ++i) out += e6[i] * Q(pw[n - 1 - i]);
  return Q(out);
}

EvenLattice lattice_by_name(const std::string& name) {
  if (name == "e8") return lattice_e8();
  if (name == "e8e8") return lattice_e8e8();
  if (name == "d16plus") return lattice_d16plus();
  throw ArgumentError("unknown lattice: " + name);
}

void emit(const Json& payload, const std::string& out_path) {
  std::string text = dump_json(payload);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ArgumentError("cannot open output file: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("SIEGELLAB_THREADS")) {
    int n = std::atoi(t);
    if (n >= 1) omp_set_num_threads(n);
  }

  CLI::App app{"siegellab: exact Siegel modular forms and numeric geometry"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  bool pipe = false;
  long bound = -1, budget = 0, p = 2;
  int genus = 1;
  app.add_option("--in", in_path, "input JSON file")->capture_default_str();
  app.add_option("--out", out_path, "output JSON file (default stdout)");
  app.add_flag("--pipe", pipe, "read input JSON from standard input");
  app.add_option("--bound", bound, "truncation bound");
  app.add_option("--genus", genus, "genus");
  app.add_option("--p", p, "prime");
  app.add_option("--budget", budget, "enumeration node cap (0 = unlimited)");

  auto* c_reduce = app.add_subcommand("reduce", "reduce a form or a point");
  std::string mode;
  c_reduce->add_option("--mode", mode, "minkowski or siegel")->required();

  auto* c_volume = app.add_subcommand("volume", "exact covolume");
  long mc_samples = 0;
  std::uint64_t mc_seed = 1;
  c_volume->add_option("--mc-samples", mc_samples,
                       "genus 1 Monte-Carlo sample count (0 = exact only)");
  c_volume->add_option("--mc-seed", mc_seed, "Monte-Carlo seed");

  auto* c_distance = app.add_subcommand("distance", "geodesic distance");
  double tolerance = -1.0;
  c_distance->add_option("--tolerance", tolerance,
                         "symmetry audit threshold");

  auto* c_cayley = app.add_subcommand("cayley", "bounded domain transform");
  bool inverse = false;
  c_cayley->add_flag("--inverse", inverse, "map the half space to the disk");
  c_cayley->add_option("--tolerance", tolerance, "roundtrip audit threshold");

  auto* c_torus = app.add_subcommand("torus-ip", "character pairing");
  int grid = 32;
  c_torus->add_option("--grid", grid, "quadrature points per direction");

  auto* c_theta = app.add_subcommand("theta", "lattice theta series");
  std::string lattice_name = "e8";
  c_theta->add_option("--lattice", lattice_name, "e8, e8e8, or d16plus");

  auto* c_tconst = app.add_subcommand("theta-const", "theta constant");
  std::string char_text;
  c_tconst->add_option("--char", char_text, "characteristic a1,..;b1,..")
      ->required();

  app.add_subcommand("chi10", "weight 10 cusp form");

  auto* c_eis = app.add_subcommand("eisenstein", "Eisenstein series");
  long weight = 4;
  c_eis->add_option("--weight", weight, "even weight")->required();

  app.add_subcommand("phi", "drop to the boundary component");

  auto* c_hecke = app.add_subcommand("hecke", "apply an operator");
  std::string op = "T(p)";
  bool apply = false;
  c_hecke->add_option("--op", op, "T(p), T1(p2), or T2(p2)");
  c_hecke->add_flag("--apply", apply, "print the image expansion");

  auto* c_satake = app.add_subcommand("satake", "solve for local parameters");
  long sat_k = 10;
  std::string ev_text;
  c_satake->add_option("--k", sat_k, "weight")->required();
  c_satake->add_option("--ev", ev_text, "eigenvalues a or a,b,c")->required();

  auto* c_fj = app.add_subcommand("fj", "Fourier-Jacobi layer");
  long fj_index = 1;
  c_fj->add_option("--index", fj_index, "layer index");

  auto* c_vlift = app.add_subcommand("vlift", "raise the Jacobi index");
  long vm = 1;
  c_vlift->add_option("--m", vm, "index multiplier")->required();

  app.add_subcommand("maass-check", "test the divisor relation");

  auto* c_euler = app.add_subcommand("euler", "local factor");
  std::string type = "spinor";
  int root = 0;
  c_euler->add_option("--type", type, "spinor, standard, or hecke");
  c_euler->add_option("--root", root, "which parameter solution to use");

  app.add_subcommand("sk-check", "lift factorization consistency");

  for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::ostringstream echo;
  for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];
  auto started = std::chrono::steady_clock::now();

  int status = 0;
  std::string input;
  try {
    Json out;

    if (*c_reduce) {
      input = read_input(in_path, pipe);
      Json j = parse_json(input);
      if (mode == "minkowski") {
        MinkowskiResult r = minkowski_reduce(matrix_from_json(j));
        out = Json{{"mode", "minkowski"},
                   {"reduced", matrix_json(r.reduced)},
                   {"transform", matrix_json_z(r.transform)},
                   {"steps", r.steps}};
      } else if (mode == "siegel") {
        SiegelResult r = siegel_reduce(point_from_json(j));
        out = Json{{"mode", "siegel"},
                   {"reduced", point_json(r.reduced)},
                   {"transform", matrix_json(r.transform)},
                   {"steps", r.steps}};
      } else {
        throw ArgumentError("reduce mode is minkowski or siegel");
      }
    } else if (*c_volume) {
      ExactVolume v = siegel_volume(genus);
      out = Json{{"rational", q_to_string(v.rational)},
                 {"pi_power", v.pi_power},
                 {"float", v.float_value}};
      if (mc_samples > 0) {
        if (genus != 1)
          throw ArgumentError("Monte-Carlo sampling covers genus 1 only");
        check_budget(mc_samples, budget);
        out["mc"] = Json{{"samples", mc_samples},
                         {"seed", mc_seed},
                         {"value", mc_volume_f1(mc_samples, mc_seed)}};
      }
    } else if (*c_distance) {
      input = read_input(in_path, pipe);
      Json j = parse_json(input);
      CMat om0 = cmat_from_json(j.at("omega0"));
      CMat om1 = cmat_from_json(j.at("omega1"));
      double d01 = geodesic_distance(om0, om1);
      double d10 = geodesic_distance(om1, om0);
      double tol = tolerance > 0 ? tolerance : tolerances().invariance_rel;
      if (std::abs(d01 - d10) > tol * (1.0 + d01))
        throw InconsistencyError("distance symmetry audit failed");
      out = Json{{"distance", d01}};
    } else if (*c_cayley) {
      input = read_input(in_path, pipe);
      Json j = parse_json(input);
      double tol = tolerance > 0 ? tolerance : tolerances().cayley_roundtrip;
      CMat image;
      CMat back;
      if (inverse) {
        CMat omega = cmat_from_json(j.at("omega"));
        image = cayley_inv(omega);
        back = cayley(image);
        if ((back - omega).cwiseAbs().maxCoeff() > tol)
          throw InconsistencyError("cayley roundtrip audit failed");
      } else {
        CMat w = cmat_from_json(j.at("w"));
        image = cayley(w);
        back = cayley_inv(image);
        if ((back - w).cwiseAbs().maxCoeff() > tol)
          throw InconsistencyError("cayley roundtrip audit failed");
      }
      out = Json{{"image", cmat_json(image)}};
    } else if (*c_torus) {
      input = read_input(in_path, pipe);
      Json j = parse_json(input);
      CMat omega = cmat_from_json(j.at("omega"));
      TorusCharIndex i1{parse_index_list(j, "a1"), parse_index_list(j, "b1")};
      TorusCharIndex i2{parse_index_list(j, "a2"), parse_index_list(j, "b2")};
      int g = static_cast<int>(omega.rows());
      double planned = std::pow(static_cast<double>(grid), 2 * g);
      check_budget(planned > 4e18 ? std::numeric_limits<long>::max() / 2
                                  : static_cast<long>(planned),
                   budget);
      std::complex<double> v = torus_inner_product(omega, i1, i2, grid, true);
      out = Json{{"grid", grid}, {"re", v.real()}, {"im", v.imag()}};
    } else if (*c_theta) {
      if (bound < 0) throw ArgumentError("theta needs --bound");
      EvenLattice l = lattice_by_name(lattice_name);
      check_budget(lattice_box_nodes(l.rank, bound, genus), budget);
      out = expansion_json(theta_expansion(l, genus, bound));
    } else if (*c_tconst) {
      if (bound < 0) throw ArgumentError("theta-const needs --bound");
      ThetaCharacteristic ch = parse_characteristic(char_text);
      check_budget(grid_nodes(ch.genus(), 4 * bound), budget);
      out = expansion_json(theta_constant(ch, bound));
    } else if (app.got_subcommand("chi10")) {
      if (bound < 0) throw ArgumentError("chi10 needs --bound");
      check_budget(10 * grid_nodes(2, bound), budget);
      out = expansion_json(chi10(bound));
    } else if (*c_eis) {
      if (bound < 0) throw ArgumentError("eisenstein needs --bound");
      check_budget(grid_nodes(genus, bound), budget);
      out = expansion_json(eisenstein_witt(weight, genus, bound));
    } else if (app.got_subcommand("phi")) {
      input = read_input(in_path, pipe);
      out = expansion_json(siegel_phi(expansion_from_json(parse_json(input))));
    } else if (*c_hecke) {
      input = read_input(in_path, pipe);
      FourierExpansion f = expansion_from_json(parse_json(input));
      std::string canon = canonical_op(op);
      HeckeElement e = coset_reps(canon, p, f.genus());
      check_budget(e.degree() * grid_nodes(f.genus(), f.trace_bound()),
                   budget);
      if (apply) {
        out = expansion_json(hecke_apply_element(f, e));
      } else {
        out = Json{{"op", op},
                   {"p", p},
                   {"eigenvalue", q_to_string(eigenvalue(f, canon, p))}};
      }
    } else if (*c_satake) {
      std::vector<Q> ev = parse_rational_list(ev_text);
      Json sols = Json::array();
      if (genus == 1) {
        if (ev.size() != 1)
          throw ArgumentError("genus 1 takes a single eigenvalue");
        sols.push_back(satake_json(satake_solve_g1(sat_k, p, ev[0])));
      } else if (genus == 2) {
        if (ev.size() != 3)
          throw ArgumentError(
              "genus 2 takes eigenvalues of T(p), T1(p^2), T2(p^2)");
        for (const SatakeData& sd : satake_solve(sat_k, p, ev[0], ev[1], ev[2]))
          sols.push_back(satake_json(sd));
      } else {
        throw ArgumentError("satake covers genus 1 and 2");
      }
      out = Json{{"genus", genus}, {"p", p}, {"k", sat_k},
                 {"solutions", std::move(sols)}};
    } else if (*c_fj) {
      input = read_input(in_path, pipe);
      FourierExpansion f = expansion_from_json(parse_json(input));
      out = jacobi_json(fourier_jacobi(f, fj_index));
    } else if (*c_vlift) {
      input = read_input(in_path, pipe);
      JacobiFormExpansion phi = jacobi_from_json(parse_json(input));
      check_budget((phi.nbound + 1) * (4 * phi.nbound * vm + 1), budget);
      out = jacobi_json(v_operator(phi, vm, bound));
    } else if (app.got_subcommand("maass-check")) {
      input = read_input(in_path, pipe);
      FourierExpansion f = expansion_from_json(parse_json(input));
      check_budget(grid_nodes(f.genus(), f.trace_bound()), budget);
      out = Json{{"maass", is_maass_space(f)}};
    } else if (*c_euler) {
      if (type == "hecke") {
        input = read_input(in_path, pipe);
        FourierExpansion f = expansion_from_json(parse_json(input));
        if (f.genus() != 1)
          throw ArgumentError("the hecke factor type covers genus 1");
        if (f.weight().get_den() != 1)
          throw ArgumentError("the hecke factor type needs integer weight");
        long k = f.weight().get_num().get_si();
        Q ap = eigenvalue(f, "T", p);
        Z pk;
        mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(),
                   static_cast<unsigned long>(k - 1));
        out = euler_json(EulerFactor{p, {Q(1), Q(-ap), Q(pk)}});
      } else if (type == "spinor" || type == "standard") {
        input = read_input(in_path, pipe);
        Json j = parse_json(input);
        Json sol = j;
        if (j.contains("solutions")) {
          const Json& sols = j.at("solutions");
          if (!sols.is_array() || root < 0 ||
              root >= static_cast<int>(sols.size()))
            throw ArgumentError("solution index out of range");
          sol = sols[root];
        }
        SatakeData sd = satake_from_json(sol);
        out = euler_json(type == "spinor" ? spinor_factor(sd)
                                          : standard_factor(sd));
      } else {
        throw ArgumentError("euler type is spinor, standard, or hecke");
      }
    } else if (app.got_subcommand("sk-check")) {
      long b = bound >= 0 ? bound : 4 * p * p;
      if (b < 4 * p * p)
        throw TruncationError(
            "the similitude p^2 eigenvalues need bound at least " +
            std::to_string(4 * p * p));
      check_budget(10 * grid_nodes(2, b), budget);
      FourierExpansion f = chi10(b);
      Q lt = eigenvalue(f, "T", p);
      Q l1 = eigenvalue(f, "T1", p);
      Q l2 = eigenvalue(f, "T2", p);
      std::vector<SatakeData> sols = satake_solve(10, p, lt, l1, l2);
      EulerFactor spin = spinor_factor(sols.front());
      Q af = weight18_coefficient(p);
      Z p8, p9, p17;
      mpz_pow_ui(p8.get_mpz_t(), Z(p).get_mpz_t(), 8);
      mpz_pow_ui(p9.get_mpz_t(), Z(p).get_mpz_t(), 9);
      mpz_pow_ui(p17.get_mpz_t(), Z(p).get_mpz_t(), 17);
      EulerFactor expected =
          EulerFactor{p, {Q(1), Q(-p9)}}
              .multiply(EulerFactor{p, {Q(1), Q(-p8)}})
              .multiply(EulerFactor{p, {Q(1), Q(-af), Q(p17)}});
      out = Json{{"p", p},
                 {"bound", b},
                 {"af", q_to_string(af)},
                 {"eigenvalue", q_to_string(lt)},
                 {"match", spin == expected},
                 {"spinor", euler_json(spin)}};
      if (spin != expected)
        throw InconsistencyError(
            "spinor factor disagrees with the elliptic factorization");
    } else {
      std::cerr << app.help();
      return 2;
    }

    emit(out, out_path);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = ArgumentError::exit_code;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = TruncationError::exit_code;
  } catch (const InconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = InconsistencyError::exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 2;
  }

  auto elapsed = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv1a(input)));
  std::cerr << "command: " << echo.str() << "\n"
            << "digest: " << digest << "\n"
            << "time_ms: " << elapsed << "\n";
  return status;
}
