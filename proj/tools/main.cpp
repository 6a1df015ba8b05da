// Command-line surface over the library: parallel sums and differences,
// shorted operators, Lebesgue decompositions, quasi-unit certificates,
// infimum tests, the quasi-unit lattice, the Galois connection, the form
// isomorphism, and the seeded property-suite runner.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "psdlat/psdlat.hpp"

namespace {

using namespace psdlat;

struct GlobalOptions {
  bool json = false;
  Tolerances tol{};
  std::string out; // optional output path for matrix results
};

PsdMatrix load_psd(const std::string& path, const Tolerances& tol) {
  return PsdMatrix(read_matrix_file(path), tol);
}

void emit_matrix(const GlobalOptions& g, const Matrix& m) {
  if (!g.out.empty()) {
    write_matrix_file(g.out, m);
    std::cout << "wrote " << g.out << "\n";
  } else {
    write_matrix(std::cout, m);
  }
}

std::string witness_name(InfimumResult::Witness w) {
  switch (w) {
    case InfimumResult::Witness::first_below_second: return "[A]B <= [B]A";
    case InfimumResult::Witness::second_below_first: return "[B]A <= [A]B";
    case InfimumResult::Witness::both: return "both (shorts coincide)";
    default: return "none";
  }
}

nlohmann::json certificate_to_json(const QuasiUnitCertificate& c) {
  nlohmann::json j;
  j["verdict"] = c.verdict;
  j["fixed_point_gap"] = c.fixed_point_gap;
  j["fixed_point_tol"] = c.fixed_point_tol;
  j["projection_defect"] = c.projection_defect;
  j["projection_tol"] = c.projection_tol;
  j["singularity_gap"] = c.singularity_gap;
  j["singularity_tol"] = c.singularity_tol;
  j["half_lemma_gap"] = c.half_lemma_gap;
  j["half_lemma_tol"] = c.half_lemma_tol;
  if (c.recovered_projection)
    j["recovered_projection"] = matrix_to_json(*c.recovered_projection);
  return j;
}

bool parse_dims(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for parallel sums, shorted operators, "
               "Lebesgue decompositions and quasi-unit lattices of positive "
               "semidefinite matrices"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_flag("--json", g.json, "machine-readable reports");
  app.add_option("--out", g.out, "write the resulting matrix to this file");
  app.add_option("--tol-sym", g.tol.sym, "symmetry tolerance");
  app.add_option("--tol-psd", g.tol.psd, "positivity tolerance");
  app.add_option("--tol-rank", g.tol.rank, "rank truncation tolerance");
  app.add_option("--tol-order", g.tol.order, "Loewner order tolerance");
  app.add_option("--tol-conv", g.tol.conv, "convergence / cross-check tolerance");

  // ------------------------------------------------------------- parsum
  std::string in_a, in_b;
  CLI::App* parsum = app.add_subcommand("parsum", "parallel sum A : B");
  parsum->add_option("A", in_a, "matrix file")->required();
  parsum->add_option("B", in_b, "matrix file")->required();

  // ------------------------------------------------------------ pardiff
  std::string diff_s, diff_t;
  CLI::App* pardiff =
      app.add_subcommand("pardiff", "parallel difference S / T (minimal X with X:T=S)");
  pardiff->add_option("S", diff_s, "matrix file")->required();
  pardiff->add_option("T", diff_t, "matrix file")->required();

  // -------------------------------------------------------------- short
  std::string short_a, short_b, short_method = "all";
  CLI::App* shortcmd = app.add_subcommand("short", "generalized short [A]B");
  shortcmd->add_option("A", short_a, "matrix file")->required();
  shortcmd->add_option("B", short_b, "matrix file")->required();
  shortcmd->add_option("--method", short_method, "aux|schur|iter|all (default all)")
      ->check(CLI::IsMember({"aux", "schur", "iter", "all"}));

  // ----------------------------------------------------------- lebesgue
  std::string leb_a, leb_b;
  CLI::App* lebesgue =
      app.add_subcommand("lebesgue", "Lebesgue decomposition of B with respect to A");
  lebesgue->add_option("A", leb_a, "matrix file")->required();
  lebesgue->add_option("B", leb_b, "matrix file")->required();

  // ---------------------------------------------------------- quasiunit
  std::string qu_a, qu_b;
  CLI::App* quasiunit =
      app.add_subcommand("quasiunit", "quasi-unit certificate for A in [0, B]");
  quasiunit->add_option("A", qu_a, "matrix file")->required();
  quasiunit->add_option("B", qu_b, "matrix file")->required();

  // ------------------------------------------------------------ infimum
  std::string inf_a, inf_b;
  CLI::App* infcmd =
      app.add_subcommand("infimum", "greatest lower bound of A and B, when it exists");
  infcmd->add_option("A", inf_a, "matrix file")->required();
  infcmd->add_option("B", inf_b, "matrix file")->required();

  // ------------------------------------------------------------ lattice
  std::string lat_op, lat_s, lat_t, lat_b;
  CLI::App* lattice =
      app.add_subcommand("lattice", "meet or join in the quasi-unit lattice of B");
  lattice->add_option("--op", lat_op, "meet|join")
      ->required()
      ->check(CLI::IsMember({"meet", "join"}));
  lattice->add_option("S", lat_s, "quasi-unit matrix file")->required();
  lattice->add_option("T", lat_t, "quasi-unit matrix file")->required();
  lattice->add_option("B", lat_b, "reference matrix file")->required();

  // ------------------------------------------------------------- galois
  std::string gal_ref, gal_check, gal_t, gal_u;
  CLI::App* galois = app.add_subcommand(
      "galois", "polarity checks for the connection induced by a reference form");
  galois->add_option("--ref", gal_ref, "reference form w")->required();
  galois->add_option("--check", gal_check, "adjunction|closure|closed")
      ->required()
      ->check(CLI::IsMember({"adjunction", "closure", "closed"}));
  galois->add_option("t", gal_t, "form file (u for --check adjunction)")->required();
  galois->add_option("u", gal_u, "second form file (v for --check adjunction)");

  // ---------------------------------------------------------------- phi
  std::string phi_t, phi_w;
  CLI::App* phicmd = app.add_subcommand(
      "phi", "operator on the quotient space of t representing w in [0, t]");
  phicmd->add_option("t", phi_t, "form file")->required();
  phicmd->add_option("w", phi_w, "form file")->required();

  // ------------------------------------------------------------ selftest
  RunConfig cfg;
  std::string dims_text = "2..6", suites_text;
  CLI::App* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_option("--seed", cfg.seed, "run seed (default 42)");
  selftest->add_option("--trials", cfg.trials, "trials per suite (default 100)");
  selftest->add_option("--dims", dims_text, "dimension range a..b (default 2..6)");
  selftest->add_option("--suites", suites_text, "comma-separated suite names");
  selftest->add_option("--replay-dir", cfg.replay_dir,
                       "directory for failure artifacts (default replay)");
  bool no_replay = false;
  selftest->add_flag("--no-replay", no_replay, "do not write failure artifacts");
  bool list_suites = false;
  selftest->add_flag("--list", list_suites, "list suite names and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    g.tol.validate();

    if (*parsum) {
      emit_matrix(g, parallel_sum(load_psd(in_a, g.tol), load_psd(in_b, g.tol), g.tol)
                         .matrix());
    } else if (*pardiff) {
      const ParallelDiffResult r =
          parallel_diff(load_psd(diff_s, g.tol), load_psd(diff_t, g.tol), g.tol);
      if (g.json) {
        nlohmann::json j;
        j["solvable"] = r.solvable();
        if (r.solvable()) {
          j["value"] = matrix_to_json(r.value->matrix());
        } else {
          j["obstruction"] =
              r.obstruction == ParallelDiffResult::Obstruction::not_dominated
                  ? "definiteness"
                  : "range";
          j["detail"] = r.detail;
          nlohmann::json dir = nlohmann::json::array();
          for (Eigen::Index i = 0; i < r.divergence_direction.size(); ++i)
            dir.push_back({r.divergence_direction(i).real(),
                           r.divergence_direction(i).imag()});
          j["divergence_direction"] = dir;
        }
        std::cout << j.dump(2) << "\n";
      } else if (r.solvable()) {
        emit_matrix(g, r.value->matrix());
      } else {
        std::cout << "not solvable: " << r.detail << "\n";
      }
    } else if (*shortcmd) {
      const PsdMatrix a = load_psd(short_a, g.tol);
      const PsdMatrix b = load_psd(short_b, g.tol);
      Matrix result;
      if (short_method == "aux")
        result = short_aux(a, b, g.tol).matrix();
      else if (short_method == "schur")
        result = short_schur(a, b, g.tol).matrix();
      else if (short_method == "iter")
        result = short_iterative(a, b, g.tol).matrix();
      else
        result = generalized_short(a, b, g.tol).matrix();
      emit_matrix(g, result);
    } else if (*lebesgue) {
      const LebesgueDecomposition ld =
          lebesgue_decompose(load_psd(leb_a, g.tol), load_psd(leb_b, g.tol), g.tol);
      if (g.json) {
        nlohmann::json j;
        j["regular"] = matrix_to_json(ld.regular.matrix());
        j["singular"] = matrix_to_json(ld.singular_part.matrix());
        j["unique"] = ld.unique;
        if (ld.alpha_min) j["alpha_min"] = *ld.alpha_min;
        std::cout << j.dump(2) << "\n";
      } else if (!g.out.empty()) {
        write_matrix_file(g.out + ".regular.mat", ld.regular.matrix());
        write_matrix_file(g.out + ".singular.mat", ld.singular_part.matrix());
        std::cout << "wrote " << g.out << ".regular.mat and " << g.out
                  << ".singular.mat\n";
        std::cout << "unique: " << (ld.unique ? "yes" : "no");
        if (ld.alpha_min) std::cout << ", alpha_min: " << *ld.alpha_min;
        std::cout << "\n";
      } else {
        std::cout << "# regular part (absolutely continuous)\n";
        write_matrix(std::cout, ld.regular.matrix());
        std::cout << "# singular part\n";
        write_matrix(std::cout, ld.singular_part.matrix());
        std::cout << "unique: " << (ld.unique ? "yes" : "no");
        if (ld.alpha_min) std::cout << ", alpha_min: " << *ld.alpha_min;
        std::cout << "\n";
      }
    } else if (*quasiunit) {
      const QuasiUnitCertificate cert =
          is_quasi_unit(load_psd(qu_a, g.tol), load_psd(qu_b, g.tol), g.tol);
      if (g.json)
        std::cout << certificate_to_json(cert).dump(2) << "\n";
      else
        std::cout << cert.report();
    } else if (*infcmd) {
      const InfimumResult r =
          infimum(load_psd(inf_a, g.tol), load_psd(inf_b, g.tol), g.tol);
      if (g.json) {
        nlohmann::json j;
        j["exists"] = r.exists;
        j["witness"] = witness_name(r.witness);
        if (r.value) j["value"] = matrix_to_json(r.value->matrix());
        std::cout << j.dump(2) << "\n";
      } else if (r.exists) {
        std::cout << "infimum exists, witness: " << witness_name(r.witness) << "\n";
        emit_matrix(g, r.value->matrix());
      } else {
        std::cout << "infimum does not exist: the generalized shorts are "
                     "incomparable\n";
      }
    } else if (*lattice) {
      const PsdMatrix s = load_psd(lat_s, g.tol);
      const PsdMatrix t = load_psd(lat_t, g.tol);
      const PsdMatrix b = load_psd(lat_b, g.tol);
      const PsdMatrix r = lat_op == "meet" ? quasi_meet(s, t, b, g.tol)
                                           : quasi_join(s, t, b, g.tol);
      emit_matrix(g, r.matrix());
    } else if (*galois) {
      const PolarityPair ctx{read_form_file(gal_ref, g.tol), g.tol};
      if (gal_check == "closure") {
        emit_matrix(g, closure(read_form_file(gal_t, g.tol), ctx).gram().matrix());
      } else if (gal_check == "closed") {
        const bool closed = is_closed_element(read_form_file(gal_t, g.tol), ctx);
        if (g.json)
          std::cout << nlohmann::json{{"closed", closed}}.dump(2) << "\n";
        else
          std::cout << "closed: " << (closed ? "yes" : "no") << "\n";
      } else {
        if (gal_u.empty())
          throw Error("galois --check adjunction needs two form files (u, v)");
        const AdjunctionCheck c = check_adjunction(read_form_file(gal_t, g.tol),
                                                   read_form_file(gal_u, g.tol), ctx);
        if (g.json) {
          nlohmann::json j;
          j["lhs_v_below_alpha_u"] = c.lhs;
          j["rhs_beta_v_below_u"] = c.rhs;
          j["holds"] = c.holds();
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "v <= alpha(u): " << (c.lhs ? "yes" : "no") << "\n"
                    << "beta(v) <= u:  " << (c.rhs ? "yes" : "no") << "\n"
                    << "biconditional: " << (c.holds() ? "holds" : "VIOLATED") << "\n";
        }
      }
    } else if (*phicmd) {
      const Form t = read_form_file(phi_t, g.tol);
      const Form w = read_form_file(phi_w, g.tol);
      emit_matrix(g, phi(t, w, g.tol).matrix());
    } else if (*selftest) {
      if (list_suites) {
        for (const std::string& name : suite_names()) std::cout << name << "\n";
        return 0;
      }
      if (!parse_dims(dims_text, cfg.dim_min, cfg.dim_max))
        throw Error("cannot parse --dims, expected a..b");
      if (!suites_text.empty()) {
        std::stringstream ss(suites_text);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) cfg.suites.push_back(item);
      }
      cfg.tol = g.tol;
      cfg.write_replay = !no_replay;
      const std::vector<SuiteReport> reports = run_suites(cfg);
      int failures = 0;
      if (g.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const SuiteReport& r : reports) {
          j.push_back(report_to_json(r));
          failures += r.failed;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        for (const SuiteReport& r : reports) {
          failures += r.failed;
          std::cout << (r.failed == 0 ? "pass  " : "FAIL  ") << r.suite << ": "
                    << r.passed << "/" << r.passed + r.failed << " trials, worst gap "
                    << std::scientific << r.worst_gap << std::defaultfloat << " ("
                    << r.wall_time << " s)";
          if (!r.failing_seeds.empty()) {
            std::cout << " failing seeds:";
            for (std::uint64_t s : r.failing_seeds) std::cout << " " << s;
          }
          std::cout << "\n";
        }
        std::cout << (failures == 0 ? "all suites passed" : "SUITE FAILURES") << "\n";
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
