#include "doctest.h"

#include <sstream>

#include "psdlat/matrix_io.hpp"
#include "psdlat/suites.hpp"

using namespace psdlat;

TEST_CASE("matrix documents round-trip through the text format") {
  Matrix m(2, 2);
  m << Complex(2, 0), Complex(1, -0.5), Complex(1, 0.5), Complex(1, 0);
  std::stringstream buf;
  write_matrix(buf, m);
  const Matrix back = read_matrix(buf);
  CHECK(detail::max_abs_entry(m - back) == 0.0); // exact: JSON keeps doubles

  Matrix real(2, 2);
  real << Complex(1, 0), Complex(2, 0), Complex(2, 0), Complex(5, 0);
  std::stringstream buf2;
  write_matrix(buf2, real);
  CHECK(buf2.str().find("\"complex\": false") != std::string::npos);
  CHECK(detail::max_abs_entry(real - read_matrix(buf2)) == 0.0);
}

TEST_CASE("the parser rejects malformed documents") {
  const auto parse = [](const std::string& text) {
    std::stringstream buf(text);
    return read_matrix(buf);
  };
  // non-square data
  CHECK_THROWS_AS(parse(R"({"dim": 2, "complex": false, "data": [1, 2, 3]})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 0, "complex": false, "data": []})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"complex": false, "data": [1]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 1, "complex": true, "data": [1]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dim": 1, "complex": false, "data": [[1, 0]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse("not json at all"), ParseError);
}

TEST_CASE("form documents carry space_dim and label") {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = 1.0;
  const Form f{PsdMatrix(g), "t"};
  const nlohmann::json doc = form_to_json(f);
  CHECK(doc["space_dim"] == 2);
  CHECK(doc["label"] == "t");
  const Form back = form_from_json(doc);
  CHECK(back.label() == "t");
  CHECK(detail::max_abs_entry(back.gram().matrix() - g) == 0.0);

  nlohmann::json broken = doc;
  broken["space_dim"] = 3;
  CHECK_THROWS_AS(form_from_json(broken), ParseError);
}

TEST_CASE("random generation is deterministic and honors rank") {
  const PsdMatrix a = gen_random_psd(1234, 5, 3);
  const PsdMatrix b = gen_random_psd(1234, 5, 3);
  CHECK(a.matrix() == b.matrix()); // bitwise identical
  CHECK(a.effective_rank() == 3);
  CHECK(gen_random_psd(9, 4, 0).norm() == 0.0);
  const PsdMatrix full = gen_random_psd(10, 4, 4);
  CHECK(full.eigenvalues()(0) > 0.0);
  CHECK_THROWS_AS(gen_random_psd(1, 3, 4), BadRank);
}

TEST_CASE("run_suites rejects unknown names and validates the config") {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.suites = {"no.such.suite"};
  cfg.write_replay = false;
  CHECK_THROWS_AS(run_suites(cfg), UnknownSuite);

  RunConfig bad;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  RunConfig bad_dims;
  bad_dims.dim_min = 0;
  CHECK_THROWS_AS(bad_dims.validate(), Error);
}

TEST_CASE("a smoke run on scalars passes every suite") {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.trials = 1;
  cfg.dim_min = 1;
  cfg.dim_max = 1;
  cfg.write_replay = false;
  const std::vector<SuiteReport> reports = run_suites(cfg);
  CHECK(reports.size() == suite_names().size());
  for (const SuiteReport& r : reports) {
    CAPTURE(r.suite);
    CHECK(r.failed == 0);
    CHECK(r.passed == 1);
  }
}

TEST_CASE("identical configs produce identical reports") {
  RunConfig cfg;
  cfg.seed = 42;
  cfg.trials = 3;
  cfg.dim_min = 2;
  cfg.dim_max = 4;
  cfg.write_replay = false;
  cfg.suites = {"parsum.commutativity", "quasiunit.equivalence", "galois.adjunction"};
  const std::string one = report_signature(run_suites(cfg));
  const std::string two = report_signature(run_suites(cfg));
  CHECK(one == two);
}

TEST_CASE("generated quasi-units of the identity cover every projection rank") {
  const PsdMatrix id2 = PsdMatrix::identity(2);
  bool saw_zero = false, saw_full = false, saw_line = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PsdMatrix u = gen_random_quasiunit(seed, id2);
    CHECK(is_quasi_unit(u, id2).verdict);
    if (u.effective_rank() == 0) saw_zero = true;
    if (u.effective_rank() == 2) {
      saw_full = true;
      CHECK(detail::spectral_norm_hermitian(u.matrix() - id2.matrix()) < 1e-12);
    }
    if (u.effective_rank() == 1) {
      saw_line = true;
      // a rank-one quasi-unit of the identity is a line projection
      CHECK(std::abs(u.norm() - 1.0) < 1e-10);
    }
  }
  CHECK(saw_zero);
  CHECK(saw_full);
  CHECK(saw_line);
}

TEST_CASE("failing trials record their seeds and dump replay artifacts") {
  namespace fs = std::filesystem;
  RunConfig cfg;
  cfg.seed = 11;
  cfg.trials = 5;
  cfg.dim_min = 4;
  cfg.dim_max = 5;
  cfg.suites = {"short.triple_agreement"};
  cfg.replay_dir = (fs::temp_directory_path() / "psdlat_replay_test").string();
  // a stop threshold below the floating-point noise floor: the doubling
  // schedule can never settle, so trials fail deterministically
  cfg.tol.conv = 1e-17;
  cfg.tol.rank = 1e-18;
  fs::remove_all(cfg.replay_dir);
  const std::vector<SuiteReport> reports = run_suites(cfg);
  const SuiteReport& rep = reports.front();
  REQUIRE(rep.failed > 0);
  CHECK(rep.failing_seeds.size() == static_cast<std::size_t>(rep.failed));
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(cfg.replay_dir)) {
    ++files;
    // every artifact must parse back through the shared format
    CHECK_NOTHROW(read_matrix_file(entry.path().string()));
  }
  CHECK(files >= 2); // at least the two operand matrices of one failing trial
  fs::remove_all(cfg.replay_dir);
}
