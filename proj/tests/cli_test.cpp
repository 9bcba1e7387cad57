#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bargmann/cli.hpp"
#include "bargmann/invariants.hpp"
#include "bargmann/twoqubit.hpp"
#include "support.hpp"

namespace bargmann {
namespace {

namespace fs = std::filesystem;
using cli::Json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bargmann_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    ::unsetenv("BARGMANN_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    ::unsetenv("BARGMANN_SEED");
  }

  std::string write(const std::string& name, const Json& doc) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump();
    return p.string();
  }
  std::string write(const std::string& name, const StateTuple& t) { return write(name, cli::tuple_document(t)); }

  fs::path dir_;
};

Json pure_state(std::initializer_list<std::pair<double, double>> amps) {
  Json data = Json::array();
  for (auto [re, im] : amps) data.push_back({re, im});
  return {{"kind", "pure"}, {"data", data}};
}

Json mixed_state(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"kind", "mixed"}, {"data", data}};
}

StateTuple triple() {
  using testing::ket;
  return StateTuple::from_vectors({ket({1, 0}), ket({1, 1}), ket({1, Complex(0, 1)})});
}

TEST(Document, RoundTrip) {
  Rng rng(1);
  const auto pure = testing::random_pure_tuple(3, 3, rng);
  const auto mixed = testing::random_mixed_tuple(2, 3, rng);
  for (const StateTuple* t : {&pure, &mixed}) {
    const Json doc = Json::parse(cli::tuple_document(*t).dump());
    const StateTuple back = cli::validate_document(nlohmann::json::parse(doc.dump()));
    ASSERT_EQ(back.size(), t->size());
    for (std::size_t k = 0; k < t->size(); ++k) {
      EXPECT_EQ(back[k].is_pure(), (*t)[k].is_pure());
      EXPECT_LT(max_abs_diff(back[k].density(), (*t)[k].density()), 1e-15);
    }
  }
}

TEST(Document, ValidMixedPair) {
  const nlohmann::json doc = {{"dim", 2},
                              {"states", {mixed_state(Matrix::Identity(2, 2) / 2.0),
                                          mixed_state(testing::ket({1, 1}).projector())}}};
  EXPECT_EQ(cli::validate_document(doc).size(), 2u);
}

void expect_validation(const nlohmann::json& doc, const cli::RunConfig& config, const std::string& pointer,
                       const std::string& invariant) {
  try {
    cli::validate_document(doc, config);
    FAIL() << "accepted " << doc.dump();
  } catch (const cli::ValidationError& e) {
    EXPECT_EQ(e.pointer(), pointer);
    EXPECT_EQ(e.invariant(), invariant);
    EXPECT_EQ(e.code(), Errc::validation_error);
  }
}

TEST(Document, ValidationErrors) {
  cli::RunConfig strict;
  strict.norm_tol = 1e-12;
  const double s = std::sqrt(0.999999 / 2.0);
  expect_validation({{"dim", 2}, {"states", {pure_state({{1, 0}, {0, 0}}), pure_state({{s, 0}, {s, 0}})}}}, strict,
                    "/states/1", "normalization");
  Matrix heavy = Matrix::Identity(2, 2) * 0.505;
  expect_validation({{"dim", 2}, {"states", {mixed_state(heavy)}}}, {}, "/states/0", "trace");
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  expect_validation({{"dim", 2}, {"states", {mixed_state(negative)}}}, {}, "/states/0", "positivity");
  Matrix skew = Matrix::Identity(2, 2) / 2.0;
  skew(0, 1) = 0.1;
  expect_validation({{"dim", 2}, {"states", {mixed_state(skew)}}}, {}, "/states/0", "hermiticity");
  expect_validation({{"dim", 3}, {"states", {pure_state({{1, 0}, {0, 0}})}}}, {}, "/states/0/data", "dimension");
  expect_validation({{"dim", 2}, {"states", Json::array()}}, {}, "/states", "format");
}

TEST_F(Cli, InvariantJsonAndCsv) {
  const std::string in = write("t.json", triple());
  const Outcome r = run({"invariant", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  const Complex exact = bargmann(triple()).value;
  EXPECT_NEAR(j["re"].get<double>(), exact.real(), 1e-15);
  EXPECT_NEAR(j["im"].get<double>(), exact.imag(), 1e-15);
  EXPECT_NEAR(j["abs"].get<double>(), std::abs(exact), 1e-15);
  EXPECT_NEAR(j["arg"].get<double>(), std::arg(exact), 1e-15);
  const Outcome csv = run({"invariant", "--input", in, "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "re,im,abs,arg");
}

TEST_F(Cli, NProductIsOneBased) {
  const std::string in = write("t.json", triple());
  const Outcome r = run({"nproduct", "--input", in, "--indices", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["re"].get<double>(), 0.5, 1e-15);
  EXPECT_EQ(run({"nproduct", "--input", in, "--indices", "0,4"}).code, 2);
}

TEST_F(Cli, BoundaryCsv) {
  const Outcome r = run({"boundary", "--n", "3", "--points", "360", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "theta,r,x,y");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 360u);
  const std::string& half = rows[180];
  double theta = 0;
  double radius = 0;
  ASSERT_EQ(std::sscanf(half.c_str(), "%lf,%lf", &theta, &radius), 2);
  EXPECT_NEAR(theta, M_PI, 1e-15);
  EXPECT_NEAR(radius, 0.125, 1e-15);
  const std::string first_field = half.substr(0, half.find(','));
  EXPECT_EQ(first_field, "3.1415926535897931");
}

TEST_F(Cli, MembershipBoundsObgEnvelope) {
  Outcome r = run({"membership", "--n", "3", "--re", "-0.2", "--im", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.json()["inside"].get<bool>());
  r = run({"membership", "--n", "3", "--input", write("t.json", triple())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["inside"].get<bool>());
  r = run({"bounds", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["min_real"].get<double>(), -0.25, 1e-12);
  r = run({"obg", "--n", "3", "--t", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["invariant"][0].get<double>(), -0.125, 1e-12);
  EXPECT_NO_THROW(cli::validate_document(nlohmann::json::parse(r.json()["tuple"].dump())));
  r = run({"envelope", "--n", "4", "--points", "36"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.json()["points"].size(), 36u);
  for (const auto& p : r.json()["points"]) EXPECT_LE(std::abs(p["F"].get<double>()), 1e-8);
  EXPECT_EQ(run({"envelope", "--n", "5", "--theta", "1"}).code, 2);
}

TEST_F(Cli, CirculantizeAndChannel) {
  const std::string in = write("t.json", triple());
  Outcome r = run({"circulantize", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  const Complex before(j["invariant_before"][0].get<double>(), j["invariant_before"][1].get<double>());
  const Complex after(j["invariant_after"][0].get<double>(), j["invariant_after"][1].get<double>());
  EXPECT_NEAR(std::arg(after), std::arg(before), 1e-9);
  EXPECT_GE(std::abs(after), std::abs(before) - 1e-12);
  r = run({"channel", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["circulant_gram"].get<bool>());
  r = run({"channel", "--choi", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.json()["partial_transpose_min_eigenvalue"].get<double>(), -1e-12);
  const std::string orth =
      write("o.json", StateTuple::from_vectors({testing::ket({1, 0}), testing::ket({0, 1}), testing::ket({1, 1})}));
  r = run({"circulantize", "--input", orth});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("degenerate"), std::string::npos) << r.err;
}

TEST_F(Cli, EquivalenceModes) {
  Rng rng(2);
  const auto psi = triple();
  const std::string a = write("a.json", psi);
  const std::string b = write("b.json", testing::with_phases(testing::rotate(psi, haar_unitary(2, rng)), {1, 2, 3}));
  const std::string c = write("c.json", testing::rotate(psi, haar_unitary(2, rng)));
  EXPECT_TRUE(run({"equivalence", "--input", a, "--other", b, "--mode", "projective"}).json()["equivalent"]);
  EXPECT_FALSE(run({"equivalence", "--input", a, "--other", b, "--mode", "unitary"}).json()["equivalent"]);
  EXPECT_TRUE(run({"equivalence", "--input", a, "--other", c, "--mode", "unitary"}).json()["equivalent"]);
  EXPECT_TRUE(run({"equivalence", "--input", a, "--other", c, "--mode", "mixed"}).json()["equivalent"]);
}

TEST_F(Cli, Reconstruct) {
  Rng rng(3);
  const Outcome r = run({"reconstruct", "--input", write("t.json", testing::random_pure_tuple(5, 3, rng))});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["oracle_calls"].get<int>(), 16);
  EXPECT_EQ(j["call_bound"].get<int>(), 16);
  EXPECT_TRUE(j["projective_equivalent"].get<bool>());
  EXPECT_EQ(cli::validate_document(nlohmann::json::parse(j["tuple"].dump())).size(), 5u);
}

TEST_F(Cli, EstimatePrintsSeedAndIsDeterministic) {
  const std::string in = write("t.json", triple());
  const Outcome a = run({"estimate", "--input", in, "--seed", "42"});
  const Outcome b = run({"estimate", "--input", in, "--seed", "42"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(a.json()["shots_per_part"].get<int>(), 738);
  const Outcome c = run({"estimate", "--input", in, "--seed", "43"});
  EXPECT_NE(a.out, c.out);
  ::setenv("BARGMANN_SEED", "43", 1);
  const Outcome d = run({"estimate", "--input", in, "--seed", "42"});
  EXPECT_EQ(d.out, c.out);
  ::setenv("BARGMANN_SEED", "x", 1);
  EXPECT_EQ(run({"estimate", "--input", in}).code, 2);
}

TEST_F(Cli, PdfSampleThreadCountDoesNotChangeOutput) {
  const Outcome one = run({"pdf-sample", "--d", "2", "--pairs", "5000", "--seed", "7", "--threads", "1"});
  const Outcome four = run({"pdf-sample", "--d", "2", "--pairs", "5000", "--seed", "7", "--threads", "4"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, four.out);
  const Json j = one.json();
  EXPECT_EQ(j["seed"].get<int>(), 7);
  EXPECT_NEAR(j["mean_abs2"].get<double>(), 0.5, 0.02);
  EXPECT_LT(j["chi_square"].get<double>(), j["chi_square_q99"].get<double>());
}

TEST_F(Cli, TwoQubitCommands) {
  const nlohmann::json bell = {{"dim", 4}, {"states", {mixed_state(testing::bell_phi_plus())}}};
  const std::string in = write("bell.json", bell);
  Outcome r = run({"entanglement", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  EXPECT_NEAR(j["lhs"].get<double>(), -0.5, 1e-10);
  EXPECT_TRUE(j["entangled"].get<bool>());
  EXPECT_NEAR(j["det_gamma"].get<double>(), -0.0625, 1e-12);
  r = run({"lu", "--input", in, "--other", in});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["lu_similar"].get<bool>());
  r = run({"entanglement", "--input", write("t.json", triple())});
  EXPECT_EQ(r.code, 2);
  r = run({"imaginarity", "--input", write("t.json", triple())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(r.json()["residual"].get<double>(), 1e-9);
  EXPECT_TRUE(r.json().contains("closed_form"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  const Outcome bogus = run({"frobnicate"});
  EXPECT_EQ(bogus.code, 2);
  EXPECT_NE(bogus.err.find("Usage"), std::string::npos) << bogus.err;
  EXPECT_EQ(run({"invariant", "--input", (dir_ / "missing.json").string()}).code, 2);
  std::ofstream(dir_ / "broken.json") << "{\"dim\": 2, ";
  EXPECT_EQ(run({"invariant", "--input", (dir_ / "broken.json").string()}).code, 2);
  EXPECT_EQ(run({"boundary", "--n", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"reconstruct", "--input", write("t.json", triple()), "--format", "csv"}).code, 2);
  EXPECT_EQ(cli::exit_code(Errc::numerical_mismatch), 1);
  EXPECT_EQ(cli::exit_code(Errc::inconsistent_oracle), 1);
  EXPECT_EQ(cli::exit_code(Errc::not_realizable), 1);
  EXPECT_EQ(cli::exit_code(Errc::validation_error), 2);
  EXPECT_EQ(cli::exit_code(Errc::too_large), 2);
}

TEST_F(Cli, ValidationMessageNamesPointer) {
  const double s = std::sqrt(0.999999 / 2.0);
  const std::string in = write("bad.json", Json{{"dim", 2}, {"states", {pure_state({{s, 0}, {s, 0}})}}});
  const Outcome r = run({"invariant", "--input", in, "--norm-tol", "1e-12"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("validation error at /states/0: normalization"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace bargmann
