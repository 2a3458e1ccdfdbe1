#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wiretap/problem_io.hpp"

namespace {

using namespace wiretap;

std::string data_file(const std::string& name) { return std::string(WIRETAP_DATA_DIR) + "/" + name; }

void expect_same_problem(const WiretapProblem& a, const WiretapProblem& b) {
  ASSERT_EQ(a.antennas, b.antennas);
  EXPECT_EQ(a.noise_power, b.noise_power);
  EXPECT_EQ(a.epsilon, b.epsilon);
  EXPECT_EQ(a.power_budget, b.power_budget);
  ASSERT_EQ(a.users(), b.users());
  ASSERT_EQ(a.eavesdroppers(), b.eavesdroppers());
  for (std::size_t k = 0; k < a.users(); ++k) EXPECT_EQ(a.user_cov[k], b.user_cov[k]);
  for (std::size_t j = 0; j < a.eavesdroppers(); ++j) EXPECT_EQ(a.eve_cov[j], b.eve_cov[j]);
}

TEST(ShippedProblems, MatchTheReferenceInstances) {
  for (std::size_t j = 1; j <= 3; ++j) {
    expect_same_problem(load_problem(data_file("paper_j" + std::to_string(j) + ".json")).problem,
                        reference_problem(j));
    expect_same_problem(load_problem(data_file("paper_diag_j" + std::to_string(j) + ".json")).problem,
                        reference_problem(j, true));
  }
}

TEST(ParseProblem, DecibelBudgetIsConvertedAtTheBoundary) {
  const ProblemFile f = load_problem(data_file("paper_j1.json"));
  EXPECT_NEAR(f.problem.power_budget, std::pow(10.0, 1.2), 1e-12);
  EXPECT_TRUE(std::holds_alternative<StatisticalCsi>(f.csi_mode));
  EXPECT_FALSE(f.alphabet);
}

TEST(EmitProblem, RoundTripsExactly) {
  for (std::size_t j = 1; j <= 3; ++j) {
    for (bool diag : {false, true}) {
      const WiretapProblem p = reference_problem(j, diag);
      expect_same_problem(parse_problem(emit_problem(p)).problem, p);
    }
  }
}

TEST(EmitProblem, RoundTripsModeAndAlphabet) {
  ProblemFile f;
  f.problem = reference_problem(1);
  ComplexVector h(3);
  h << linalg::Complex(0.1, -0.2), 1.0 / 3.0, linalg::Complex(0.0, 2.5);
  f.csi_mode = PerfectUserCsi{{h, h * 0.5}};
  f.alphabet = Alphabet::qam16();
  const ProblemFile g = parse_problem(emit_problem(f));
  ASSERT_TRUE(std::holds_alternative<PerfectUserCsi>(g.csi_mode));
  EXPECT_EQ(std::get<PerfectUserCsi>(g.csi_mode).channels[0], h);
  ASSERT_TRUE(g.alphabet);
  EXPECT_EQ(g.alphabet->name(), "16qam");

  f.alphabet = Alphabet::normalized({{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}}, "tri");
  const ProblemFile k = parse_problem(emit_problem(f));
  ASSERT_TRUE(k.alphabet);
  EXPECT_EQ(k.alphabet->size(), 3u);
  EXPECT_TRUE(k.warnings.empty());
}

TEST(ParseProblem, BareNumberBudgetIsLinear) {
  std::string text = emit_problem(reference_problem(1));
  const auto pos = text.find("\"P_T\"");
  const auto end = text.find('}', pos);
  text.replace(pos, end - pos + 1, "\"P_T\": 7.5");
  EXPECT_DOUBLE_EQ(parse_problem(text).problem.power_budget, 7.5);
}

std::string problem_where(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ProblemFormatError& e) {
    return e.where();
  }
  return "";
}

TEST(ParseProblem, SyntaxErrorsReportLineAndColumn) {
  const std::string where = problem_where("{\n  \"N\": 3,\n  \"K\": ]\n}");
  EXPECT_EQ(where.rfind("line 3", 0), 0u) << where;
}

TEST(ParseProblem, FieldErrorsReportThePath) {
  EXPECT_EQ(problem_where(R"({"K": 1, "J": 0})"), "N");
  EXPECT_EQ(problem_where(R"({"N": 1, "K": 1, "J": 0, "N0": "one", "epsilon": 0.1, "P_T": 1, "H": [[[[1,0]]]], "Z": []})"),
            "N0");
  EXPECT_EQ(problem_where(R"({"N": 1, "K": 1, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": {"value": 1, "unit": "W"}, "H": [[[[1,0]]]], "Z": []})"),
            "P_T.unit");
  EXPECT_EQ(problem_where(R"({"N": 2, "K": 1, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": 1, "H": [[[[1,0],[0,0]],[[0,0]]]], "Z": []})"),
            "H[0][1]");
  EXPECT_EQ(problem_where(R"({"N": 1, "K": 1, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": 1, "H": [[[[1,0,3]]]], "Z": []})"),
            "H[0][0][0]");
  EXPECT_EQ(problem_where(R"({"N": 1, "K": 2, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": 1, "H": [[[[1,0]]]], "Z": []})"),
            "H");
  EXPECT_EQ(problem_where(R"({"N": 1, "K": 1, "J": 0, "N0": 1, "epsilon": 1.5, "P_T": 1, "H": [[[[1,0]]]], "Z": []})"),
            "problem");
}

TEST(ParseProblem, NearlyHermitianInputIsSymmetrized) {
  const std::string text =
      R"({"N": 2, "K": 1, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": 1,
          "H": [[[[1,0],[0.2,0.1]],[[0.2,-0.1000000001],[1,1e-12]]]], "Z": []})";
  const ProblemFile f = parse_problem(text);
  const ComplexMatrix& h = f.problem.user_cov[0];
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
  EXPECT_EQ(h(1, 1).imag(), 0.0);
  EXPECT_EQ(problem_where(R"({"N": 2, "K": 1, "J": 0, "N0": 1, "epsilon": 0.1, "P_T": 1,
          "H": [[[[1,0],[0.5,0]],[[0,0],[1,0]]]], "Z": []})"),
            "H[0]");
}

TEST(ParseAlphabet, NormalizesAndWarns) {
  std::vector<std::string> warnings;
  const Alphabet a = parse_alphabet("[[2, 0], [-2, 0]]", "scaled", &warnings);
  EXPECT_NEAR(a.symbols()[0].real(), 1.0, 1e-15);
  ASSERT_EQ(warnings.size(), 1u);

  warnings.clear();
  parse_alphabet("[[1, 0], [-1, 0]]", "clean", &warnings);
  EXPECT_TRUE(warnings.empty());

  EXPECT_THROW(parse_alphabet("[[1, 0]]", "one", nullptr), ProblemFormatError);
  EXPECT_THROW(parse_alphabet("[[1, 0], [1, 0]]", "dup", nullptr), ProblemFormatError);
}

TEST(LoadProblem, MissingFileIsAFormatError) {
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), ProblemFormatError);
}

}  // namespace
