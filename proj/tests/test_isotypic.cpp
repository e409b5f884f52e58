#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ceresa/isotypic.hpp"

using namespace ceresa;

namespace {
const std::string kFixture = CERESA_DATA_DIR "/x0_67.json";

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}
}  // namespace

TEST(QField, Arithmetic) {
  QFieldElement phi(Rational(1, 2), Rational(1, 2), 5);  // golden ratio
  EXPECT_EQ(phi * phi, phi + QFieldElement::from_int(1));
  EXPECT_EQ(phi * phi.conjugate(), QFieldElement(Rational(-1)));
  EXPECT_EQ(phi / phi, QFieldElement::from_int(1));
  EXPECT_EQ(phi.to_string(), "1/2+1/2*sqrt(5)");
  EXPECT_THROW(QFieldElement(0, 1, 5) * QFieldElement(0, 1, 2), Error);
}

TEST(Ingest, MinimalRationalForm) {
  auto path = write_temp("ceresa_min.json",
                         R"({"level": 11, "forms": [{"label": "f", "al_sign": -1, "eigenvalues": {"2": [-2, 1]}}]})");
  EigenData d = ingest_eigendata(path);
  EXPECT_EQ(d.level, 11);
  ASSERT_EQ(d.forms.size(), 1u);
  EXPECT_EQ(d.forms[0].eigenvalues.at(2), QFieldElement::from_int(-2));
}

TEST(Ingest, LevelSixtySevenFixture) {
  EigenData d = ingest_eigendata(kFixture);
  EXPECT_EQ(d.level, 67);
  ASSERT_EQ(d.forms.size(), 5u);
  std::vector<int> signs;
  for (const auto& f : d.forms) signs.push_back(f.al_sign);
  EXPECT_EQ(signs, (std::vector<int>{1, 1, -1, -1, -1}));
  EXPECT_EQ(d.form("g1").eigenvalues.at(5), QFieldElement(2, -1, 5));
}

TEST(Ingest, ConjugacyViolations) {
  auto mismatched = write_temp("ceresa_conj.json", R"({"level": 67, "forms": [
    {"label": "a", "al_sign": 1, "field_radicand": 5, "eigenvalues": {"2": [1, 2, 1, 2]}},
    {"label": "b", "al_sign": 1, "field_radicand": 5, "eigenvalues": {"2": [1, 2, 1, 2]}}]})");
  try {
    ingest_eigendata(mismatched);
    FAIL() << "expected ConjugacyError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConjugacyError);
  }
  auto signs = write_temp("ceresa_sign.json", R"({"level": 67, "forms": [
    {"label": "a", "al_sign": 1, "field_radicand": 5, "eigenvalues": {"2": [1, 2, 1, 2]}},
    {"label": "b", "al_sign": -1, "field_radicand": 5, "eigenvalues": {"2": [1, 2, -1, 2]}}]})");
  EXPECT_THROW(ingest_eigendata(signs), Error);
}

TEST(Ingest, SchemaErrorsNameTheField) {
  auto bad = write_temp("ceresa_bad.json", R"({"level": 11, "forms": [{"label": "f", "eigenvalues": {}}]})");
  try {
    ingest_eigendata(bad);
    FAIL() << "expected SchemaError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("forms[0].al_sign"), std::string::npos);
  }
  EXPECT_THROW(ingest_eigendata(write_temp("ceresa_trunc.json", R"({"level": 11, "forms": [)")), Error);
  EXPECT_THROW(ingest_eigendata("/nonexistent/eigen.json"), Error);
}

TEST(AlDecompose, Examples) {
  auto zero = al_decompose({0, 0}, {0, 0});
  for (const auto& v : {zero.ppp, zero.pmm, zero.mpm, zero.mmp})
    for (const auto& x : v) EXPECT_EQ(x, 0);
  auto s = al_decompose({48, -48}, {0, 0});
  EXPECT_EQ(s.ppp, (std::vector<Rational>{24, -24}));
  EXPECT_EQ(s.mmp, (std::vector<Rational>{-24, 24}));
  auto s2 = al_decompose({96, -96}, {0, 0});
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(s2.ppp[k], 2 * s.ppp[k]);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(s.ppp[k] + s.pmm[k] + s.mpm[k] + s.mmp[k], 0);
  try {
    al_decompose({1, 1}, {0, 1});
    FAIL() << "expected NonzeroDelta";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonzeroDelta);
  }
}

TEST(IsotypicSolve, SixtySevenComponents) {
  EigenData d = ingest_eigendata(kFixture);
  IsotypicSolution sol = isotypic_solve(d, d.shadows, {2});
  for (const auto& s : sol.sources)
    for (const auto& t : sol.targets) {
      bool diagonal_h = (s == "h1" && t == "h1") || (s == "h2" && t == "h2");
      EXPECT_EQ(sol.is_zero(s, t), diagonal_h) << s << "," << t;
    }
  // Frozen values, checked against an independent exact solve.
  EXPECT_EQ(sol.value.at({"h1", "h2"})[0], QFieldElement(12, Rational(-12, 5), 5));
  EXPECT_EQ(sol.value.at({"f", "h1"})[1], QFieldElement(Rational(48, 5), Rational(-168, 25), 5));
}

TEST(IsotypicSolve, ForwardMapReproducesInputs) {
  EigenData d = ingest_eigendata(kFixture);
  IsotypicSolution sol = isotypic_solve(d, d.shadows, {2});
  for (const auto& [name, pt] : d.shadows) {
    auto fwd = isotypic_forward(d, sol, name);
    auto img = isotypic_forward(d, sol, name, 2);
    auto want = hecke_image(d, 2, pt);
    for (std::size_t k = 0; k < pt.size(); ++k) {
      EXPECT_EQ(fwd[k], QFieldElement(Rational(pt[k])));
      EXPECT_EQ(img[k], QFieldElement(want[k]));
    }
  }
}

TEST(IsotypicSolve, GaloisEquivariance) {
  EigenData d = ingest_eigendata(kFixture);
  IsotypicSolution sol = isotypic_solve(d, d.shadows, {2});
  // The inputs are rational, so conjugating the solution swaps the conjugate labels.
  auto swap = [](const std::string& s) {
    if (s == "g1") return std::string("g2");
    if (s == "g2") return std::string("g1");
    if (s == "h1") return std::string("h2");
    if (s == "h2") return std::string("h1");
    return s;
  };
  for (const auto& [key, v] : sol.value) {
    const auto& other = sol.value.at({swap(key.first), swap(key.second)});
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_EQ(other[k], v[k].conjugate());
  }
}

TEST(IsotypicSolve, OneByOne) {
  EigenData d;
  d.level = 11;
  d.forms.push_back({"f", 1, 1, 1, {{2, QFieldElement::from_int(-2)}}});
  auto sol = isotypic_solve(d, {{"T2", {6}}});
  EXPECT_EQ(sol.value.at({"f", "f"})[0], QFieldElement::from_int(-3));
}

TEST(IsotypicSolve, SingularSystemNamesTheCollision) {
  EigenData d;
  d.level = 1;
  d.forms.push_back({"a", 1, 1, 1, {{2, QFieldElement::from_int(1)}}});
  d.forms.push_back({"b", -1, 1, 1, {{2, QFieldElement::from_int(1)}}});
  try {
    isotypic_solve(d, {{"T2", {1}}, {"Delta", {0}}});
    FAIL() << "expected SingularSystem";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
    EXPECT_NE(std::string(e.what()).find("a and b"), std::string::npos) << e.what();
  }
}
