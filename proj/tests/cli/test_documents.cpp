#include <gtest/gtest.h>

#include <cstring>
#include <limits>

#include "nctorus/cli/documents.hpp"
#include "nctorus/errors.hpp"
#include "support/generators.hpp"

using namespace nctorus;
using namespace nctorus::cli;
using namespace nctorus::testing;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bit_equal(const FourierElement& a, const FourierElement& b) {
  if (a.context() != b.context() || a.support_size() != b.support_size()) return false;
  auto it = b.coeffs().begin();
  for (const auto& [p, c] : a.coeffs()) {
    if (p != it->first || !bit_equal(c.real(), it->second.real()) || !bit_equal(c.imag(), it->second.imag())) {
      return false;
    }
    ++it;
  }
  return true;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Decimal, ShortestRoundTrip) {
  Rng rng(200);
  for (int i = 0; i < 2000; ++i) {
    const double x = uniform(rng, -1e6, 1e6) * std::pow(10.0, uniform_int(rng, -300, 300) / 10);
    EXPECT_TRUE(bit_equal(parse_double(format_double(x), "x"), x)) << format_double(x);
  }
  for (double x : {0.0, -0.0, 1e-320, std::numeric_limits<double>::max(), 0.1, 1.0 / 3.0}) {
    EXPECT_TRUE(bit_equal(parse_double(format_double(x), "x"), x));
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Decimal, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1.0x", "nan", "inf", "1e999", " 1"}) {
    EXPECT_THROW(parse_double(bad, "f"), ValidationError) << bad;
  }
  EXPECT_NE(error_of([] { parse_double("q", "a.coefficients[2].re"); }).find("a.coefficients[2].re"),
            std::string::npos);
}

TEST(ElementDocument, RoundTripOnRandomElements) {
  Rng rng(201);
  const std::vector<GroupContext> contexts = {GroupContext::lattice(1), GroupContext::lattice(2),
                                              GroupContext::lattice(3), GroupContext::finite({5}),
                                              GroupContext::finite({3, 4}), GroupContext::finite({7, 7})};
  for (const auto& ctx : contexts) {
    for (int i = 0; i < 500; ++i) {
      auto a = random_element(ctx, rng, 12, 20);
      a *= Complex(std::pow(10.0, uniform(rng, -8.0, 8.0)));
      const auto text = element_to_json(a).dump();
      const auto back = parse_element(Json::parse(text), "a");
      ASSERT_TRUE(bit_equal(a, back)) << text;
      EXPECT_EQ(element_to_json(back).dump(), text);
    }
  }
}

TEST(ElementDocument, DiagnosticsNameTheField) {
  const auto doc = Json::parse(R"({"context": {"rank": 2, "mode": "lattice"},
    "coefficients": [{"point": [0, 0], "re": "1", "im": "0"},
                     {"point": [1, 2, 3], "re": "1", "im": "0"}]})");
  EXPECT_NE(error_of([&] { parse_element(doc, "a"); }).find("a.coefficients[1].point"), std::string::npos);

  auto bad_re = doc;
  bad_re["coefficients"][1] = Json::parse(R"({"point": [1, 2], "re": "x", "im": "0"})");
  EXPECT_NE(error_of([&] { parse_element(bad_re, "b"); }).find("b.coefficients[1].re"), std::string::npos);

  auto missing = doc;
  missing["coefficients"][0].erase("im");
  EXPECT_NE(error_of([&] { parse_element(missing, "a"); }).find("a.coefficients[0].im: missing"), std::string::npos);

  auto dup = doc;
  dup["coefficients"][1]["point"] = Json::array({0, 0});
  EXPECT_NE(error_of([&] { parse_element(dup, "a"); }).find("duplicate"), std::string::npos);

  const auto finite = Json::parse(R"({"rank": 2, "mode": "finite", "moduli": [5]})");
  EXPECT_NE(error_of([&] { parse_context(finite, "a.context"); }).find("a.context.moduli"), std::string::npos);
  const auto mode = Json::parse(R"({"rank": 2, "mode": "torus"})");
  EXPECT_NE(error_of([&] { parse_context(mode, "a.context"); }).find("a.context.mode"), std::string::npos);
}

TEST(ElementDocument, FiniteCoordinatesReduce) {
  const auto doc = Json::parse(R"({"context": {"rank": 1, "mode": "finite", "moduli": [5]},
    "coefficients": [{"point": [7], "re": "0.25", "im": "-1"}]})");
  const auto a = parse_element(doc, "a");
  EXPECT_EQ(a.coefficient(GroupPoint{2}), Complex(0.25, -1.0));
}

TEST(CocycleDocument, LatticeAndFinite) {
  const auto z2 = GroupContext::lattice(2);
  const auto sigma = parse_cocycle(Json::parse(R"({"matrix": [[0, "0.5"], [-0.5, 0]], "hbar": 2})"), z2, "sigma");
  EXPECT_EQ(sigma.hbar(), 2.0);
  EXPECT_EQ(sigma.matrix()(0, 1), 0.5);
  EXPECT_NE(error_of([&] { parse_cocycle(Json::parse(R"({"matrix": [[0, 1]], "hbar": 1})"), z2, "sigma"); })
                .find("sigma.matrix"),
            std::string::npos);
  EXPECT_NE(error_of([&] { parse_cocycle(Json::parse(R"({"matrix": [[0, 1], [0, 0]]})"), z2, "sigma"); })
                .find("sigma.hbar: missing"),
            std::string::npos);
  const auto z5 = GroupContext::finite({5});
  EXPECT_EQ(parse_cocycle(Json::parse(R"({"matrix": [[3]]})"), z5, "sigma").int_matrix()(0, 0), 3);
  EXPECT_NE(error_of([&] { parse_cocycle(Json::parse(R"({"matrix": [[0.5]]})"), z5, "sigma"); }).find("sigma.matrix[0][0]"),
            std::string::npos);
}
