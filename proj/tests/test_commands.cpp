#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "rieszwalk/commands.hpp"

using namespace rieszwalk;
using namespace rieszwalk::cli;

namespace {

const std::string kData = RIESZWALK_TEST_DATA;

std::string text(const Cell& c) { return OutputTable::cell_text(c); }

double num(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* r = std::get_if<Rational>(&c)) return r->to_double();
  return static_cast<double>(std::get<std::int64_t>(c));
}

const std::vector<Cell>* find_row(const OutputTable& t, std::int64_t key) {
  for (const auto& row : t.rows())
    if (std::get<std::int64_t>(row[0]) == key) return &row;
  return nullptr;
}

}  // namespace

TEST(OutputTable, CsvAndJson) {
  OutputTable t({"j", "moment", "x", "tag"});
  t.add_row({std::int64_t{4}, Rational(1, 2), 0.1, std::string("true")});
  t.add_row({std::int64_t{0}, Rational(1), 2.0, std::string("false")});
  EXPECT_EQ(t.to_string(TableFormat::Csv), "j,moment,x,tag\n4,1/2,0.1,true\n0,1/1,2,false\n");
  const auto doc = nlohmann::json::parse(t.to_string(TableFormat::Json));
  EXPECT_EQ(doc["columns"][1], "moment");
  EXPECT_EQ(doc["rows"][0][1], "1/2");
  EXPECT_EQ(doc["rows"][0][0], 4);
  EXPECT_DOUBLE_EQ(doc["rows"][0][2].get<double>(), 0.1);
  EXPECT_THROW(t.add_row({std::int64_t{1}}), std::invalid_argument);

  t.convert_exact_to_float();
  EXPECT_EQ(text(t.rows()[0][1]), "0.5");
}

TEST(OutputTable, ShortestRoundTripFloats) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.4999999999999999})
    EXPECT_EQ(std::stod(format_double(x)), x);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(CmdMoments, Examples) {
  const auto r = cmd_moments(20, MeasureVariant::MU);
  EXPECT_EQ(r.table.columns(), (std::vector<std::string>{"j", "moment"}));
  EXPECT_EQ(text((*find_row(r.table, 4))[1]), "1/2");
  EXPECT_EQ(text((*find_row(r.table, 12))[1]), "1/4");
  EXPECT_EQ(text((*find_row(r.table, 20))[1]), "1/4");

  const auto zero = cmd_moments(0, MeasureVariant::MU);
  ASSERT_EQ(zero.table.rows().size(), 1u);
  EXPECT_EQ(zero.table.to_string(), "j,moment\n0,1/1\n");

  EXPECT_EQ(text((*find_row(cmd_moments(64, MeasureVariant::MU).table, 44))[1]), "1/8");
  EXPECT_THROW(cmd_moments(-1, MeasureVariant::MU), UsageError);
}

TEST(CmdVerblunsky, Examples) {
  const auto a = cmd_verblunsky(4, VerblunskyMethod::Ansatz, MeasureVariant::MU);
  std::vector<std::string> values;
  for (const auto& row : a.table.rows()) values.push_back(text(row[1]));
  EXPECT_EQ(values, (std::vector<std::string>{"1/2", "-1/3", "5/8", "-1/13"}));
  EXPECT_EQ(std::get<std::int64_t>(a.table.rows()[0][0]), 3);
  EXPECT_EQ(std::get<std::int64_t>(a.table.rows()[3][0]), 15);

  const auto s = cmd_verblunsky(1, VerblunskyMethod::Schur, MeasureVariant::NU);
  EXPECT_EQ(s.table.to_string(), "index,alpha\n0,1/2\n");

  const auto both = cmd_verblunsky(512, VerblunskyMethod::Both, MeasureVariant::MU);
  EXPECT_EQ(both.exit_code, kOk);
  EXPECT_TRUE(both.diagnostic.empty());
  for (const auto& row : both.table.rows()) ASSERT_EQ(text(row[3]), "true");
}

TEST(CmdBackboneAndLimits, Examples) {
  const auto b = cmd_backbone(17);
  EXPECT_EQ(text(b.table.rows().back()[1]), "141");
  EXPECT_EQ(cmd_backbone(1).table.to_string(), "i,A\n1,13\n");

  const auto l = cmd_limits(1);
  const auto csv = l.table.to_string();
  EXPECT_NE(csv.find(",2/3\n"), std::string::npos);
  EXPECT_NE(csv.find(",-2/9\n"), std::string::npos);
  EXPECT_EQ(l.table.rows().size(), 3u);
}

TEST(CmdWalk, HadamardOneStep) {
  const auto r = cmd_walk(parse_coin("hadamard"), 1, WalkEmit::Distribution);
  EXPECT_EQ(r.table.columns(),
            (std::vector<std::string>{"site", "x_over_n", "probability", "density"}));
  ASSERT_EQ(r.table.rows().size(), 2u);
  EXPECT_EQ(num(r.table.rows()[0][1]), 0.0);
  EXPECT_NEAR(num(r.table.rows()[0][2]), 0.5, 1e-15);
  EXPECT_EQ(num(r.table.rows()[1][1]), 1.0);
  EXPECT_NEAR(num(r.table.rows()[1][2]), 0.5, 1e-15);
}

TEST(CmdWalk, RieszEightHundredSteps) {
  const auto r = cmd_walk(parse_coin("riesz"), 800, WalkEmit::Distribution);
  ASSERT_EQ(r.table.rows().size(), 801u);
  double total = 0.0;
  for (const auto& row : r.table.rows()) total += num(row[2]);
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(CmdWalk, ZeroStepsAndOtherEmits) {
  const auto r = cmd_walk(parse_coin("riesz"), 0, WalkEmit::Distribution);
  ASSERT_EQ(r.table.rows().size(), 1u);
  EXPECT_EQ(num(r.table.rows()[0][2]), 1.0);

  const auto trace = cmd_walk(parse_coin("hadamard"), 50, WalkEmit::NormTrace);
  ASSERT_EQ(trace.table.rows().size(), 51u);
  for (const auto& row : trace.table.rows()) ASSERT_NEAR(num(row[1]), 1.0, 1e-12);

  const auto m = cmd_walk(parse_coin("hadamard"), 1, WalkEmit::Matrix);
  EXPECT_EQ(m.table.columns(), (std::vector<std::string>{"row", "col", "real", "imag"}));
  EXPECT_FALSE(m.table.rows().empty());
}

TEST(CmdFirstReturn, RieszExact) {
  const auto r = cmd_first_return(parse_coin("riesz"), 4, FirstReturnMethod::Exact);
  EXPECT_EQ(r.table.to_string(),
            "n,amplitude,cumulative_probability\n1,0/1,0/1\n2,0/1,0/1\n3,0/1,0/1\n4,1/2,1/4\n");
  const auto two = cmd_first_return(parse_coin("riesz"), 2, FirstReturnMethod::Exact);
  for (const auto& row : two.table.rows()) EXPECT_EQ(text(row[1]), "0/1");
}

TEST(CmdFirstReturn, BothMethodsAgree) {
  const auto r = cmd_first_return(parse_coin("riesz"), 200, FirstReturnMethod::Both);
  EXPECT_EQ(r.exit_code, kOk);
  for (const auto& row : r.table.rows()) ASSERT_LE(num(row[4]), 1e-8);

  const auto h = cmd_first_return(parse_coin("hadamard"), 70, FirstReturnMethod::Both);
  EXPECT_EQ(h.exit_code, kOk) << h.diagnostic;
}

TEST(CmdFirstReturn, HadamardNumeric) {
  const auto h = cmd_first_return(parse_coin("hadamard"), 70, FirstReturnMethod::Numeric);
  ASSERT_EQ(h.table.rows().size(), 70u);
  EXPECT_NEAR(num(h.table.rows()[0][1]), 1.0 / std::sqrt(2.0), 1e-15);
  const double final_cumulative = num(h.table.rows().back()[3]);
  EXPECT_GT(final_cumulative, 0.5);
  EXPECT_LE(final_cumulative, 1.0 + 1e-12);
  EXPECT_THROW(cmd_first_return(parse_coin("hadamard"), 5, FirstReturnMethod::Exact), UsageError);
}

TEST(CmdCmv, Entries) {
  const auto r = cmd_cmv(parse_coin("riesz"), 8);
  bool found = false;
  for (const auto& row : r.table.rows())
    if (std::get<std::int64_t>(row[0]) == 2 && std::get<std::int64_t>(row[1]) == 4) {
      found = true;
      EXPECT_NEAR(num(row[2]), std::sqrt(3.0) / 2, 1e-15);
    }
  EXPECT_TRUE(found);
  EXPECT_THROW(cmd_cmv(parse_coin("riesz"), 1), UsageError);
  EXPECT_THROW(cmd_cmv(parse_coin("file:" + kData + "/hadamard_coin.txt"), 8), UsageError);
}

TEST(CoinFile, ParsesAndMatchesBuiltIn) {
  const auto spec = parse_coin("file:" + kData + "/hadamard_coin.txt");
  ASSERT_EQ(spec.kind, CoinKind::File);
  ASSERT_EQ(spec.coins.size(), 1u);
  // the file's decimal 1/sqrt 2 is one ulp away from the built-in coin
  const auto from_file = cmd_walk(spec, 30, WalkEmit::Distribution).table;
  const auto built_in = cmd_walk(parse_coin("hadamard"), 30, WalkEmit::Distribution).table;
  ASSERT_EQ(from_file.rows().size(), built_in.rows().size());
  for (std::size_t i = 0; i < from_file.rows().size(); ++i)
    EXPECT_NEAR(num(from_file.rows()[i][2]), num(built_in.rows()[i][2]), 1e-14) << i;
  EXPECT_NO_THROW(cmd_first_return(spec, 10, FirstReturnMethod::Numeric));
  EXPECT_THROW(cmd_first_return(spec, 10, FirstReturnMethod::Both), UsageError);
}

TEST(CoinFile, Errors) {
  EXPECT_THROW(parse_coin("file:" + kData + "/bad_coin.txt"), UsageError);
  EXPECT_THROW(parse_coin("file:" + kData + "/nonunitary_coin.txt"), UsageError);
  EXPECT_THROW(parse_coin("file:" + kData + "/missing.txt"), UsageError);
  EXPECT_THROW(parse_coin("grover"), UsageError);
  for (const char* bad : {"", "# only a comment\n", "1,0 0,0 0,0 x,0\n", "1;0 0,0 0,0 1,0\n",
                          "1,0 0,0 0,0 1,0 1,0\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_coin_file(in), UsageError) << bad;
  }
}

TEST(CoinFile, ShortFileRepeatsLastCoin) {
  std::istringstream in("1,0 0,0 0,0 1,0\n\n0.6,0 0.8,0 0.8,0 -0.6,0\r\n");
  const CoinSpec spec{CoinKind::File, parse_coin_file(in), "inline"};
  const auto coins = coins_for_sites(spec, 5);
  ASSERT_EQ(coins.size(), 5u);
  EXPECT_EQ(coins[0].c11, Complex(1.0));
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(coins[i].c11, Complex(0.6));
}

TEST(Determinism, RepeatedRunsAreIdentical) {
  for (auto format : {TableFormat::Csv, TableFormat::Json}) {
    EXPECT_EQ(cmd_walk(parse_coin("riesz"), 100, WalkEmit::Distribution).table.to_string(format),
              cmd_walk(parse_coin("riesz"), 100, WalkEmit::Distribution).table.to_string(format));
    EXPECT_EQ(cmd_verblunsky(64, VerblunskyMethod::Both, MeasureVariant::NU).table.to_string(format),
              cmd_verblunsky(64, VerblunskyMethod::Both, MeasureVariant::NU).table.to_string(format));
  }
}

TEST(Exactness, RationalCellsRoundTrip) {
  const auto r = cmd_verblunsky(200, VerblunskyMethod::Both, MeasureVariant::MU);
  const auto doc = nlohmann::json::parse(r.table.to_string(TableFormat::Json));
  std::size_t k = 0;
  for (const auto& row : r.table.rows()) {
    for (std::size_t c : {1u, 2u}) {
      const auto& exact = std::get<Rational>(row[c]);
      ASSERT_EQ(Rational::parse(text(row[c])), exact);
      ASSERT_EQ(Rational::parse(doc["rows"][k][c].get<std::string>()), exact);
    }
    ++k;
  }
}
