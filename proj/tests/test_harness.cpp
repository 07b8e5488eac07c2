#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccmm/harness/commands.hpp"
#include "ccmm/harness/io.hpp"

using namespace ccmm;
using namespace ccmm::harness;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig ex3_config(SchemeKind kind) {
  ExperimentConfig cfg;
  cfg.K = 4;
  cfg.N = 20;
  cfg.s = 12;
  cfg.r = 6;
  cfg.M = Rational(10);
  cfg.scheme = kind;
  return cfg;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ccmm_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Config, ParsesKeyValueWithComments) {
  const auto cfg = parse_config_text("# example\nK = 4\nN=20\ns=12 # rows\nr=6\nM=10\nscheme=col\nseed=7\n\n");
  EXPECT_EQ(cfg.K, 4);
  EXPECT_EQ(cfg.N, 20);
  EXPECT_EQ(cfg.s, 12u);
  EXPECT_EQ(cfg.M, Rational(10));
  EXPECT_EQ(cfg.scheme, SchemeKind::col);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_THROW(parse_config_text("K"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("bogus=1"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("scheme=fast"), std::invalid_argument);
}

TEST(Config, LaterSettingsOverrideFile) {
  const auto path = scratch("run.cfg");
  write_file_atomic(path.string(), "K=2\nN=4\nM=2\n");
  auto cfg = load_config_file(path.string());
  apply_setting(cfg, "M", "4");
  EXPECT_EQ(cfg.K, 2);
  EXPECT_EQ(cfg.M, Rational(4));
  EXPECT_THROW(load_config_file((path.string() + ".missing")), std::invalid_argument);
}

TEST(Config, CellKeyIgnoresOutputs) {
  auto a = ex3_config(SchemeKind::row);
  auto b = a;
  b.out = "x.csv";
  b.parallel = 8;
  EXPECT_EQ(cell_key(a), cell_key(b));
  b.seed = 2;
  EXPECT_NE(cell_key(a), cell_key(b));
}

TEST(Suggest, MinimalDimensions) {
  // Row with ell = 4 at M = 10 needs s divisible by 6; a = 1/2 needs s even.
  const auto dims = suggest_dimensions(4, 20, Rational(1, 2), 10, {SchemeKind::row, {}, 4});
  ASSERT_TRUE(dims);
  EXPECT_EQ(*dims, std::make_pair(std::size_t{6}, std::size_t{3}));
  EXPECT_FALSE(suggest_dimensions(2, 4, Rational(1), 2, {SchemeKind::agnostic, 1, {}}));
}

TEST(Resolve, FillsMemoryAndDimensions) {
  ExperimentConfig cfg;
  cfg.K = 4;
  cfg.N = 20;
  cfg.a = Rational(1, 2);
  cfg.t = 2;
  cfg.scheme = SchemeKind::col;
  const auto run = resolve(cfg);
  EXPECT_EQ(run.instance.M, Rational(10));
  EXPECT_EQ(run.instance.a(), Rational(1, 2));
  EXPECT_NO_THROW(ColumnScheme().validate(run.instance));
  ExperimentConfig none;
  EXPECT_THROW(resolve(none), std::invalid_argument);
}

TEST(Simulate, ReportsExactLoads) {
  std::ostringstream out, err;
  auto row = ex3_config(SchemeKind::row);
  row.ell = 2;
  EXPECT_EQ(cmd_simulate(row, out, err), kExitOk);
  EXPECT_NE(out.str().find("\"load\": \"2/1\""), std::string::npos);
  EXPECT_NE(out.str().find("\"verified\": true"), std::string::npos);

  std::ostringstream out2;
  EXPECT_EQ(cmd_simulate(ex3_config(SchemeKind::col), out2, err), kExitOk);
  EXPECT_NE(out2.str().find("\"load\": \"16/9\""), std::string::npos);
}

TEST(Simulate, NonCornerMemoryExitsWithSuggestion) {
  std::ostringstream out, err;
  auto cfg = ex3_config(SchemeKind::col);
  cfg.M = Rational(7);
  EXPECT_EQ(cmd_simulate(cfg, out, err), kExitInvalid);
  EXPECT_NE(err.str().find("suggestion: s="), std::string::npos);
  EXPECT_TRUE(out.str().empty());

  std::ostringstream err2;
  auto multi = ex3_config(SchemeKind::multireq);
  multi.M = Rational(7);
  EXPECT_EQ(cmd_simulate(multi, out, err2), kExitInvalid);
  EXPECT_NE(err2.str().find("corner memories"), std::string::npos);
}

TEST(Simulate, FaultInjectionFails) {
  std::ostringstream out, err;
  RunHooks hooks;
  hooks.corrupt_first_message = true;
  EXPECT_EQ(cmd_simulate(ex3_config(SchemeKind::col), out, err, hooks), kExitFailure);
  EXPECT_NE(out.str().find("\"verified\": false"), std::string::npos);
}

TEST(Simulate, TranscriptDumpIsDeterministic) {
  auto cfg = ex3_config(SchemeKind::col);
  cfg.dump_transcript = scratch("a.txt").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(cfg, out, err), kExitOk);
  cfg.dump_transcript = scratch("b.txt").string();
  ASSERT_EQ(cmd_simulate(cfg, out, err), kExitOk);
  const auto a = read_file(scratch("a.txt"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read_file(scratch("b.txt")));
}

TEST(Simulate, ExplicitAndRandomDemands) {
  auto cfg = ex3_config(SchemeKind::row);
  cfg.demands = "2,1;4,4;20,3;7,8";
  EXPECT_TRUE(simulate(cfg).verified);
  cfg.demands = "random";
  const auto o = simulate(cfg);
  EXPECT_TRUE(o.verified);
  EXPECT_FALSE(o.worst_case_certified);
}

TEST(Analyze, MatchesGoldenFiles) {
  for (const auto& [tag, a] : std::vector<std::pair<std::string, Rational>>{
           {"1_10", Rational(1, 10)}, {"1_2", Rational(1, 2)}, {"1", Rational(1)}, {"2", Rational(2)}, {"10", Rational(10)}}) {
    const std::string golden = read_file(std::filesystem::path(CCMM_GOLDEN_DIR) / ("analyze_K4_N20_a" + tag + ".csv"));
    ASSERT_FALSE(golden.empty()) << tag;
    std::ostringstream out;
    EXPECT_EQ(cmd_analyze(4, 20, a, 40, "", "", out), kExitOk);
    EXPECT_EQ(out.str(), golden) << tag;
  }
}

TEST(Analyze, FixturesAtMemoryTen) {
  const auto rows = analyze_curves(4, 20, Rational(1, 2), 40);
  ASSERT_EQ(rows.size(), 41u);
  const CurveRow& r = rows[20];
  EXPECT_EQ(r.M, Rational(10));
  EXPECT_EQ(r.R_sa, Rational(64, 21));
  EXPECT_EQ(r.R1, Rational(3));
  EXPECT_EQ(r.R2, Rational(8, 3));
  EXPECT_EQ(r.R_row, Rational(2));
  EXPECT_EQ(r.ell_row, 2);
  EXPECT_EQ(r.R_col, Rational(16, 9));
  EXPECT_FALSE(r.genie);
  EXPECT_TRUE(analyze_curves(4, 20, Rational(1), 40)[20].genie.has_value());
}

TEST(Analyze, CsvRoundTrips) {
  for (const Rational& a : {Rational(1, 10), Rational(1), Rational(10)}) {
    auto rows = analyze_curves(3, 8, a, 16);
    rows[3].simulated = Rational(5, 7);
    EXPECT_EQ(parse_curves_csv(curves_to_csv(rows)), rows);
  }
  EXPECT_THROW(parse_curves_csv("M,R\n1/1,2/1\n"), std::invalid_argument);
}

TEST(Analyze, SvgIsSelfContained) {
  const std::string svg = curves_to_svg(analyze_curves(4, 20, Rational(1), 8), "K=4");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(Sweep, DeterministicAndDeduplicated) {
  std::vector<ExperimentConfig> cells;
  for (int seed = 1; seed <= 6; ++seed) {
    for (SchemeKind kind : {SchemeKind::row, SchemeKind::col}) {
      auto cfg = ex3_config(kind);
      cfg.seed = static_cast<std::uint64_t>(seed);
      cells.push_back(cfg);
    }
  }
  auto invalid = ex3_config(SchemeKind::col);
  invalid.M = Rational(7);
  cells.push_back(invalid);
  auto reversed = cells;
  std::reverse(reversed.begin(), reversed.end());
  cells.push_back(cells.front());

  const std::string serial = sweep_csv(cells, 1);
  EXPECT_EQ(serial, sweep_csv(reversed, 8));
  EXPECT_EQ(std::count(serial.begin(), serial.end(), '\n'), 14);
  EXPECT_NE(serial.find(",invalid,"), std::string::npos);
  EXPECT_EQ(serial.find(",false,"), std::string::npos);
}

TEST(Sweep, WritesAtomically) {
  const auto path = scratch("sweep.csv");
  std::filesystem::remove(path);
  std::ostringstream out;
  EXPECT_EQ(cmd_sweep({ex3_config(SchemeKind::row)}, 2, path.string(), out), kExitOk);
  EXPECT_TRUE(out.str().empty());
  EXPECT_EQ(read_file(path).rfind("cell,scheme", 0), 0u);
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
  }
}

TEST(Io, CsvEscape) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(Io, PacketWireFormat) {
  const PacketHeader h{2, {0, 3}};
  const std::vector<Symbol> symbols{1, 0x0102030405060708ULL, 7};
  const auto bytes = encode_packet(h, symbols);
  ASSERT_EQ(bytes.size(), 4u + 8u + 24u);
  EXPECT_EQ(bytes[0], 2);
  EXPECT_EQ(bytes[8], 3);
  EXPECT_EQ(bytes[20], 0x08);  // little-endian low byte of the second symbol
  const auto [h2, s2] = decode_packet(bytes);
  EXPECT_EQ(h2, h);
  EXPECT_EQ(s2, symbols);
  auto truncated = bytes;
  truncated.resize(6);
  EXPECT_THROW(decode_packet(truncated), std::invalid_argument);
}

TEST(Io, MatrixSerialization) {
  const auto m = random_matrix(FieldSpec(), 3, 5, 11);
  EXPECT_EQ(matrix_from_text(matrix_to_text(m)), m);
  EXPECT_EQ(matrix_from_binary(matrix_to_binary(m)), m);
  EXPECT_EQ(matrix_to_text(FieldMatrix::from_rows(FieldSpec(7), {{1, 2}, {3, 4}})), "2 2 7\n1 2\n3 4\n");
  EXPECT_THROW(matrix_from_text("2 2 7\n1 2\n3\n"), std::invalid_argument);
  EXPECT_THROW(matrix_from_text("1 1 7\n9\n"), std::invalid_argument);
}
