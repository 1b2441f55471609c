#include "bps/cache.hpp"
#include "bps/compute.hpp"
#include "bps/serialize.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace bps;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bps_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

int run(const std::string& args, const std::string& out_file = "/dev/null") {
  std::string cmd = std::string(BPS_CLI) + " " + args + " > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Serialize, RoundTrip) {
  QSeries s = p2_genfun(2, 0, 3).series;
  EXPECT_TRUE(qseries_from_json(Json::parse(to_json(s).dump())) == s);
  WRat c = WRat(VPoly::w_power(3) + VPoly(make_rational(-2, 7)), VPoly(1) - VPoly::w_power(4));
  EXPECT_EQ(wrat_from_json(to_json(c)), c);
  EXPECT_EQ(to_json(QSeries::monomial(WRat(1), make_rational(-3, 8), 1))["terms"][0]["exponent"], "-3/8");
}

TEST(Serialize, RankOneLeadingCoefficient) {
  Json j = to_json(rank1_genfun(SurfaceId::hirzebruch(1), 1));
  const Json& c = j["series"]["terms"][0]["coefficient"];
  // w / (w^2 - 1) = 1 / (w - 1/w)
  WRat expect = WRat(1) / WRat(VPoly::w_power(1) - VPoly::w_power(-1));
  EXPECT_EQ(wrat_from_json(c), expect);
  EXPECT_EQ(j["series"]["terms"][0]["exponent"], "-1/6");
}

TEST(Cache, WarmEqualsColdAndIsVersioned) {
  fs::path dir = scratch("cache");
  SeriesStore store(dir);
  JobSpec spec{SurfaceId::p2(), 2, Cls{Rational(0)}, Polarization::hyperplane(), 3};
  JobResult cold = run_job(spec, store);
  std::size_t files = 0;
  for (auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    ++files;
    EXPECT_EQ(e.path().extension(), ".json");
  }
  EXPECT_GE(files, 1u);
  JobResult warm = run_job(spec, store);
  EXPECT_EQ(to_json(cold.rational).dump(), to_json(warm.rational).dump());
  EXPECT_EQ(to_json(*cold.table).dump(), to_json(*warm.table).dump());

  const std::string key = SeriesStore::key_of("m", "op", "p", 2);
  EXPECT_EQ(key.size(), 64u);
  store.store(key, QSeries::one(2));
  ASSERT_TRUE(store.load(key).has_value());
  Json j = Json::parse(slurp(store.path_of(key)));
  j["version"] = format_version + 1;
  std::ofstream(store.path_of(key)) << j.dump();
  EXPECT_FALSE(store.load(key).has_value());
  fs::remove_all(dir);
}

TEST(Cache, FlagOverridesEnvironment) {
  ::setenv("BPS_CACHE_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(SeriesStore::open("")->root(), "/tmp/from_env");
  EXPECT_EQ(SeriesStore::open("/tmp/from_flag")->root(), "/tmp/from_flag");
  ::unsetenv("BPS_CACHE_DIR");
  EXPECT_FALSE(SeriesStore::open("").has_value());
}

TEST(Job, Validation) {
  JobSpec bad{SurfaceId::p2(), 4, Cls{Rational(0)}, Polarization::hyperplane(), 3};
  EXPECT_THROW(validate(bad), std::invalid_argument);
  JobSpec dims{SurfaceId::hirzebruch(1), 2, Cls{Rational(0)}, Polarization::suitable(), 3};
  EXPECT_THROW(validate(dims), std::invalid_argument);
  JobSpec r4{SurfaceId::hirzebruch(1), 4, Cls{Rational(0), Rational(0)}, Polarization::jmn(1, 2), 3};
  EXPECT_THROW(validate(r4), std::invalid_argument);
}

TEST(Job, ProjectivePlaneRankThree) {
  JobResult res = run_job(JobSpec{SurfaceId::p2(), 3, Cls{Rational(0)}, Polarization::hyperplane(), 4});
  ASSERT_FALSE(res.table->rows.empty());
  const TableRow& row = res.table->rows.front();
  EXPECT_EQ(row.c2, 3);
  EXPECT_EQ(row.dim, 10);
  EXPECT_EQ(row.euler, 18);
}

TEST(Job, HirzebruchChamberMatchesWallCrossing) {
  JobSpec spec{SurfaceId::hirzebruch(0), 2, Cls{Rational(0), Rational(1)}, Polarization::jmn(1, 1), 3};
  JobResult res = run_job(spec);
  WallCrossingEngine E(0);
  EXPECT_TRUE(res.rational.series == E.genfun(2, spec.c1, spec.J, res.rational.series.cutoff()).series);
}

TEST(Cli, ExitCodesAndCacheFiles) {
  fs::path dir = scratch("cli");
  fs::path a = dir.string() + ".a.json", b = dir.string() + ".b.json";
  EXPECT_EQ(run("compute --surface p2 --rank 2 --qorders 3 --format json --cache-dir " + dir.string(), a.string()), 0);
  EXPECT_EQ(run("compute --surface p2 --rank 2 --qorders 3 --format json --cache-dir " + dir.string(), b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_TRUE(fs::exists(dir));
  EXPECT_EQ(run("compute --surface p2 --rank 9"), 2);
  EXPECT_EQ(run("compute --surface torus --rank 1"), 2);
  EXPECT_EQ(run("compute --surface hirzebruch:1 --rank 2 --c1 0,0 --polarization 1,1"), 2);
  EXPECT_EQ(run("compute --surface hirzebruch:1 --rank 2 --c1 0,0 --polarization 1,1+"), 0);
  EXPECT_EQ(run("compute --rank"), 2);
  EXPECT_EQ(run("check core"), 0);
  Json err;
  run("compute --surface p2 --rank 9 --format json", a.string());
  err = Json::parse(slurp(a));
  EXPECT_EQ(err["error"]["kind"], "invalid_input");
  fs::remove_all(dir);
  fs::remove(a);
  fs::remove(b);
}
