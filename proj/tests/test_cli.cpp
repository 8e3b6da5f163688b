#include "support.hpp"

#include "cli.hpp"
#include "hwm/fieldio.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace hwm;
using namespace hwm::test;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "hwm");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json report_of(const std::string &text, const std::string &method) {
  const auto doc = nlohmann::json::parse(text);
  for (const auto &r : doc["reports"])
    if (r["method"] == method)
      return r;
  FAIL("no report for " << method);
  return {};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("Bessel pipeline recovers the charge") {
  const std::string field = scratch_path("bessel.hwmf").string();
  const std::string oam = scratch_path("bessel_oam.csv").string();
  REQUIRE(run({"gen", "--family", "bessel", "--n", "2", "--grid", "128,128", "--dx",
               std::to_string(2 * pi / 16), "--out", field})
              .code == 0);
  const Outcome s = run({"spectrum", "--in", field, "--window", "hann", "--ring-samples", "256",
                         "--n-range=-8,8", "--out-oam", oam});
  REQUIRE(s.code == 0);
  const auto js = nlohmann::json::parse(s.out);
  CHECK(js["mean_charge"].get<double>() == doctest::Approx(2.0).epsilon(5e-4));
  CHECK(js["coefficients"].size() == 17u);
  CHECK(read_text(oam).rfind("n,re,im,abs2\n", 0) == 0);

  const Outcome m = run({"momenta", "--in", field, "--window", "hann", "--ring-samples", "256"});
  REQUIRE(m.code == 0);
  CHECK(report_of(m.out, "spectral")["mean_lz"].get<double>() ==
        doctest::Approx(2.0).epsilon(5e-4));
  CHECK(report_of(m.out, "paper-formula")["mean_lz"].get<double>() == 2.0);
  CHECK(std::abs(report_of(m.out, "grid-oracle")["mean_lz"].get<double>() - 2.0) <= 1e-2);
}

TEST_CASE("plane-wave pipeline carries no OAM") {
  const std::string field = scratch_path("plane.hwmf").string();
  REQUIRE(run({"gen", "--family", "plane", "--theta", "1", "--phi", "0.3", "--grid", "128,128",
               "--out", field})
              .code == 0);
  const Outcome m = run({"momenta", "--in", field, "--methods", "spectral,grid"});
  REQUIRE(m.code == 0);
  CHECK(std::abs(report_of(m.out, "spectral")["mean_lz"].get<double>()) <= 1e-6);
  CHECK(std::abs(report_of(m.out, "grid-oracle")["mean_lz"].get<double>()) <= 1e-6);
  CHECK(nlohmann::json::parse(m.out)["reports"].size() == 2u);
}

TEST_CASE("Mathieu pipeline reports the elliptic invariant") {
  const std::string field = scratch_path("mathieu.hwmf").string();
  REQUIRE(run({"gen", "--family", "mathieu-even", "--n", "2", "--f", "2", "--out", field}).code ==
          0);
  const Outcome m = run({"momenta", "--in", field, "--methods", "grid,paper"});
  REQUIRE(m.code == 0);
  const double a = mathieu_eigen(Parity::even, 2, 1.0).char_value;
  CHECK(report_of(m.out, "grid-oracle")["elliptic_invariant"].get<double>() ==
        doctest::Approx(a + 2.0).epsilon(1e-3));
  CHECK(report_of(m.out, "paper-formula")["elliptic_invariant"].get<double>() ==
        doctest::Approx(a));
}

TEST_CASE("CSV input needs the cone") {
  const std::string field = scratch_path("csvsrc.hwmf").string();
  const std::string csv = scratch_path("field.csv").string();
  REQUIRE(run({"gen", "--family", "bessel", "--n", "1", "--grid", "96,96", "--dx",
               std::to_string(2 * pi / 16), "--out", field})
              .code == 0);
  write_field_csv(read_field(field), csv);
  CHECK(run({"spectrum", "--in", csv}).code == cli::exit_usage);
  const Outcome s = run({"spectrum", "--in", csv, "--k", "1", "--theta", "90", "--degrees",
                         "--window", "hann", "--ring-samples", "256", "--n-range=-4,4"});
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["mean_charge"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Mathieu table command") {
  const Outcome t = run({"mathieu-table", "--parity", "even", "--n", "0", "--q", "0"});
  REQUIRE(t.code == 0);
  CHECK(t.out == "class,n,q,char_value,j,coeff\nce_2r,0,0,0,0,0.70710678118654746\n");
  const Outcome sweep =
      run({"mathieu-table", "--parity", "odd", "--n", "2", "--q", "0", "--q-max", "2",
           "--q-steps", "4"});
  REQUIRE(sweep.code == 0);
  for (const char *q : {",0,", ",0.5,", ",1,", ",1.5,", ",2,"})
    CHECK(sweep.out.find(std::string("se_2r+2,2") + q) != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::exit_usage);
  CHECK(run({"frobnicate"}).code == cli::exit_usage);
  CHECK(run({"gen", "--family", "bessel"}).code == cli::exit_usage);
  CHECK(run({"gen", "--family", "vortex", "--out", scratch_path("x").string()}).code ==
        cli::exit_usage);
  CHECK(run({"mathieu-table", "--parity", "even", "--n", "x", "--q", "1"}).code ==
        cli::exit_usage);
  CHECK(run({"momenta", "--in", scratch_path("absent.hwmf").string()}).code == cli::exit_io);
  const std::string junk = scratch_path("junk.hwmf").string();
  write_text(junk, "not a field\n");
  const Outcome bad = run({"spectrum", "--in", junk});
  CHECK(bad.code == cli::exit_io);
  CHECK(bad.err.find("byte") != std::string::npos);
  CHECK(run({"mathieu-table", "--parity", "odd", "--n", "0", "--q", "1"}).code ==
        cli::exit_numeric);
  CHECK(run({"mathieu-table", "--parity", "even", "--n", "0", "--q", "-1"}).code ==
        cli::exit_numeric);
  // above the Nyquist limit of the lattice
  const std::string coarse = scratch_path("coarse.hwmf").string();
  REQUIRE(run({"gen", "--family", "plane", "--dx", "4", "--out", coarse}).code == 0);
  CHECK(run({"spectrum", "--in", coarse}).code == cli::exit_numeric);
  CHECK(run({"gen", "--family", "plane", "--out", "/nonexistent-dir/f.hwmf"}).code ==
        cli::exit_io);
}

TEST_CASE("help lists every option") {
  const Outcome h = run({"--help"});
  CHECK(h.code == 0);
  for (const char *flag :
       {"gen", "spectrum", "momenta", "mathieu-table", "--family", "--k", "--theta", "--phi",
        "--n", "--f", "--grid", "--dx", "--dy", "--origin", "--z", "--out", "--degrees", "--in",
        "--ring-samples", "--n-range", "--window", "--out-ring", "--out-oam", "--out-json",
        "--methods", "--stencil-order", "--parity", "--q", "--q-max", "--q-steps"})
    CHECK_MESSAGE(h.out.find(flag) != std::string::npos, flag);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::string a = scratch_path("a.hwmf").string();
  const std::string b = scratch_path("b.hwmf").string();
  const std::vector<std::string> gen = {"gen", "--family", "mathieu-odd", "--n", "3",
                                        "--theta", "1.1", "--grid", "48,40"};
  auto with_out = [&](const std::string &p) {
    auto v = gen;
    v.insert(v.end(), {"--out", p});
    return v;
  };
  REQUIRE(run(with_out(a)).code == 0);
  REQUIRE(run(with_out(b)).code == 0);
  CHECK(read_text(a) == read_text(b));
  const Outcome m1 = run({"momenta", "--in", a, "--methods", "spectral,paper"});
  const Outcome m2 = run({"momenta", "--in", b, "--methods", "spectral,paper"});
  CHECK(m1.code == 0);
  CHECK(m1.out == m2.out);
  const Outcome s1 = run({"spectrum", "--in", a, "--window", "hann"});
  const Outcome s2 = run({"spectrum", "--in", b, "--window", "hann"});
  CHECK(s1.out == s2.out);
}

} // TEST_SUITE
