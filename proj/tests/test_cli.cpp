#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "orlicz/io.hpp"

using orlicz::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const std::filesystem::path& work() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path d(ORLICZ_CLI_WORK);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string in_work(const std::string& name, const std::string& content) {
  const auto path = work() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the CLI with stderr discarded; stdout captured.
Run cli(std::initializer_list<std::string> args) {
  std::string cmd = quote(ORLICZ_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json ok(std::initializer_list<std::string> args) {
  const auto r = cli(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("catalog lists the entries with closed forms") {
  const auto r = cli({"catalog"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("e^{u-1} - 1/2") != std::string::npos);
  const Json j = Json::parse(r.out);
  REQUIRE(j.is_array());
  std::set<std::string> names;
  for (const auto& e : j) names.insert(e.at("name").get<std::string>());
  for (const char* n : {"power", "example55", "phi_r", "phi_a", "phi_b"}) CHECK(names.count(n));
  CHECK(cli({"catalog"}).out == r.out);
}

TEST_CASE("indices") {
  const Json p3 = ok({"indices", "--function", "power:p=3"});
  for (const char* k : {"a_inf", "alpha_inf", "beta_inf", "b_inf"}) {
    CHECK(p3["indices"][k]["estimate"].get<double>() == doctest::Approx(3).epsilon(1e-6));
  }
  const Json e55 = ok({"indices", "--function", "example55"});
  CHECK(e55["indices"]["alpha_inf"]["estimate"].get<double>() == doctest::Approx(1).epsilon(1e-2));
  CHECK(e55["indices"]["beta_inf"]["estimate"].get<double>() == doctest::Approx(1).epsilon(1e-2));
  const Json star = ok({"indices", "--function", "conjugate:example55"});
  CHECK(star["indices"]["alpha_inf"]["infinite"].get<bool>());
  CHECK(star["indices"]["beta_inf"]["infinite"].get<bool>());
  CHECK(cli({"indices", "--function", "nope"}).code == 2);
  CHECK(cli({"indices", "--function", "power:p=0.5"}).code == 2);
}

TEST_CASE("norm") {
  const auto quarter = in_work("chi_quarter.json", "[[1, 0.25]]");
  const auto unit = in_work("chi_unit.csv", "value,weight\n1,1\n");
  const auto zero = in_work("zero.json", "[[0, 1], [0, 2]]");
  CHECK(ok({"norm", "--function", quarter, "--spec", "Orlicz:power:p=2"})["value"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ok({"norm", "--function", unit, "--spec", "LorentzP1:2"})["value"].get<double>() ==
        doctest::Approx(1).epsilon(1e-12));
  CHECK(ok({"norm", "--function", zero, "--spec", "L1"})["value"].get<double>() == 0);

  const auto spec = in_work("spec.json", R"({"tag": "Intersection", "first": {"tag": "LorentzP1", "p": 2}, "second": "L1"})");
  const auto four = in_work("chi_four.json", "[[1, 4]]");
  CHECK(ok({"norm", "--function", four, "--spec", spec})["value"].get<double>() ==
        doctest::Approx(4));

  const auto out = (work() / "norm_out.json").string();
  CHECK(cli({"norm", "--function", quarter, "--spec", "Orlicz:power:p=2", "--out", out}).code == 0);
  CHECK(Json::parse(std::ifstream(out))["value"].get<double>() == doctest::Approx(0.5));

  CHECK(cli({"norm", "--function", quarter, "--spec", "Bogus:2"}).code == 2);
  CHECK(cli({"norm", "--function", (work() / "missing.json").string(), "--spec", "L1"}).code == 2);
  CHECK(cli({"norm", "--function", in_work("bad.json", "{not json"), "--spec", "L1"}).code == 2);
  CHECK(cli({"norm", "--function", quarter, "--spec", "L1", "--format", "xml"}).code == 2);
  CHECK(cli({"norm", "--function", quarter}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("compactness modes") {
  const auto train = in_work("train5.json", R"({"generator": "indicator_train", "n": 5})");
  const Json r33 = ok({"compactness", "--family", train, "--spec", "L1", "--mode", "remark33"});
  CHECK(r33["report"]["vp_bound"].get<double>() == 1);
  const auto sup = r33["report"]["equi_profile"]["suprema"];
  CHECK(sup.size() == 5);
  for (const auto& s : sup) CHECK(s.get<double>() == 1);

  const Json l1 = ok({"compactness", "--family", train, "--spec", "L1", "--mode", "l1const",
                      "--trials", "50"});
  CHECK(l1["report"]["lower_constant"].get<double>() == doctest::Approx(1).epsilon(1e-12));
  const Json split = ok({"compactness", "--family", train, "--spec", "L1", "--mode", "case41"});
  CHECK(split["report"]["case"].get<int>() == 1);
  const Json vp = ok({"compactness", "--family",
                      R"({"generator": "spike_train", "n": 6, "params": {"w": 0.125}})", "--spec",
                      "L1", "--mode", "vp"});
  CHECK(vp["report"]["bound"].get<double>() <= 1.6449340668482264 + 1e-9);
  CHECK(vp["report"]["superlinear_ok"].get<bool>());

  const auto csv = cli({"compactness", "--family", train, "--spec", "L1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,supremum\n", 0) == 0);
  CHECK(cli({"compactness", "--family", train, "--spec", "L1", "--mode", "nope"}).code == 2);
}

TEST_CASE("equi profile matches the library and is byte-identical across runs") {
  const auto fam = in_work("random.json",
                           R"({"generator": "random", "n": 10, "params": {"blocks": 3}, "seed": 7})");
  const auto first = cli({"compactness", "--family", fam, "--spec", "L1", "--mode", "equi",
                          "--sets", "halving"});
  const auto second = cli({"compactness", "--family", fam, "--spec", "L1", "--mode", "equi",
                           "--sets", "halving"});
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  const auto family = orlicz::load_family(fam);
  const auto sets = orlicz::halving_sets(family.front().size());
  const auto direct = orlicz::equi_integrability_profile(family, orlicz::NormSpec::l1(), sets);
  CHECK(Json::parse(first.out)["profile"].dump() == orlicz::to_json(direct).dump());

  const auto a = cli({"compactness", "--family", fam, "--spec", "LorentzP1:2", "--mode",
                      "l1const", "--seed", "3"});
  const auto b = cli({"compactness", "--family", fam, "--spec", "LorentzP1:2", "--mode",
                      "l1const", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("multiplier") {
  const auto zero = in_work("mzero.json", "[[0, 1], [0, 2]]");
  CHECK(ok({"multiplier", "--function", zero, "--spec", "Lp:2", "--target", "L1"})["estimate"]
            ["norm_estimate"]
                .get<double>() == 0);
  const auto bounded = in_work("bounded.json", "[[0.5, 0.2], [-3, 0.1], [2, 0.4]]");
  CHECK(ok({"multiplier", "--function", bounded, "--spec", "Lp:2"})["estimate"]["norm_estimate"]
            .get<double>() == doctest::Approx(3).epsilon(1e-9));
  const auto block = in_work("block.json", "[[1, 1]]");
  const Json single = ok({"multiplier", "--function", block, "--spec", "Lp:2"});
  CHECK(single["oc_profile"]["suprema"].back().get<double>() == 0);
}
