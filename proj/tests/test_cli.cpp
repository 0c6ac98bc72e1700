#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mok/cli/checks.hpp"
#include "mok/cli/commands.hpp"

using namespace mok;
using namespace mok::cli;

TEST_SUITE("cli") {
  TEST_CASE("grid parsing") {
    const auto g = parse_grid("-1.5:2:4");
    CHECK(g.min == -1.5);
    CHECK(g.max == 2.0);
    CHECK(g.steps == 4);
    CHECK_THROWS(parse_grid("0:1"));
    CHECK_THROWS(parse_grid("0:1:1"));
    CHECK_THROWS(parse_grid("1:0:5"));
    CHECK_THROWS(parse_grid("a:1:5"));
    CHECK_THROWS(parse_grid("0:1:2.5"));
    CHECK(parse_list("0.25,0.5,1") == std::vector<double>{0.25, 0.5, 1.0});
  }

  TEST_CASE("half-step centres never hit zero on symmetric even grids") {
    for (long steps : {2L, 10L, 40L})
      for (double z : GridAxis{-3.0, 3.0, steps}.centres()) CHECK(z != 0.0);
    const auto logs = GridAxis{1e-4, 1e6, 61}.log_nodes();
    CHECK(logs.front() == 1e-4);
    CHECK(logs.back() == 1e6);
    CHECK(logs[30] == doctest::Approx(10.0));
  }

  TEST_CASE("CSV uses 17 significant digits, LF endings and a header") {
    Dataset d{{"a", "b", "flags"}, {{0.1, 7L, std::string("ok")}}};
    std::ostringstream os;
    write_csv(d, os);
    CHECK(os.str() == "a,b,flags\n0.10000000000000001,7,ok\n");
    CHECK(std::stod("0.10000000000000001") == 0.1);
  }

  TEST_CASE("JSON mirrors the CSV content") {
    Dataset d{{"x", "flags"}, {{1.0 / 3.0, std::string("ok")}, {std::nan(""), std::string("domain-skipped")}}};
    std::ostringstream os;
    write_json(d, os);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["columns"][1] == "flags");
    CHECK(j["rows"][0][0].get<double>() == 1.0 / 3.0);
    CHECK(j["rows"][1][0].is_null());
  }

  TEST_CASE("field selection") {
    RunConfig c;
    c.tesla = 4.4e7;
    CHECK(c.betas({1.0}) == std::vector<double>{0.01});
    c.beta = 1.0;
    CHECK_THROWS(c.validate());
    RunConfig d;
    CHECK(d.betas({2.0, 3.0}).size() == 2);
    d.beta = -1.0;
    CHECK_THROWS(d.validate());
  }

  TEST_CASE("fig1 smallest grid gives four rows and skips the z=0 plane") {
    RunConfig c;
    c.beta = 1.0;
    c.grids = {GridAxis{0.0, 0.0, 2}, GridAxis{0.0, 0.0, 2}};
    const auto d = cmd_fig1(c);
    CHECK(d.rows.size() == 4);
    for (std::size_t i = 0; i < d.rows.size(); ++i) CHECK(d.text(i, "flags") == "domain-skipped");

    c.grids = {GridAxis{0.0, 0.5, 2}, GridAxis{-1.0, 1.0, 2}};
    const auto e = cmd_fig1(c);
    CHECK(e.columns == std::vector<std::string>{"beta", "x", "z", "gamma1_re", "gamma1_im", "terms_used", "flags"});
    for (std::size_t i = 0; i < e.rows.size(); ++i) CHECK(e.text(i, "flags") == "ok");
  }

  TEST_CASE("fig2 and fig3 columns and row identities") {
    RunConfig c;
    c.grids = {GridAxis{1e-2, 1e2, 5}};
    const auto f2 = cmd_fig2(c);
    CHECK(f2.rows.size() == 5);
    for (std::size_t i = 0; i < f2.rows.size(); ++i)
      CHECK(std::abs(f2.number(i, "w1") - f2.number(i, "w1_rho") - f2.number(i, "w1_z")) <= 1e-12);
    c.d = {0.5};
    const auto f3 = cmd_fig3(c);
    CHECK(f3.columns == std::vector<std::string>{"beta", "d", "z_plus", "z_minus", "z_g", "flags"});
    for (std::size_t i = 0; i < f3.rows.size(); ++i) CHECK(f3.number(i, "z_g") == 1.5 * 0.25);
  }

  TEST_CASE("fig4 skips rho = 0 and gives a finite width") {
    RunConfig c;
    c.beta = 1e-2;
    const auto f4 = cmd_fig4(c);
    CHECK(f4.text(0, "flags") == "domain-skipped");
    CHECK(half_max_radius(f4, 1e-2) > 0.5);
  }

  TEST_CASE("eval reports kernel entries and planar values at z = 0") {
    RunConfig c;
    c.beta = 2.0;
    c.point = {0.3, 0.0, 0.4};
    const auto e = cmd_eval(c);
    CHECK(e.rows.size() == 7 + 32);
    c.point = {0.3, 0.1, 0.0};
    CHECK(cmd_eval(c).text(0, "quantity") == "g1");
    c.point = {0.0, 0.0, 0.0};
    CHECK(cmd_eval(c).text(0, "flags") == "domain-skipped");
  }

  TEST_CASE("output is independent of the thread count") {
    RunConfig c;
    c.beta = 0.5;
    c.grids = {GridAxis{-1.0, 1.0, 5}, GridAxis{-1.0, 1.0, 4}};
    std::ostringstream one, four;
    write_csv(cmd_fig1(c), one);
    c.threads = 4;
    write_csv(cmd_fig1(c), four);
    CHECK(one.str() == four.str());
  }

  TEST_CASE("check registry covers the acceptance criteria") {
    int acceptance = 0;
    for (const auto& c : check_registry()) acceptance += c.acceptance;
    CHECK(acceptance == 13);
    CHECK(find_check(7).name == "d-oracle-equivalence");
    CHECK_THROWS(find_check(99));
  }

  TEST_CASE("mutating a0 is caught by the D-function check") {
    const auto clean = run_check(find_check(7), {});
    const auto broken = run_check(find_check(7), {false, 1e-3});
    CHECK(clean.outcome.pass);
    CHECK_FALSE(broken.outcome.pass);
  }
}
