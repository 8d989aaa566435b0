#include <doctest.h>

#include <string>
#include <vector>

#include "support.hpp"
#include "wlansim/io/params_file.hpp"
#include "wlansim/io/scenario.hpp"
#include "wlansim/io/stats.hpp"

using namespace wlansim;
using io::ScenarioError;

namespace {

const std::string kHeader = std::string(io::kScenarioHeader) + "\n";

std::string row(const std::string& code, const std::string& type, const std::string& wlan, const std::string& x,
                const std::string& tail = "0,0,0,0,0,20,-82,full_buffer,0,OP") {
  return code + "," + type + "," + wlan + "," + x + "," + tail + "\n";
}

std::string two_nodes() { return kHeader + row("AP_A", "AP", "A", "0") + row("STA_A", "STA", "A", "2"); }

ScenarioError::Kind error_kind(const std::string& text) {
  try {
    io::parse_scenario_text(text, "inline");
  } catch (const ScenarioError& e) {
    return e.kind();
  }
  FAIL("expected a ScenarioError");
  return ScenarioError::Kind::kIo;
}

}  // namespace

TEST_SUITE("scenario-io") {
  TEST_CASE("minimal scenario parses with defaults") {
    const auto cfg = io::parse_scenario_text(two_nodes(), "inline");
    REQUIRE(cfg.nodes.size() == 2);
    CHECK(cfg.nodes[0].type == io::NodeType::kAp);
    CHECK(cfg.nodes[1].x == doctest::Approx(2.0));
    CHECK(cfg.nodes[1].source_line == 3);
    CHECK(cfg.wlan_codes() == std::vector<std::string>{"A"});
  }

  TEST_CASE("shipped toy scenario 2b has three WLANs of two nodes") {
    const auto cfg = io::parse_scenario(test::scenario_path("2b.csv"));
    CHECK(cfg.nodes.size() == 6);
    CHECK(cfg.wlan_codes() == std::vector<std::string>{"A", "B", "C"});
  }

  TEST_CASE("write then parse round-trips every field") {
    auto cfg = io::parse_scenario(test::scenario_path("2b.csv"));
    cfg.nodes[1].traffic = {traffic::TrafficKind::kPoisson, 123.5};
    cfg.nodes[0].dcb_policy = mac::DcbPolicy::kAlwaysMax;
    cfg.nodes[0].max_channel = 3;
    cfg.nodes[1].max_channel = 3;
    cfg.nodes[2].tx_power_dbm = 17.25;
    cfg.nodes[3].cca_dbm = -61.125;
    const std::string text = io::write_scenario(cfg);
    CHECK(text.rfind(std::string(io::kScenarioHeader), 0) == 0);
    const auto back = io::parse_scenario_text(text, "roundtrip");
    REQUIRE(back.nodes.size() == cfg.nodes.size());
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) CHECK(back.nodes[i] == cfg.nodes[i]);
    CHECK(io::write_scenario(back) == text);
  }

  TEST_CASE("columns may appear in any order and extras only warn") {
    const std::string text =
        "cca_dbm,node_code,node_type,wlan_code,x,y,z,primary_channel,min_channel,max_channel,tx_power_dbm,"
        "traffic_model,traffic_load,dcb_policy,colour\n"
        "-70,AP_A,AP,A,0,0,0,0,0,0,20,full_buffer,0,OP,red\n"
        "-70,STA_A,STA,A,1,0,0,0,0,0,20,full_buffer,0,OP,blue\n";
    std::vector<std::string> warnings;
    const auto cfg = io::parse_scenario_text(text, "inline", &warnings);
    CHECK(cfg.nodes[0].cca_dbm == doctest::Approx(-70.0));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("colour") != std::string::npos);
  }

  TEST_CASE("errors carry a kind and a position") {
    SUBCASE("missing column") {
      CHECK(error_kind("node_code,node_type\nAP_A,AP\n") == ScenarioError::Kind::kMissingColumn);
    }
    SUBCASE("bad number reports line and column") {
      const std::string text = kHeader + row("AP_A", "AP", "A", "zero") + row("STA_A", "STA", "A", "2");
      try {
        io::parse_scenario_text(text, "inline");
        FAIL("expected a ScenarioError");
      } catch (const ScenarioError& e) {
        CHECK(e.kind() == ScenarioError::Kind::kBadValue);
        CHECK(e.line() == 2);
        CHECK(e.column() == 4);
        CHECK(std::string(e.what()).find("inline") != std::string::npos);
      }
    }
    SUBCASE("unknown node type") {
      CHECK(error_kind(kHeader + row("AP_A", "ROUTER", "A", "0")) == ScenarioError::Kind::kBadValue);
    }
    SUBCASE("duplicate node") {
      CHECK(error_kind(two_nodes() + row("STA_A", "STA", "A", "3")) == ScenarioError::Kind::kDuplicateNode);
    }
    SUBCASE("station of an unknown WLAN") {
      CHECK(error_kind(two_nodes() + row("STA_Z", "STA", "Z", "3")) == ScenarioError::Kind::kDanglingReference);
    }
    SUBCASE("two APs in one WLAN") {
      CHECK(error_kind(two_nodes() + row("AP_A2", "AP", "A", "5")) == ScenarioError::Kind::kInvalid);
    }
    SUBCASE("WLAN without stations") {
      CHECK(error_kind(two_nodes() + row("AP_B", "AP", "B", "9")) == ScenarioError::Kind::kInvalid);
    }
    SUBCASE("primary outside the allocation") {
      CHECK(error_kind(kHeader + row("AP_A", "AP", "A", "0", "0,0,4,0,1,20,-82,full_buffer,0,OP") +
                       row("STA_A", "STA", "A", "2", "0,0,4,0,1,20,-82,full_buffer,0,OP")) ==
            ScenarioError::Kind::kInvalid);
    }
    SUBCASE("co-located nodes") {
      CHECK(error_kind(kHeader + row("AP_A", "AP", "A", "0") + row("STA_A", "STA", "A", "0")) ==
            ScenarioError::Kind::kInvalid);
    }
    SUBCASE("empty file") { CHECK(error_kind("") == ScenarioError::Kind::kMissingColumn); }
  }

  TEST_CASE("missing file is an io error") {
    try {
      io::parse_scenario(test::scenario_path("does-not-exist.csv"));
      FAIL("expected a ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(e.kind() == ScenarioError::Kind::kIo);
    }
  }

  TEST_CASE("parameter overrides") {
    phy::PhyMacParams p;
    mac::MacConfig m;
    io::apply_parameters("parameter,value\nsifs_us,10\nn_agg,12\nmcs,8\nsensitivity_mcs3,-75\n", "inline", p, m);
    CHECK(p.sifs == micros(10));
    CHECK(m.n_agg == 12);
    CHECK(m.fixed_mcs == 8);
    CHECK(p.sensitivity_dbm[3] == doctest::Approx(-75.0));
    CHECK_THROWS_AS(io::apply_parameters("parameter,value\nwarp_factor,9\n", "inline", p, m), ScenarioError);
    CHECK_THROWS_AS(io::apply_parameters("parameter,value\nn_agg,many\n", "inline", p, m), ScenarioError);
  }
}

TEST_SUITE("stats") {
  TEST_CASE("finalized statistics and CSV rendering") {
    io::WlanTotals t;
    t.wlan_code = "A";
    t.attempts = 10;
    t.failed = 4;
    t.delivered_mpdus = 3;
    t.acked_bits = 3'000'000;
    t.delay_sum_s = 0.006;
    t.airtime = from_seconds(0.5);
    io::WlanTotals idle;
    idle.wlan_code = "B";
    const auto report = io::finalize_stats({t, idle}, 2.0);
    const auto* a = report.find("A");
    REQUIRE(a != nullptr);
    CHECK(a->collision_prob == doctest::Approx(0.4));
    CHECK(a->throughput_bps == doctest::Approx(1.5e6));
    CHECK(a->mean_delay_s == doctest::Approx(0.002));
    CHECK(a->occupancy == doctest::Approx(0.25));
    CHECK(report.find("B")->no_attempts);
    CHECK(report.find("B")->collision_prob == 0.0);
    CHECK(io::format_stats_csv(report) ==
          "wlan_code,throughput_mbps,mean_delay_ms,collision_prob,occupancy\n"
          "A,1.500000,2.000000,0.400000,0.250000\n"
          "B,0.000000,0.000000,0.000000,0.000000\n");
    CHECK_THROWS(io::finalize_stats({t}, 0.0));
  }
}
