#include <doctest.h>

#include <cmath>
#include <vector>

#include "wlansim/error.hpp"
#include "wlansim/phy/channel_set.hpp"
#include "wlansim/phy/frames.hpp"
#include "wlansim/phy/mcs.hpp"
#include "wlansim/phy/params.hpp"
#include "wlansim/phy/propagation.hpp"

using namespace wlansim;
using namespace wlansim::phy;

TEST_SUITE("phy") {
  TEST_CASE("residential path loss at 5 GHz") {
    const PhyMacParams p;
    // 40.05 + 20 log10(5/2.4) = 46.43 at 1 m, then 20 dB/decade up to the 5 m breakpoint.
    CHECK(path_loss_db({2.0}, p) == doctest::Approx(52.45).epsilon(1e-4));
    CHECK(path_loss_db({5.0}, p) == doctest::Approx(60.40).epsilon(1e-4));
    // Beyond the breakpoint: + 35 log10(d / 5).
    CHECK(path_loss_db({10.0}, p) == doctest::Approx(70.94).epsilon(1e-4));
    CHECK(path_loss_db({10.0, 2, 0}, p) == doctest::Approx(path_loss_db({10.0}, p) + 10.0));
    CHECK(path_loss_db({3.0, 0, 1}, p) > path_loss_db({3.0}, p));
    CHECK_THROWS_AS(path_loss_db({0.0}, p), ConfigError);
    CHECK_THROWS_AS(path_loss_db({1.0, -1, 0}, p), ConfigError);
  }

  TEST_CASE("path loss is monotone in distance") {
    const PhyMacParams p;
    double prev = path_loss_db({0.1}, p);
    for (double d = 0.2; d < 60.0; d += 0.1) {
      const double now = path_loss_db({d}, p);
      CHECK(now > prev);
      prev = now;
    }
  }

  TEST_CASE("received power and SINR") {
    const PhyMacParams p;
    CHECK(received_power_dbm(20.0, 52.45, p) == doctest::Approx(-32.45));
    CHECK(sinr_db(-50.0, kNoPowerDbm, p) == doctest::Approx(45.0));
    // -60 dBm of interference on top of a -95 dBm floor.
    const double expected = -50.0 - 10.0 * std::log10(std::pow(10.0, -6.0) + std::pow(10.0, -9.5));
    CHECK(sinr_db(-50.0, -60.0, p) == doctest::Approx(expected));
    CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0));
    CHECK(mw_to_dbm(0.0) == kNoPowerDbm);
  }

  TEST_CASE("interference sums in milliwatts per covered channel") {
    const std::vector<ActiveSignal> active{{-60.0, ChannelSet::range(0, 1, 0)}, {-60.0, ChannelSet::single(1)}};
    const auto out = aggregate_interference(active, ChannelSet::range(0, 3, 0));
    CHECK(out[0] == doctest::Approx(-60.0));
    CHECK(out[1] == doctest::Approx(-60.0 + 10.0 * std::log10(2.0)));
    CHECK(out[2] == kNoPowerDbm);
    CHECK(out[4] == kNoPowerDbm);
    CHECK(cca_busy(out, -59.0) == 0b10);
    CHECK(cca_busy(out, -60.0) == 0b11);
  }

  TEST_CASE("MCS ladder and selection") {
    const PhyMacParams p;
    CHECK(modulation(8).constellation_points == 256);
    CHECK(modulation(11).constellation_points == 1024);
    // 234 subcarriers * log2(256) * 3/4.
    CHECK(bits_per_symbol(8, 1, p) == doctest::Approx(1404.0));
    CHECK(bits_per_symbol(8, 2, p) == doctest::Approx(2808.0));
    CHECK(sensitivity_dbm(8, 1, p) == doctest::Approx(-59.0));
    CHECK(sensitivity_dbm(8, 2, p) == doctest::Approx(-56.0));
    CHECK(select_mcs(-50.0, 1, p) == 11);
    CHECK(select_mcs(-60.0, 1, p) == 7);
    CHECK(select_mcs(-82.0, 1, p) == 0);
    CHECK_THROWS_AS(select_mcs(-82.5, 1, p), LinkInfeasible);
    CHECK_FALSE(valid_width(3));
    CHECK(valid_width(8));
  }

  TEST_CASE("frame durations from the reference parameters") {
    const PhyMacParams p;
    const FrameDurations d = frame_durations(p, 1, 8, 1);
    CHECK(d.rts == micros(52));  // 20 + ceil(176 / 24) * 4
    CHECK(d.cts == micros(44));  // 20 + ceil(128 / 24) * 4
    // 100 + ceil((16 + 320 + 11728) / 1404) * 16 = 100 + 9 * 16.
    CHECK(d.data == micros(244));
    CHECK(exchange_airtime(p, d) == micros(420));
    CHECK(rts_nav(p, d) == micros(368));
    CHECK(cts_nav(p, d) == micros(308));
  }

  TEST_CASE("aggregation is bounded by the maximum PPDU") {
    const PhyMacParams p;
    CHECK(max_aggregation(p, 8, 1) == 40);
    CHECK(frame_durations(p, 40, 8, 1).data <= p.max_ppdu);
    try {
      frame_durations(p, 64, 8, 1);
      FAIL("expected overflow");
    } catch (const AggregationOverflow& e) {
      CHECK(e.max_feasible() == 40);
    }
    Duration prev{0};
    for (int n = 1; n <= 40; ++n) {
      const Duration d = data_duration(p, n, 8, 1);
      CHECK(d >= prev);
      prev = d;
    }
    const FrameDurations a = frame_durations(p, 1, 0, 1);
    const FrameDurations b = frame_durations(p, 20, 11, 4);
    CHECK(a.rts == b.rts);
    CHECK(a.cts == b.cts);
  }

  TEST_CASE("channel sets and bonding shapes") {
    const ChannelSet all = ChannelSet::range(0, 7, 2);
    CHECK(all.width() == 8);
    CHECK(all.valid_for_transmission());
    CHECK_FALSE(ChannelSet::range(1, 2, 1).valid_for_transmission());  // misaligned pair
    CHECK_FALSE(ChannelSet::range(0, 2, 0).valid_for_transmission());  // width 3
    const auto candidates = transmission_candidates(ChannelSet::range(0, 3, 2));
    REQUIRE(candidates.size() == 3);
    CHECK(candidates[0] == ChannelSet::single(2));
    CHECK(candidates[1] == ChannelSet::range(2, 3, 2));
    CHECK(candidates[2] == ChannelSet::range(0, 3, 2));
    for (const auto& c : transmission_candidates(all)) {
      CHECK(c.valid_for_transmission());
      CHECK(c.contains(2));
    }
  }

  TEST_CASE("parameter validation names the field") {
    PhyMacParams p;
    p.sifs = micros(0);
    CHECK_THROWS_AS(p.validate(), ConfigError);
    PhyMacParams q;
    CHECK_NOTHROW(q.validate());
  }
}
