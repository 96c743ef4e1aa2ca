#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <cmath>

#include "srlink/scenario.hpp"

using namespace srlink;

namespace {

ScenarioConfig from_text(const std::string& text) { return config_from_json_text(text); }

}  // namespace

TEST_CASE("empty config text resolves to the documented defaults") {
    const ScenarioConfig cfg = from_text("  \n\t ");
    CHECK(cfg.n == 16);
    CHECK(cfg.n_rf == 4);
    CHECK(cfg.wavelength_m == 0.005);
    CHECK(cfg.l_ap_m == 0.20);
    CHECK(cfg.l_sta_m == 0.04);
    CHECK(cfg.d_m == 0.8);
    CHECK(cfg.q_bits == 2);
    CHECK(cfg.zc_root == 9);
    CHECK(cfg.m_pilots == std::vector<int>{16});
    CHECK(cfg.snr_db == std::vector<double>{10.0});
    CHECK(cfg.trials == 500);
    CHECK(cfg.d_min_m == 0.3);
    CHECK(cfg.d_max_m == 1.3);
    CHECK(cfg.grid_deg == 1.0);
    CHECK(cfg.delta_e == 0.9);
    CHECK(cfg.dcs_passes == 12);
    CHECK(cfg.room.x_m == 5.0);
    CHECK(cfg.room.y_m == 5.0);
    CHECK(cfg.room.height_m == 3.0);
    CHECK(cfg.room.ap_height_m == 1.5);
    CHECK(!cfg.room.floor_enabled);
    CHECK(cfg.methods.size() == 5);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        from_text(R"({"n": 16, "bogus_key": 1})");
        FAIL("expected a rejection");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    try {
        from_text(R"({"room": {"x_m": 5.0, "paint": "blue"}})");
        FAIL("expected a rejection");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("room.paint") != std::string::npos);
    }
}

TEST_CASE("invariant violations name the offending field") {
    try {
        from_text(R"({"m_pilots": 300})");
        FAIL("expected a rejection");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("m_pilots") != std::string::npos);
    }
    CHECK_THROWS(from_text(R"({"wavelength_m": -1.0})"));
    CHECK_THROWS(from_text(R"({"methods": []})"));
    CHECK_THROWS(from_text(R"({"delta_e": 1.5})"));
}

TEST_CASE("scalar and list forms of the sweep fields") {
    const ScenarioConfig a = from_text(R"({"snr_db": [0, 5, 10, 15, 20]})");
    CHECK(a.snr_db == std::vector<double>{0, 5, 10, 15, 20});
    const ScenarioConfig b = from_text(R"({"snr_db": 7.5, "m_pilots": [8, 16, 24]})");
    CHECK(b.snr_db == std::vector<double>{7.5});
    CHECK(b.m_pilots == std::vector<int>{8, 16, 24});
}

TEST_CASE("methods parse from their tokens") {
    const ScenarioConfig cfg = from_text(R"({"methods": ["gmp", "perfect-csi"]})");
    REQUIRE(cfg.methods.size() == 2);
    CHECK(cfg.methods[0] == Method::Gmp);
    CHECK(cfg.methods[1] == Method::PerfectCsi);
    CHECK_THROWS(from_text(R"({"methods": ["GMP"]})"));
}

TEST_CASE("pilot SNR accepts numbers and inf") {
    CHECK(std::isnan(from_text("{}").pilot_snr_db));
    CHECK(from_text(R"({"pilot_snr_db": 25})").pilot_snr_db == 25.0);
    CHECK(std::isinf(from_text(R"({"pilot_snr_db": "inf"})").pilot_snr_db));
}

TEST_CASE("resolved config echo reparses to the same configuration") {
    const ScenarioConfig cfg =
        from_text(R"({"snr_db": [0, 10], "trials": 7, "master_seed": 42,
                      "room": {"floor_enabled": true}, "methods": ["amp", "gmp"]})");
    const std::string echo = resolved_config_json(cfg);
    const ScenarioConfig back = from_text(echo);
    CHECK(back.snr_db == cfg.snr_db);
    CHECK(back.trials == cfg.trials);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(back.room.floor_enabled == cfg.room.floor_enabled);
    CHECK(back.methods == cfg.methods);
    CHECK(resolved_config_json(back) == echo);
}

TEST_CASE("parse_config reads files and reports missing ones") {
    const std::string path = "/tmp/srlink_test_cfg.json";
    {
        std::ofstream out(path);
        out << R"({"trials": 3})";
    }
    CHECK(parse_config(path).trials == 3);
    std::remove(path.c_str());
    CHECK_THROWS(parse_config("/nonexistent/config.json"));
}
