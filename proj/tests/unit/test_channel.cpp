#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "oracles.hpp"
#include "srlink/channel.hpp"
#include "srlink/geometry.hpp"

using namespace srlink;

namespace {

// the desk-scale geometry used throughout
ApLayout desk_ap() { return build_ap_layout(16, 4, 0.005, 0.20); }

RoomSpec paper_room() { return RoomSpec{}; }  // 5 x 5 x 3, AP at 1.5 m, walls -0.6

RoomSpec big_open_room() {
    RoomSpec r = RoomSpec::los_only();
    r.size_x = r.size_y = r.height = 100.0;
    r.ap_height = 50.0;
    return r;
}

}  // namespace

TEST_CASE("free-space response values") {
    SUBCASE("integer number of wavelengths gives zero phase") {
        DistanceMatrix dm;
        dm.d = RMat(1, 1);
        dm.d(0, 0) = 0.8;  // 0.8 / 0.005 = 160 wavelengths
        const CMat h = los_channel(dm, 0.005);
        CHECK(std::abs(h(0, 0)) == doctest::Approx(0.005 / (4.0 * M_PI * 0.8)).epsilon(1e-12));
        CHECK(std::abs(std::arg(h(0, 0))) < 1e-9);
        CHECK(std::abs(h(0, 0)) == doctest::Approx(4.9736e-4).epsilon(1e-4));
    }

    SUBCASE("one-wavelength separation is 1/(4 pi), real positive") {
        DistanceMatrix dm;
        dm.d = RMat(1, 1);
        dm.d(0, 0) = 0.005;
        const CMat h = los_channel(dm, 0.005);
        CHECK(h(0, 0).real() == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
        CHECK(std::abs(h(0, 0).imag()) < 1e-12);
    }

    SUBCASE("full 64x16 matrix matches the element-by-element oracle") {
        const ApLayout ap = desk_ap();
        const StaPlacement sta = place_sta(ap, 0.8, 0.0, M_PI / 4.0, 16, 0.04);
        const DistanceMatrix dm = pairwise_distances(ap, sta);
        const CMat h = los_channel(dm, 0.005);
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 16; ++j) {
                const double d = dm.d(i, j);
                const cd want = 0.005 / (4.0 * M_PI * d) *
                                cd{std::cos(2.0 * M_PI * d / 0.005), -std::sin(2.0 * M_PI * d / 0.005)};
                CHECK(std::abs(h(i, j) - want) < 1e-12);
            }
    }

    SUBCASE("nonpositive distances are rejected") {
        DistanceMatrix dm;
        dm.d = RMat(1, 1);
        dm.d(0, 0) = 0.0;
        CHECK_THROWS(los_channel(dm, 0.005));
    }
}

TEST_CASE("zero reflection coefficients reproduce the free-space channel exactly") {
    const ApLayout ap = desk_ap();
    const StaPlacement sta = place_sta(ap, 0.8, 0.3, 0.5, 16, 0.04);
    RoomSpec room = paper_room();
    room.refl_side = room.refl_ceiling = room.refl_floor = cd{0.0, 0.0};

    const ChannelSet ch = synthesize_channel(ap, sta, room);
    const CMat want = los_channel(pairwise_distances(ap, sta), ap.wavelength);
    for (size_t i = 0; i < want.size(); ++i) CHECK(ch.h.a[i] == want.a[i]);
}

TEST_CASE("single ceiling bounce matches a hand-built mirror image") {
    // one AP element at the room center height, one STA element broadside
    ApLayout ap;
    ap.element_positions = {{0.0, 0.0}};
    ap.subarray_mid_offsets = {0.0};
    ap.n_per_subarray = 1;
    ap.n_subarrays = 1;
    ap.wavelength = 0.005;

    StaPlacement sta;
    sta.element_positions = {{0.0, 0.8}};
    sta.d = 0.8;
    sta.n = 1;

    RoomSpec room = paper_room();
    room.refl_side = cd{0.0, 0.0};      // ceiling only
    room.refl_ceiling = cd{-0.6, 0.0};

    const ChannelSet ch = synthesize_channel(ap, sta, room);

    // direct + ceiling image (the image lifts the source to 2H - z)
    const double h_gap = room.height - room.ap_height;  // 1.5 m to the ceiling
    const double len = std::sqrt(0.8 * 0.8 + 4.0 * h_gap * h_gap);
    auto ray = [&](double L) {
        return 0.005 / (4.0 * M_PI * L) *
               cd{std::cos(2.0 * M_PI * L / 0.005), -std::sin(2.0 * M_PI * L / 0.005)};
    };
    const cd want = ray(0.8) + cd{-0.6, 0.0} * ray(len);
    CHECK(std::abs(ch.h(0, 0) - want) < 1e-12);
}

TEST_CASE("paper room produces eight rays per element pair") {
    // compare one element pair against an independent image enumeration
    ApLayout ap;
    ap.element_positions = {{0.01, 0.0}};
    ap.subarray_mid_offsets = {0.01};
    ap.n_per_subarray = 1;
    ap.n_subarrays = 1;
    ap.wavelength = 0.005;

    StaPlacement sta;
    sta.element_positions = {{0.07, 0.83}};
    sta.d = 0.8;
    sta.n = 1;

    const RoomSpec room = paper_room();
    const ChannelSet ch = synthesize_channel(ap, sta, room);

    // oracle: direct + 3 one-bounce + 4 two-bounce images in room coords
    const double apx = 2.5 + 0.01, apy = 5.0, apz = 1.5;
    const double stx = 2.5 + 0.07, sty = 5.0 - 0.83, stz = 1.5;
    struct Img {
        double x, y, z, coeff;
    };
    std::vector<Img> images = {
        {stx, sty, stz, 1.0},
        {-stx, sty, stz, -0.6},
        {10.0 - stx, sty, stz, -0.6},
        {stx, sty, 6.0 - stz, -0.6},
        {10.0 + stx, sty, stz, 0.36},
        {stx - 10.0, sty, stz, 0.36},
        {-stx, sty, 6.0 - stz, 0.36},
        {10.0 - stx, sty, 6.0 - stz, 0.36},
    };
    CHECK(images.size() == 8);
    cd want{0.0, 0.0};
    for (const Img& im : images) {
        const double L = std::sqrt((im.x - apx) * (im.x - apx) + (im.y - apy) * (im.y - apy) +
                                   (im.z - apz) * (im.z - apz));
        want += im.coeff * 0.005 / (4.0 * M_PI * L) *
                cd{std::cos(2.0 * M_PI * L / 0.005), -std::sin(2.0 * M_PI * L / 0.005)};
    }
    CHECK(std::abs(ch.h(0, 0) - want) < 1e-12);
}

TEST_CASE("rooms that cannot contain the arrays are rejected") {
    const ApLayout ap = desk_ap();
    const StaPlacement sta = place_sta(ap, 4.0, 0.0, 0.0, 16, 0.04);
    RoomSpec room = paper_room();
    CHECK_NOTHROW(synthesize_channel(ap, sta, room));
    const StaPlacement outside = place_sta(ap, 6.0, 0.0, 0.0, 16, 0.04);
    CHECK_THROWS(synthesize_channel(ap, outside, room));

    RoomSpec bad = paper_room();
    bad.refl_side = cd{-1.5, 0.0};
    CHECK_THROWS(synthesize_channel(ap, sta, bad));
}

TEST_CASE("stacked subchannels reproduce the full channel") {
    const ApLayout ap = desk_ap();
    const StaPlacement sta = place_sta(ap, 0.8, 0.2, 0.4, 16, 0.04);
    const ChannelSet ch = synthesize_channel(ap, sta, paper_room());
    REQUIRE(ch.subchannels.size() == 4);
    for (int k = 0; k < 4; ++k)
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) CHECK(ch.subchannels[k](r, c) == ch.h(k * 16 + r, c));
}

TEST_CASE("energy metrics") {
    SUBCASE("rank-one channel scores one on both metrics") {
        ChannelSet ch;
        ch.n = 4;
        ch.n_rf = 2;
        ch.wavelength = 0.005;
        ch.h = CMat(8, 4);
        Rng rng(3);
        const CVec a = oracles::random_cvec(8, rng);
        const CVec b = oracles::random_cvec(4, rng);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 4; ++j) ch.h(i, j) = a[i] * b[j];
        for (int k = 0; k < 2; ++k) ch.subchannels.push_back(block_rows(ch.h, 4 * k, 4));
        const EnergyMetrics em = energy_metrics(ch);
        CHECK(em.full == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(em.subarrays == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("all-zero channel is rejected") {
        ChannelSet ch;
        ch.n = 4;
        ch.n_rf = 1;
        ch.h = CMat(4, 4);
        ch.subchannels.push_back(ch.h);
        CHECK_THROWS(energy_metrics(ch));
    }

    SUBCASE("desk-scale sweep: subarray metric dominates and both grow with distance") {
        const ApLayout ap = desk_ap();
        const RoomSpec open = big_open_room();
        double prev_full = 0.0, prev_sub = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double d = 0.2 + (3.0 - 0.2) * i / 11.0;
            const StaPlacement sta = place_sta(ap, d, 0.0, 0.0, 16, 0.04);
            const EnergyMetrics em = energy_metrics(synthesize_channel(ap, sta, open));
            CHECK(em.subarrays >= em.full);
            CHECK(em.full > 0.0);
            CHECK(em.subarrays <= 1.0 + 1e-12);
            CHECK(em.full >= prev_full - 1e-9);
            CHECK(em.subarrays >= prev_sub - 1e-9);
            prev_full = em.full;
            prev_sub = em.subarrays;
        }
    }
}

TEST_CASE("beamspace transform") {
    SUBCASE("round trip through the antenna domain") {
        Rng rng(4);
        const CMat h = oracles::random_cmat(16, 16, rng);
        const CMat x = beamspace(h);
        const CMat back = beamspace_to_antenna(x);
        CHECK(oracles::max_abs_diff(back, h) < 1e-12);

        // energy is preserved by the unitary pair
        double eh = 0.0, ex = 0.0;
        for (const auto& e : h.a) eh += std::norm(e);
        for (const auto& e : x.a) ex += std::norm(e);
        CHECK(ex == doctest::Approx(eh).epsilon(1e-12));
    }

    SUBCASE("DFT basis outer product maps to a canonical one-sparse matrix") {
        const CMat u = oracles::dense_dft(16);
        CMat h(16, 16);
        // H = (U e0)(e0^T U), so X must be e0 e0^T
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) h(r, c) = u(r, 0) * u(0, c);
        const CMat x = beamspace(h);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) {
                if (r == 0 && c == 0)
                    CHECK(std::abs(x(r, c) - cd{1.0, 0.0}) < 1e-10);
                else
                    CHECK(std::abs(x(r, c)) < 1e-10);
            }
    }

    SUBCASE("on-grid steering outer products are one-sparse") {
        // a_N(omega) with sin(omega) = 2 m / N lies on the DFT grid
        const int n = 16;
        auto steer = [&](int m) {
            CVec a(n);
            for (int i = 0; i < n; ++i) {
                const double ph = -M_PI * i * (2.0 * m / n);
                a[i] = cd{std::cos(ph), std::sin(ph)};
            }
            return a;
        };
        const CVec aw = steer(2), af = steer(3);
        CMat h(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) h(r, c) = aw[r] * af[c];
        const CMat x = beamspace(h);
        int nonzero = 0;
        for (const auto& e : x.a)
            if (std::abs(e) > 1e-9) ++nonzero;
        CHECK(nonzero == 1);
    }
}

TEST_CASE("beamspace support drifts slowly across subarrays at desk range") {
    const ApLayout ap = desk_ap();
    const StaPlacement sta = place_sta(ap, 0.8, 0.0, M_PI / 4.0, 16, 0.04);
    const ChannelSet ch = synthesize_channel(ap, sta, big_open_room());

    int prev_r = -1, prev_c = -1;
    for (int k = 0; k < 4; ++k) {
        int best_r = 0, best_c = 0;
        double best = 0.0;
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                if (std::abs(ch.beamspace[k](r, c)) > best) {
                    best = std::abs(ch.beamspace[k](r, c));
                    best_r = r;
                    best_c = c;
                }
        if (k > 0) {
            auto cyc = [](int a, int b) {
                const int d = std::abs(a - b);
                return std::min(d, 16 - d);
            };
            CHECK(cyc(best_r, prev_r) <= 3);
            CHECK(cyc(best_c, prev_c) <= 3);
        }
        prev_r = best_r;
        prev_c = best_c;
    }
}

TEST_CASE("magnitude reciprocity under the mirror flip") {
    const ApLayout ap = desk_ap();
    const ChannelSet a =
        synthesize_channel(ap, place_sta(ap, 0.8, 0.35, 0.6, 16, 0.04), paper_room());
    const ChannelSet b =
        synthesize_channel(ap, place_sta(ap, 0.8, -0.35, -0.6, 16, 0.04), paper_room());
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(std::abs(std::abs(a.h(i, j)) - std::abs(b.h(63 - i, 15 - j))) < 1e-10);
}

TEST_CASE("channel dump round-trips through the text format") {
    const ApLayout ap = desk_ap();
    const ChannelSet ch =
        synthesize_channel(ap, place_sta(ap, 0.8, 0.1, 0.2, 16, 0.04), paper_room());
    const std::string path = "/tmp/srlink_test_channel.txt";
    dump_channel(ch, path);
    const ChannelSet back = load_channel(path);
    CHECK(back.n == ch.n);
    CHECK(back.n_rf == ch.n_rf);
    CHECK(back.wavelength == ch.wavelength);
    CHECK(oracles::max_abs_diff(back.h, ch.h) < 1e-15);
    std::remove(path.c_str());
}
