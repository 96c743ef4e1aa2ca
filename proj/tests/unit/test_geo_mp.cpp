#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "srlink/acquisition.hpp"
#include "srlink/channel.hpp"
#include "srlink/geo_mp.hpp"
#include "srlink/geometry.hpp"

using namespace srlink;

namespace {

const double kDeg = M_PI / 180.0;

ChannelSet los_channel_at(const ApLayout& ap, double d, double gamma, double theta) {
    RoomSpec open = RoomSpec::los_only();
    open.size_x = open.size_y = open.height = 200.0;
    open.ap_height = 100.0;
    return synthesize_channel(ap, place_sta(ap, d, gamma, theta, 16, 0.04), open);
}

double belief_sum(const AngularBelief& b) {
    double s = 0.0;
    for (double w : b.weights) s += w;
    return s;
}

}  // namespace

TEST_CASE("angular grid") {
    const AngularGrid g = AngularGrid::make(1.0 / 180.0);
    CHECK(g.size() == 180);
    CHECK(g.angles.front() > -M_PI / 2.0);
    CHECK(g.angles.back() < M_PI / 2.0);
    for (int i = 1; i < g.size(); ++i)
        CHECK(g.angles[i] - g.angles[i - 1] == doctest::Approx(M_PI / 180.0).epsilon(1e-12));
    CHECK(g.nearest_bin(g.angles[42]) == 42);
    CHECK(g.nearest_bin(-M_PI / 2.0) == 0);
    CHECK(g.nearest_bin(M_PI / 2.0) == 179);
}

TEST_CASE("steering vector matches its definition") {
    const CVec a = steering_vector(16, 0.31);
    for (int i = 0; i < 16; ++i) {
        const double want = -M_PI * i * std::sin(0.31);
        CHECK(std::abs(a[i] - cd{std::cos(want), std::sin(want)}) < 1e-14);
    }
    // broadside is all ones
    const CVec b = steering_vector(16, 0.0);
    for (const cd& e : b) CHECK(std::abs(e - cd{1.0, 0.0}) < 1e-15);
}

TEST_CASE("aoa likelihood") {
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);

    SUBCASE("noiseless full probing peaks at an on-grid truth") {
        const double truth = grid.angles[57];
        CMat psi(16, 16);
        for (int i = 0; i < 16; ++i) psi(i, i) = cd{1.0, 0.0};  // full identity probing
        const CVec a = steering_vector(16, truth);
        CVec y(16);
        for (int m = 0; m < 16; ++m) y[m] = a[m];
        const AngularBelief b = aoa_likelihood(y, psi, cd{1.0, 0.0}, 0.0, grid);
        CHECK(belief_sum(b) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(estimate_aoa(b, grid) == doctest::Approx(truth).epsilon(1e-12));
    }

    SUBCASE("infinite noise flattens the belief") {
        CMat psi(4, 16);
        Rng rng(1);
        for (auto& e : psi.a) e = rng.cgaussian(1.0);
        const CVec y = oracles::random_cvec(4, rng);
        const AngularBelief b = aoa_likelihood(y, psi, cd{1.0, 0.0}, 1e30, grid);
        for (double w : b.weights) CHECK(w == doctest::Approx(1.0 / 180.0).epsilon(1e-6));
    }

    SUBCASE("degraded gain falls back to uniform") {
        CMat psi(4, 16);
        const CVec y(4, cd{1.0, 0.0});
        const AngularBelief b = aoa_likelihood(y, psi, cd{0.0, 0.0}, 1.0, grid, true);
        for (double w : b.weights) CHECK(w == doctest::Approx(1.0 / 180.0).epsilon(1e-12));
    }

    SUBCASE("coarse argmax tracks a 10x finer exhaustive search") {
        const ApLayout ap = build_ap_layout(16, 4, 0.005, 0.20);
        const ZcSequence z = zc_sequence(16, 9);
        const AngularGrid fine = AngularGrid::make(1.0 / 1800.0);
        int close = 0;
        const int trials = 500;
        for (int t = 0; t < trials; ++t) {
            Rng rng(9000 + t);
            const ChannelSet ch = los_channel_at(ap, 0.8, 0.0, 0.0);
            const CMat psi = aoa_probe_schedule(4, 16, z, rng, 2);
            // subarray 0 measurement with the fixed station beam z
            const CMat& h0 = ch.subchannels[0];
            CVec h_eff(16, cd{0.0, 0.0});
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j) h_eff[i] += h0(i, j) * z.z[j];
            const double sig = mean_signal_power_vec(h_eff, psi);
            const double sigma2 = sig / 10.0;
            const CVec y = measure_vector(h_eff, psi, std::sqrt(sigma2), rng);
            const GainCompensation gc = gain_compensate(y, psi(0, 0));
            if (gc.degraded) continue;
            const AngularBelief coarse = aoa_likelihood(gc.y_tilde, psi, gc.alpha_hat, sigma2,
                                                        AngularGrid::make(1.0 / 180.0));
            const AngularBelief finer = aoa_likelihood(gc.y_tilde, psi, gc.alpha_hat, sigma2, fine);
            const double w_coarse = estimate_aoa(coarse, AngularGrid::make(1.0 / 180.0));
            const double w_fine = estimate_aoa(finer, fine);
            if (std::abs(w_coarse - w_fine) <= 1.0 * kDeg + 1e-9) ++close;
        }
        CHECK(close >= static_cast<int>(0.95 * trials));
    }
}

TEST_CASE("geometry map") {
    SUBCASE("equal offsets are the identity for any distance") {
        for (double w : {-1.2, -0.3, 0.0, 0.4, 1.3})
            for (double d : {0.3, 0.8, 5.0}) {
                const auto out = geometry_map(w, d, -0.05, -0.05);
                REQUIRE(out.has_value());
                CHECK(*out == doctest::Approx(w).epsilon(1e-12));
            }
    }

    SUBCASE("worked broadside pair") {
        const auto out = geometry_map(0.0, 0.8, -0.08125, -0.0270833333333333);
        REQUIRE(out.has_value());
        // d1 = sqrt(0.64 - l_a^2) and the bearing from the second offset
        const double d1 = std::sqrt(0.64 - 0.08125 * 0.08125);
        CHECK(d1 == doctest::Approx(0.795864).epsilon(1e-5));
        CHECK(*out == doctest::Approx(-0.06795).epsilon(1e-3));
        CHECK(*out == doctest::Approx(std::atan((-0.08125 + 0.0270833333333333) / d1)).epsilon(1e-12));
    }

    SUBCASE("coordinate oracle: bearings measured from raw positions agree") {
        Rng rng(17);
        for (int t = 0; t < 2000; ++t) {
            const double la = rng.uniform(-0.1, 0.1);
            const double lb = rng.uniform(-0.1, 0.1);
            const double d = rng.uniform(0.3, 1.3);
            const double wa = rng.uniform(-1.2, 1.2);
            // station position implied by (wa, la): bearing wa at range d1 from offset la
            const double disc = d * d - la * la * std::cos(wa) * std::cos(wa);
            if (disc <= 0.0) continue;
            const double d1 = -la * std::sin(wa) + std::sqrt(disc);
            if (d1 <= 0.0) continue;
            const double px = la + d1 * std::sin(wa);
            const double py = d1 * std::cos(wa);
            // check the premise: distance from the array midpoint is d
            CHECK(std::hypot(px, py) == doctest::Approx(d).epsilon(1e-9));
            const double want = std::atan2(px - lb, py);
            const auto got = geometry_map(wa, d, la, lb);
            REQUIRE(got.has_value());
            CHECK(*got == doctest::Approx(want).epsilon(1e-9));
        }
    }

    SUBCASE("far-field limit collapses to the identity") {
        // centimeter-scale offsets meet the 1e-4 bound at 100 m
        for (double w : {-1.0, -0.2, 0.7})
            CHECK(std::abs(*geometry_map(w, 100.0, -0.004, 0.004) - w) < 1e-4);
        // desk-scale offsets obey the general |l_a - l_b| / d envelope
        for (double w : {-1.0, -0.2, 0.7})
            CHECK(std::abs(*geometry_map(w, 100.0, -0.08125, 0.08125) - w) <=
                  1.01 * 0.1625 / 100.0);
    }

    SUBCASE("degenerate ranges are reported infeasible") {
        CHECK(!geometry_map(0.0, 0.01, -0.08125, 0.0).has_value());
    }
}

TEST_CASE("factor tables") {
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);

    SUBCASE("degenerate distance range gives point-mass rows") {
        const GeometryFactorTable t = build_factor_table(grid, 0.8, 0.8, -0.08125, -0.027083, 50);
        for (int in = 0; in < grid.size(); ++in) {
            const auto out = geometry_map(grid.angles[in], 0.8, -0.08125, -0.027083);
            if (!out) continue;
            const int bin = grid.nearest_bin(*out);
            CHECK(t.p(in, bin) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("equal offsets give a bin-resolution identity") {
        const GeometryFactorTable t = build_factor_table(grid, 0.3, 1.3, 0.02, 0.02, 200);
        for (int in = 0; in < grid.size(); ++in)
            CHECK(t.p(in, in) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("paper ranges: rows are normalized with contiguous support") {
        const GeometryFactorTable t =
            build_factor_table(grid, 0.3, 1.3, -0.08125, -0.0270833333, 2000);
        for (int in = 0; in < grid.size(); ++in) {
            double sum = 0.0;
            int first = -1, last = -1;
            for (int out = 0; out < grid.size(); ++out) {
                sum += t.p(in, out);
                if (t.p(in, out) > 0.0) {
                    if (first < 0) first = out;
                    last = out;
                }
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            REQUIRE(first >= 0);
            // support is a contiguous bin interval
            for (int out = first; out <= last; ++out) CHECK(t.p(in, out) > 0.0);
            // and agrees with a dense range sweep
            const auto lo = geometry_map(grid.angles[in], 0.3, -0.08125, -0.0270833333);
            const auto hi = geometry_map(grid.angles[in], 1.3, -0.08125, -0.0270833333);
            if (lo && hi) {
                const int bin_lo = grid.nearest_bin(std::min(*lo, *hi));
                const int bin_hi = grid.nearest_bin(std::max(*lo, *hi));
                CHECK(first >= bin_lo - 1);
                CHECK(last <= bin_hi + 1);
            }
        }
    }
}

TEST_CASE("forward-backward message passing") {
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);

    SUBCASE("single hop pushes a point mass through the table") {
        // two nodes, delta likelihood at node 0, uniform at node 1
        std::vector<AngularBelief> lik(2);
        lik[0].weights.assign(180, 0.0);
        lik[0].weights[40] = 1.0;
        lik[1].weights.assign(180, 1.0 / 180.0);

        GeometryFactorTable fwd = build_factor_table(grid, 0.8, 0.8, -0.08125, -0.027083, 50);
        GeometryFactorTable bwd = build_factor_table(grid, 0.8, 0.8, -0.027083, -0.08125, 50);
        const ForwardBackwardResult fb = forward_backward(lik, {fwd}, {bwd}, grid);

        const auto mapped = geometry_map(grid.angles[40], 0.8, -0.08125, -0.027083);
        REQUIRE(mapped.has_value());
        const int bin = grid.nearest_bin(*mapped);
        CHECK(fb.combined[1].weights[bin] == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("uniform likelihoods: combined equals fwd x bwd, against a direct sum oracle") {
        const ApLayout ap = build_ap_layout(16, 4, 0.005, 0.20);
        std::vector<GeometryFactorTable> fwd, bwd;
        for (int k = 0; k < 3; ++k) {
            fwd.push_back(build_factor_table(grid, 0.3, 1.3, ap.subarray_mid_offsets[k],
                                             ap.subarray_mid_offsets[k + 1], 500));
            bwd.push_back(build_factor_table(grid, 0.3, 1.3, ap.subarray_mid_offsets[k + 1],
                                             ap.subarray_mid_offsets[k], 500));
        }
        std::vector<AngularBelief> lik(4);
        for (auto& l : lik) l.weights.assign(180, 1.0 / 180.0);
        const ForwardBackwardResult fb = forward_backward(lik, fwd, bwd, grid);

        // direct-sum oracle for the forward messages
        std::vector<double> msg(180, 1.0 / 180.0);
        for (int k = 0; k < 3; ++k) {
            std::vector<double> next(180, 0.0);
            for (int in = 0; in < 180; ++in)
                for (int out = 0; out < 180; ++out) next[out] += msg[in] * fwd[k].p(in, out);
            double sum = 0.0;
            for (double w : next) sum += w;
            for (double& w : next) w /= sum;
            msg = next;
            for (int g = 0; g < 180; ++g)
                CHECK(fb.fwd_in[k + 1].weights[g] == doctest::Approx(msg[g]).epsilon(1e-9));
        }

        for (int k = 0; k < 4; ++k) {
            CHECK(belief_sum(fb.combined[k]) == doctest::Approx(1.0).epsilon(1e-9));
            // with uniform likelihoods the combination is fwd x bwd renormalized
            double sum = 0.0;
            for (int g = 0; g < 180; ++g) sum += fb.fwd_in[k].weights[g] * fb.bwd_in[k].weights[g];
            for (int g = 0; g < 180; ++g)
                CHECK(fb.combined[k].weights[g] ==
                      doctest::Approx(fb.fwd_in[k].weights[g] * fb.bwd_in[k].weights[g] / sum)
                          .epsilon(1e-6));
        }
    }
}

TEST_CASE("estimate_aoa") {
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);

    SUBCASE("point mass") {
        AngularBelief b;
        b.weights.assign(180, 0.0);
        b.weights[99] = 1.0;
        CHECK(estimate_aoa(b, grid) == grid.angles[99]);
    }

    SUBCASE("symmetric tie resolves to the smaller angle") {
        AngularBelief b;
        b.weights.assign(180, 0.0);
        b.weights[60] = 0.5;
        b.weights[120] = 0.5;
        CHECK(estimate_aoa(b, grid) == grid.angles[60]);
    }

    SUBCASE("unimodal belief matches a linear scan") {
        AngularBelief b;
        b.weights.assign(180, 0.0);
        for (int g = 0; g < 180; ++g) b.weights[g] = std::exp(-0.01 * (g - 77) * (g - 77));
        double best = -1.0;
        int arg = 0;
        for (int g = 0; g < 180; ++g)
            if (b.weights[g] > best) {
                best = b.weights[g];
                arg = g;
            }
        CHECK(estimate_aoa(b, grid) == grid.angles[arg]);
    }
}

TEST_CASE("geometry consistency: mapped local AoAs match coordinate-level bearings") {
    const ApLayout ap = build_ap_layout(16, 4, 0.005, 0.20);
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        const double gamma = rng.uniform(-1.2, 1.2);
        const double d = rng.uniform(0.3, 1.3);
        const double px = d * std::sin(gamma), py = d * std::cos(gamma);
        std::vector<double> omega(4);
        for (int k = 0; k < 4; ++k)
            omega[k] = std::atan2(px - ap.subarray_mid_offsets[k], py);
        for (int k = 0; k < 3; ++k) {
            const auto mapped = geometry_map(omega[k], d, ap.subarray_mid_offsets[k],
                                             ap.subarray_mid_offsets[k + 1]);
            REQUIRE(mapped.has_value());
            CHECK(std::abs(*mapped - omega[k + 1]) < 1e-9);
        }
    }
}

TEST_CASE("station-side ML AoA") {
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);
    const ZcSequence z = zc_sequence(16, 9);

    SUBCASE("noiseless on-grid response recovers the exact bin") {
        Rng rng(31);
        const CMat psi = aoa_probe_schedule(8, 16, z, rng, 2);
        const double truth = grid.angles[130];
        CVec h(16);
        const CVec a = steering_vector(16, truth);
        for (int i = 0; i < 16; ++i) h[i] = cd{0.7, -0.2} * a[i];
        const CVec y = measure_vector(h, psi, 0.0, rng);
        CHECK(sta_ml_aoa(y, psi, 0.0, grid) == doctest::Approx(truth).epsilon(1e-12));
    }

    SUBCASE("median error at 10 dB with 8 probes is within 2 bins") {
        std::vector<double> errs;
        for (int t = 0; t < 500; ++t) {
            Rng rng(40000 + t);
            // single-path downlink response at a random off-grid bearing
            const double phi_true = rng.uniform(-75.0 * kDeg, 75.0 * kDeg);
            const cd alpha = rng.cgaussian(1.0);
            const CVec a = steering_vector(16, phi_true);
            CVec h(16);
            for (int j = 0; j < 16; ++j) h[j] = alpha * a[j];
            const CMat psi = aoa_probe_schedule(8, 16, z, rng, 2);
            const double sig = mean_signal_power_vec(h, psi);
            const double sigma2 = sig / 10.0;
            const CVec y = measure_vector(h, psi, std::sqrt(sigma2), rng);
            const double phi_hat = sta_ml_aoa(y, psi, sigma2, grid);
            errs.push_back(std::abs(phi_hat - phi_true));
        }
        std::sort(errs.begin(), errs.end());
        CHECK(errs[errs.size() / 2] <= 2.0 * kDeg + 1e-9);
    }

    SUBCASE("degraded gain yields the smallest grid angle") {
        Rng rng(32);
        const CMat psi = aoa_probe_schedule(4, 16, z, rng, 2);
        CVec y(4, cd{0.0, 0.0});
        y[0] = cd{1.0, 0.0};
        y[3] = cd{-1.0, 0.0};  // twin sum cancels: gain floor trips
        CHECK(sta_ml_aoa(y, psi, 1.0, grid) == grid.angles[0]);
    }
}

TEST_CASE("geometry pooling beats per-subarray ML on average") {
    const ApLayout ap = build_ap_layout(16, 4, 0.005, 0.20);
    const ZcSequence z = zc_sequence(16, 9);
    const AngularGrid grid = AngularGrid::make(1.0 / 180.0);
    const CVec zq = phase_quantize(z.z, 2);

    // factor tables in the likelihoods' sign convention (offsets negated)
    std::vector<GeometryFactorTable> fwd, bwd;
    for (int k = 0; k < 3; ++k) {
        fwd.push_back(build_factor_table(grid, 0.3, 1.3, -ap.subarray_mid_offsets[k],
                                         -ap.subarray_mid_offsets[k + 1], 2000));
        bwd.push_back(build_factor_table(grid, 0.3, 1.3, -ap.subarray_mid_offsets[k + 1],
                                         -ap.subarray_mid_offsets[k], 2000));
    }

    double err_ml = 0.0, err_gmp = 0.0;
    int count = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        Rng rng(50000 + t);
        const double gamma = (-60.0 + 15.0 * rng.uniform_int(9)) * kDeg;
        const ChannelSet ch = los_channel_at(ap, 0.8, gamma, 0.0);

        std::vector<AngularBelief> lik(4);
        std::vector<double> truth(4);
        const double px = 0.8 * std::sin(gamma), py = 0.8 * std::cos(gamma);
        bool ok = true;
        for (int k = 0; k < 4; ++k) {
            truth[k] = -std::atan2(px - ap.subarray_mid_offsets[k], py);
            const CMat psi = aoa_probe_schedule(4, 16, z, rng, 2);
            CVec h(16, cd{0.0, 0.0});
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j) h[i] += ch.subchannels[k](i, j) * zq[j];
            const double sig = mean_signal_power_vec(h, psi);
            const double sigma2 = sig / 10.0;
            const CVec y = measure_vector(h, psi, std::sqrt(sigma2), rng);
            const GainCompensation gc = gain_compensate(y, psi(0, 0));
            lik[k] = aoa_likelihood(gc.y_tilde, psi, gc.alpha_hat, sigma2, grid, gc.degraded);
        }
        if (!ok) continue;
        const ForwardBackwardResult fb = forward_backward(lik, fwd, bwd, grid);
        for (int k = 0; k < 4; ++k) {
            err_ml += std::abs(estimate_aoa(lik[k], grid) - truth[k]);
            err_gmp += std::abs(estimate_aoa(fb.combined[k], grid) - truth[k]);
            ++count;
        }
    }
    CHECK(err_gmp / count <= err_ml / count);
}
