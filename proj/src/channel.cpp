// srlink - short-range mmWave link configuration simulator
// Copyright (C) 2026 srlink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "srlink/channel.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "srlink/fft.hpp"
#include "srlink/linalg.hpp"

namespace srlink {

RoomSpec RoomSpec::los_only() {
    RoomSpec r;
    r.refl_side = r.refl_ceiling = r.refl_floor = cd{0.0, 0.0};
    return r;
}

CMat los_channel(const DistanceMatrix& distances, double wavelength) {
    if (wavelength <= 0.0) throw std::invalid_argument("los_channel: wavelength must be positive");
    CMat h(distances.d.rows, distances.d.cols);
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) {
            const double d = distances.d(i, j);
            if (d <= 0.0) throw std::invalid_argument("los_channel: nonpositive distance");
            const double amp = wavelength / (4.0 * M_PI * d);
            const double phase = -2.0 * M_PI * d / wavelength;
            h(i, j) += amp * cd{std::cos(phase), std::sin(phase)};
        }
    return h;
}

namespace {

using Vec3 = std::array<double, 3>;

struct Ray {
    Vec3 (*mirror)(const Vec3&, const RoomSpec&);
    cd coeff;
};

bool inside_room(const Vec3& p, const RoomSpec& r) {
    return p[0] >= 0.0 && p[0] <= r.size_x && p[1] >= 0.0 && p[1] <= r.size_y && p[2] >= 0.0 &&
           p[2] <= r.height;
}

double dist3(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Mirror images across the reflecting surfaces. Two-bounce images across the
// parallel side walls depend on the bounce order (two distinct rays); a side
// wall combined with the ceiling commutes (one ray each).
Vec3 m_x0(const Vec3& p, const RoomSpec&) { return {-p[0], p[1], p[2]}; }
Vec3 m_x1(const Vec3& p, const RoomSpec& r) { return {2.0 * r.size_x - p[0], p[1], p[2]}; }
Vec3 m_ceil(const Vec3& p, const RoomSpec& r) { return {p[0], p[1], 2.0 * r.height - p[2]}; }
Vec3 m_floor(const Vec3& p, const RoomSpec&) { return {p[0], p[1], -p[2]}; }
Vec3 m_x0_x1(const Vec3& p, const RoomSpec& r) { return {2.0 * r.size_x + p[0], p[1], p[2]}; }
Vec3 m_x1_x0(const Vec3& p, const RoomSpec& r) { return {p[0] - 2.0 * r.size_x, p[1], p[2]}; }
Vec3 m_ceil_x0(const Vec3& p, const RoomSpec& r) { return {-p[0], p[1], 2.0 * r.height - p[2]}; }
Vec3 m_ceil_x1(const Vec3& p, const RoomSpec& r) {
    return {2.0 * r.size_x - p[0], p[1], 2.0 * r.height - p[2]};
}
Vec3 m_floor_x0(const Vec3& p, const RoomSpec&) { return {-p[0], p[1], -p[2]}; }
Vec3 m_floor_x1(const Vec3& p, const RoomSpec& r) {
    return {2.0 * r.size_x - p[0], p[1], -p[2]};
}
Vec3 m_floor_ceil(const Vec3& p, const RoomSpec& r) { return {p[0], p[1], 2.0 * r.height + p[2]}; }
Vec3 m_ceil_floor(const Vec3& p, const RoomSpec& r) { return {p[0], p[1], p[2] - 2.0 * r.height}; }

std::vector<Ray> reflection_rays(const RoomSpec& r) {
    std::vector<Ray> rays;
    rays.push_back({m_x0, r.refl_side});
    rays.push_back({m_x1, r.refl_side});
    rays.push_back({m_ceil, r.refl_ceiling});
    rays.push_back({m_x0_x1, r.refl_side * r.refl_side});
    rays.push_back({m_x1_x0, r.refl_side * r.refl_side});
    rays.push_back({m_ceil_x0, r.refl_ceiling * r.refl_side});
    rays.push_back({m_ceil_x1, r.refl_ceiling * r.refl_side});
    if (r.floor_enabled) {
        rays.push_back({m_floor, r.refl_floor});
        rays.push_back({m_floor_x0, r.refl_floor * r.refl_side});
        rays.push_back({m_floor_x1, r.refl_floor * r.refl_side});
        rays.push_back({m_floor_ceil, r.refl_floor * r.refl_ceiling});
        rays.push_back({m_ceil_floor, r.refl_ceiling * r.refl_floor});
    }
    return rays;
}

Vec3 to_room(const Vec2& local, const RoomSpec& r) {
    // AP-local frame: array along x, normal along +y (into the room)
    return {r.size_x / 2.0 + local[0], r.size_y - local[1], r.ap_height};
}

}  // namespace

ChannelSet synthesize_channel(const ApLayout& ap, const StaPlacement& sta, const RoomSpec& room) {
    if (std::abs(room.refl_side) > 1.0 || std::abs(room.refl_ceiling) > 1.0 ||
        std::abs(room.refl_floor) > 1.0)
        throw std::invalid_argument("synthesize_channel: |reflection coefficient| must be <= 1");

    std::vector<Vec3> ap3, sta3;
    ap3.reserve(ap.element_positions.size());
    sta3.reserve(sta.element_positions.size());
    for (const auto& p : ap.element_positions) ap3.push_back(to_room(p, room));
    for (const auto& p : sta.element_positions) sta3.push_back(to_room(p, room));
    for (const auto& p : ap3)
        if (!inside_room(p, room))
            throw std::invalid_argument("synthesize_channel: AP array not inside the room");
    for (const auto& p : sta3)
        if (!inside_room(p, room))
            throw std::invalid_argument("synthesize_channel: STA array not inside the room");

    ChannelSet ch;
    ch.wavelength = ap.wavelength;
    ch.n = ap.n_per_subarray;
    ch.n_rf = ap.n_subarrays;

    // direct ray from the planar coordinates (identical distances, and keeps
    // the zero-reflection case exactly equal to los_channel)
    ch.h = los_channel(pairwise_distances(ap, sta), ap.wavelength);

    const auto rays = reflection_rays(room);
    for (const Ray& ray : rays) {
        if (ray.coeff == cd{0.0, 0.0}) continue;
        for (int j = 0; j < static_cast<int>(sta3.size()); ++j) {
            const Vec3 image = ray.mirror(sta3[j], room);
            for (int i = 0; i < static_cast<int>(ap3.size()); ++i) {
                const double len = dist3(ap3[i], image);
                const double amp = ap.wavelength / (4.0 * M_PI * len);
                const double phase = -2.0 * M_PI * len / ap.wavelength;
                ch.h(i, j) += ray.coeff * amp * cd{std::cos(phase), std::sin(phase)};
            }
        }
    }

    ch.subchannels.reserve(ch.n_rf);
    ch.beamspace.reserve(ch.n_rf);
    for (int k = 0; k < ch.n_rf; ++k) {
        CMat hk = block_rows(ch.h, k * ch.n, ch.n);
        ch.beamspace.push_back(beamspace(hk));
        ch.subchannels.push_back(std::move(hk));
    }
    return ch;
}

EnergyMetrics energy_metrics(const ChannelSet& channel) {
    const double fro2 = frobenius_norm(channel.h);
    if (fro2 == 0.0) throw std::invalid_argument("energy_metrics: all-zero channel");
    EnergyMetrics em;
    const double s = spectral_norm(channel.h);
    em.full = s * s / (fro2 * fro2);
    double acc = 0.0;
    for (const CMat& hk : channel.subchannels) {
        const double sk = spectral_norm(hk);
        const double fk = frobenius_norm(hk);
        acc += sk * sk / (fk * fk);
    }
    em.subarrays = acc / channel.n_rf;
    return em;
}

CMat beamspace(const CMat& subchannel) {
    if (subchannel.rows != subchannel.cols)
        throw std::invalid_argument("beamspace: subchannel must be square");
    CMat x = subchannel;
    fft2_unitary(x, true);
    return x;
}

CMat beamspace_to_antenna(const CMat& x) {
    CMat h = x;
    fft2_unitary(h, false);
    return h;
}

void dump_channel(const ChannelSet& channel, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_channel: cannot open '" + path + "'");
    out << "srlink-channel v1\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", channel.n, channel.n_rf, channel.wavelength);
    out << buf;
    for (int r = 0; r < channel.h.rows; ++r) {
        for (int c = 0; c < channel.h.cols; ++c) {
            const cd v = channel.h(r, c);
            std::snprintf(buf, sizeof buf, "%.17g %.17g", v.real(), v.imag());
            out << buf << (c + 1 < channel.h.cols ? " " : "");
        }
        out << "\n";
    }
}

ChannelSet load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_channel: cannot open '" + path + "'");
    std::string magic, version;
    in >> magic >> version;
    if (magic != "srlink-channel" || version != "v1")
        throw std::runtime_error("load_channel: bad header in '" + path + "'");
    ChannelSet ch;
    in >> ch.n >> ch.n_rf >> ch.wavelength;
    if (!in || ch.n < 1 || ch.n_rf < 1) throw std::runtime_error("load_channel: bad dimensions");
    ch.h = CMat(ch.n * ch.n_rf, ch.n);
    for (size_t j = 0; j < ch.h.size(); ++j) {
        double re, im;
        in >> re >> im;
        if (!in) throw std::runtime_error("load_channel: truncated matrix data");
        ch.h.a[j] = cd{re, im};
    }
    for (int k = 0; k < ch.n_rf; ++k) {
        CMat hk = block_rows(ch.h, k * ch.n, ch.n);
        ch.beamspace.push_back(beamspace(hk));
        ch.subchannels.push_back(std::move(hk));
    }
    return ch;
}

}  // namespace srlink
