#pragma once

#include <cstdint>
#include <cmath>

#include "crofton/vec.hpp"

namespace crofton {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded from (seed, stream). Every Monte Carlo chunk gets its
// own stream index, so the sample sequence is a pure function of
// (seed, stream) and independent of scheduling.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL));
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform on the unit sphere.
    Vec3 unit_vector() {
        double z = 1.0 - 2.0 * uniform();
        double phi = 2.0 * M_PI * uniform();
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {rho * std::cos(phi), rho * std::sin(phi), z};
    }

    // Uniform angle on the unit circle, in [0, 2*pi).
    double circle_angle() { return 2.0 * M_PI * uniform(); }

    // Uniform in the disc of radius R.
    Vec2 in_disc(double R) {
        double r = R * std::sqrt(uniform());
        double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Uniform in the annulus a <= |x| <= b.
    Vec2 in_annulus(double a, double b) {
        double r = std::sqrt(uniform(a * a, b * b));
        double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Uniform in the spherical shell a <= |x| <= b.
    Vec3 in_shell(double a, double b) {
        double r = std::cbrt(uniform(a * a * a, b * b * b));
        return unit_vector() * r;
    }

    // Uniform random rotation (quaternion method).
    Mat3 rotation() {
        double u1 = uniform(), u2 = uniform(), u3 = uniform();
        double a = std::sqrt(1 - u1), b = std::sqrt(u1);
        double qx = a * std::sin(2 * M_PI * u2), qy = a * std::cos(2 * M_PI * u2);
        double qz = b * std::sin(2 * M_PI * u3), qw = b * std::cos(2 * M_PI * u3);
        Mat3 r;
        r.m = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw),     2 * (qx * qz + qy * qw),
               2 * (qx * qy + qz * qw),     1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw),
               2 * (qx * qz - qy * qw),     2 * (qy * qz + qx * qw),     1 - 2 * (qx * qx + qy * qy)};
        return r;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace crofton
