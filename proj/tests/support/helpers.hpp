#pragma once

#include <cmath>
#include <random>

#include <doctest.h>

#include "normgen/corpus.hpp"
#include "normgen/spectral.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs(static_cast<double>(a) - static_cast<double>(b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs(static_cast<double>(a) - static_cast<double>(b)) <= (tol))

namespace testing {

inline constexpr double kPi = 3.14159265358979323846;

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline normgen::CircleSpectrum spec(std::vector<double> a) { return normgen::CircleSpectrum::from_angles(std::move(a)); }

}  // namespace testing
