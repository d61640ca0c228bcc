#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lfr/errors.hpp"
#include "lfr/reflector.hpp"
#include "test_support.hpp"

using namespace lfr;
using lfr::testing::angle_between;
using lfr::testing::random_point;
using lfr::testing::random_unit;

namespace {

constexpr double kPi = std::numbers::pi;
const double kHalfRoot2 = std::sqrt(0.5);

ReflectorArray single_tile(const Vector3& at, const Vector3& normal = {1, 0, 0}) {
    return build_array(at, normal, 1, 1);
}

void expect_in_range(const ReflectorArray& a) {
    for (const Tile& t : a.tiles) {
        EXPECT_GE(t.theta, 0.0);
        EXPECT_LE(t.theta, kPi);
        EXPECT_GT(t.phi, -kPi);
        EXPECT_LE(t.phi, kPi);
    }
}

}  // namespace

// ---- simple ---------------------------------------------------------------------

TEST(Simple, QuarterTurnOnWallMount) {
    const ReflectorArray mounted = build_array({19.85, 18.5, 1.5}, {-1, 0, 0});
    const ReflectorArray s = configure_simple(mounted);
    const Vector3 n0 = s.tiles.front().normal();
    for (const Tile& t : s.tiles) {
        EXPECT_EQ(t.theta, s.tiles.front().theta);
        EXPECT_EQ(t.phi, s.tiles.front().phi);
    }
    EXPECT_NEAR(angle_between(n0, mounted.mounting_normal), kPi / 4, 1e-12);
    EXPECT_NEAR(n0.z, 0.0, 1e-15);
    EXPECT_TRUE(approx_equal(n0, {-kHalfRoot2, -kHalfRoot2, 0}, 1e-15));
    expect_in_range(s);
}

TEST(Simple, ZeroYawIsIdentity) {
    const ReflectorArray mounted = build_array({0, 0, 1.5}, {0, 1, 0});
    const ReflectorArray s = configure_simple(mounted, 0.0);
    for (std::size_t i = 0; i < s.tiles.size(); ++i) {
        EXPECT_EQ(s.tiles[i].theta, mounted.tiles[i].theta);
        EXPECT_EQ(s.tiles[i].phi, mounted.tiles[i].phi);
    }
}

TEST(Simple, YawComposes) {
    const ReflectorArray mounted = build_array({0, 0, 1.5}, {1, 0, 0});
    const ReflectorArray twice = configure_simple(configure_simple(mounted, kPi / 4), kPi / 4);
    const ReflectorArray once = configure_simple(mounted, kPi / 2);
    for (std::size_t i = 0; i < once.tiles.size(); ++i) {
        EXPECT_NEAR(twice.tiles[i].phi, once.tiles[i].phi, 1e-15);
        EXPECT_EQ(twice.tiles[i].theta, once.tiles[i].theta);
    }
}

TEST(Simple, ReapplyingFromMountingIsBitwiseStable) {
    std::mt19937_64 rng(5);
    const ReflectorArray mounted = build_array({0, 0, 1.5}, random_unit(rng));
    const ReflectorArray a = configure_simple(reset_to_mounting(mounted), 0.3);
    const ReflectorArray b = configure_simple(reset_to_mounting(configure_simple(a, 1.1)), 0.3);
    for (std::size_t i = 0; i < a.tiles.size(); ++i) {
        EXPECT_EQ(a.tiles[i].theta, b.tiles[i].theta);
        EXPECT_EQ(a.tiles[i].phi, b.tiles[i].phi);
    }
}

TEST(Simple, WrapsAzimuth) {
    const ReflectorArray mounted = build_array({0, 0, 1.5}, {-1, 0, 0});
    for (double yaw : {-7.0, -kPi, 0.5, kPi, 9.0}) expect_in_range(configure_simple(mounted, yaw));
}

// ---- beamfocus ------------------------------------------------------------------

TEST(Beamfocus, SingleTileRightAngle) {
    const ReflectorArray a = configure_beamfocus(single_tile({0, 0, 0}), {10, 0, 0}, {0, 10, 0});
    EXPECT_TRUE(approx_equal(a.tiles[0].normal(), {kHalfRoot2, kHalfRoot2, 0}, 1e-15));
    EXPECT_NEAR(a.tiles[0].theta, kPi / 2, 1e-15);
    EXPECT_NEAR(a.tiles[0].phi, kPi / 4, 1e-15);
}

TEST(Beamfocus, Retroreflection) {
    const ReflectorArray a = configure_beamfocus(single_tile({0, 0, 0}), {0, 0, 4}, {0, 0, 4});
    EXPECT_EQ(a.tiles[0].theta, 0.0);
    EXPECT_TRUE(approx_equal(a.tiles[0].normal(), {0, 0, 1}, 0.0));
}

TEST(Beamfocus, DegenerateCarriesTileIndex) {
    const ReflectorArray arr = build_array({0, 0, 0}, {1, 0, 0}, 1, 3);
    // AP and UE on opposite sides of tile 2 along the column axis.
    const Vector3 t2 = arr.tiles[2].center;
    const Vector3 axis = arr.column_axis();
    try {
        configure_beamfocus(arr, t2 + 5.0 * axis, t2 - 3.0 * axis);
        FAIL() << "expected DegenerateBisector";
    } catch (const DegenerateBisector& e) {
        ASSERT_TRUE(e.tile_index.has_value());
        // Tiles 0 and 1 lie between the endpoints too; the first failing tile is reported.
        EXPECT_EQ(*e.tile_index, 0u);
    }
    EXPECT_THROW(configure_beamfocus(arr, arr.tiles[1].center, {5, 5, 5}), CoincidentPoint);
}

TEST(Beamfocus, SeventyTilesHitEveryUe) {
    for (const Scene& s : {build_hallway_L(), build_hallway_T()}) {
        for (const Vector3& ue : s.ue_positions) {
            const ReflectorArray a = configure_beamfocus(s.arrays[0], s.ap, ue);
            ASSERT_EQ(a.tiles.size(), 70u);
            for (const Tile& t : a.tiles) {
                EXPECT_LT(specular_miss_distance(t, s.ap, ue), 1e-6);
                EXPECT_TRUE(approx_equal(t.normal(), bisector_normal(t.center, s.ap, ue), 1e-12));
            }
            expect_in_range(a);
        }
    }
}

TEST(Beamfocus, DistinctOrientations) {
    const Scene s = build_hallway_L();
    const ReflectorArray a = configure_beamfocus(s.arrays[0], s.ap, s.ue_positions[2]);
    for (std::size_t i = 0; i < a.tiles.size(); ++i) {
        for (std::size_t j = i + 1; j < a.tiles.size(); ++j) {
            EXPECT_FALSE(a.tiles[i].theta == a.tiles[j].theta && a.tiles[i].phi == a.tiles[j].phi);
        }
    }
}

TEST(BeamfocusProperty, RandomGeometry) {
    std::mt19937_64 rng(0xBEA);
    for (int i = 0; i < 200; ++i) {
        const ReflectorArray arr = build_array(random_point(rng, 5.0), random_unit(rng));
        const Vector3 ap = random_point(rng, 30.0), ue = random_point(rng, 30.0);
        const ReflectorArray a = configure_beamfocus(arr, ap, ue);
        for (const Tile& t : a.tiles) EXPECT_LT(specular_miss_distance(t, ap, ue), 1e-6);
        expect_in_range(a);
    }
}

// ---- chained --------------------------------------------------------------------

TEST(Chained, RightAngleExample) {
    const auto [a, b] = configure_chained(single_tile({5, 0, 0}), single_tile({5, 5, 0}), {0, 0, 0}, {0, 5, 0});
    EXPECT_TRUE(approx_equal(a.tiles[0].normal(), {-kHalfRoot2, kHalfRoot2, 0}, 1e-15));
    EXPECT_TRUE(approx_equal(b.tiles[0].normal(), {-kHalfRoot2, -kHalfRoot2, 0}, 1e-15));
    EXPECT_LT(chained_miss_distance(a.tiles[0], b.tiles[0], {0, 0, 0}, {0, 5, 0}), 1e-12);
}

TEST(Chained, CollinearIsRetroreflective) {
    // ap and A2 on the same side of A1; A1 and ue on the same side of A2.
    const auto [a, b] = configure_chained(single_tile({5, 0, 0}), single_tile({0, 0, 0}), {2, 0, 0}, {3, 0, 0});
    EXPECT_TRUE(approx_equal(a.tiles[0].normal(), {-1, 0, 0}, 1e-15));
    EXPECT_TRUE(approx_equal(b.tiles[0].normal(), {1, 0, 0}, 1e-15));
}

TEST(Chained, SeventyPairsOnTHallway) {
    const Scene s = build_hallway_T();
    for (const Vector3& ue : s.ue_positions) {
        const auto [a, b] = configure_chained(s.arrays[0], s.arrays[1], s.ap, ue, s.surfaces);
        ASSERT_EQ(a.tiles.size(), 70u);
        for (std::size_t i = 0; i < a.tiles.size(); ++i) {
            EXPECT_LT(chained_miss_distance(a.tiles[i], b.tiles[i], s.ap, ue), 1e-6);
            EXPECT_TRUE(approx_equal(a.tiles[i].normal(), bisector_normal(a.tiles[i].center, s.ap, b.tiles[i].center),
                                     1e-12));
            EXPECT_TRUE(
                approx_equal(b.tiles[i].normal(), bisector_normal(b.tiles[i].center, a.tiles[i].center, ue), 1e-12));
        }
        expect_in_range(a);
        expect_in_range(b);
    }
}

TEST(Chained, Errors) {
    const ReflectorArray big = build_array({5, 0, 0}, {-1, 0, 0});
    const ReflectorArray small = build_array({5, 5, 0}, {-1, 0, 0}, 2, 2);
    EXPECT_THROW(configure_chained(big, small, {0, 0, 0}, {0, 5, 0}), TileCountMismatch);

    const Rect3 wall{{4, 2, -5}, {2, 0, 0}, {0, 0, 10}, "concrete"};
    const Rect3 obstacles[] = {wall};
    try {
        configure_chained(single_tile({5, 0, 0}), single_tile({5, 5, 0}), {0, 0, 0}, {0, 5, 0}, obstacles);
        FAIL() << "expected OccludedPair";
    } catch (const OccludedPair& e) {
        EXPECT_EQ(e.pair_index, 0u);
    }
    EXPECT_THROW(configure_chained(single_tile({5, 0, 0}), single_tile({0, 0, 0}), {10, 0, 0}, {1, 1, 1}),
                 DegenerateBisector);
}

TEST(ChainedProperty, RandomGeometry) {
    std::mt19937_64 rng(0xC4A1);
    for (int i = 0; i < 100; ++i) {
        const ReflectorArray a0 = build_array(random_point(rng, 5.0), random_unit(rng), 3, 4);
        const ReflectorArray b0 = build_array(random_point(rng, 5.0) + Vector3{12, 0, 0}, random_unit(rng), 3, 4);
        const Vector3 ap = random_point(rng, 30.0), ue = random_point(rng, 30.0);
        const auto [a, b] = configure_chained(a0, b0, ap, ue);
        for (std::size_t k = 0; k < a.tiles.size(); ++k) {
            EXPECT_LT(chained_miss_distance(a.tiles[k], b.tiles[k], ap, ue), 1e-6);
        }
    }
}

// ---- scene level ----------------------------------------------------------------

TEST(ConfigureScene, Modes) {
    const Scene l = build_hallway_L();
    EXPECT_TRUE(configure_scene(l, ReflectorMode::none).arrays.empty());
    const Scene simple = configure_scene(configure_scene(l, ReflectorMode::beamfocus, 4), ReflectorMode::simple);
    EXPECT_TRUE(scenes_equal(simple, configure_scene(l, ReflectorMode::simple), 0.0));
    const Scene focused = configure_scene(l, ReflectorMode::beamfocus, 9);
    for (const Tile& t : focused.arrays[0].tiles) EXPECT_LT(specular_miss_distance(t, l.ap, l.ue_positions[8]), 1e-6);

    const Scene t = build_hallway_T();
    const Scene chained = configure_scene(t, ReflectorMode::chained, 5);
    EXPECT_LT(chained_miss_distance(chained.arrays[0].tiles[33], chained.arrays[1].tiles[33], t.ap, t.ue_positions[4]),
              1e-6);
}

TEST(ConfigureScene, Errors) {
    const Scene l = build_hallway_L();
    EXPECT_THROW(configure_scene(l, ReflectorMode::chained), ParamError);
    EXPECT_THROW(configure_scene(l, ReflectorMode::beamfocus, 0), ParamError);
    EXPECT_THROW(configure_scene(l, ReflectorMode::beamfocus, 10), ParamError);
    EXPECT_THROW(configure_scene(configure_scene(l, ReflectorMode::none), ReflectorMode::beamfocus), ParamError);
}

TEST(ConfigureScene, ModeNames) {
    for (const auto m : {ReflectorMode::none, ReflectorMode::simple, ReflectorMode::beamfocus, ReflectorMode::chained}) {
        EXPECT_EQ(parse_reflector_mode(to_string(m)), m);
    }
    EXPECT_THROW(parse_reflector_mode("focus"), ParamError);
}
