#pragma once

#include <span>
#include <string>
#include <utility>

#include "lfr/scene.hpp"

namespace lfr {

/// Returns the array with every tile flush with its mounting plane.
ReflectorArray reset_to_mounting(const ReflectorArray& array);

/// Rotates every tile's current orientation by `yaw` about the world z-axis.
/// Applied to a freshly mounted array this gives identical tiles turned
/// `yaw` away from the mounting normal.
ReflectorArray configure_simple(const ReflectorArray& array, double yaw = 0.78539816339744830962);

/// Points every tile's normal along the bisector of its directions to `ap`
/// and `ue`, so that ap -> tile center -> ue is specular for each tile.
/// Throws DegenerateBisector (with tile index) or CoincidentPoint.
ReflectorArray configure_beamfocus(const ReflectorArray& array, const Vector3& ap, const Vector3& ue);

/// Two-bounce focusing with index-to-index tile pairing: tile i of `first`
/// mirrors ap onto tile i of `second`, which mirrors it onto `ue`.
/// `obstacles` are checked for blocking each tile-to-tile segment.
/// Throws TileCountMismatch, OccludedPair or DegenerateBisector.
std::pair<ReflectorArray, ReflectorArray> configure_chained(const ReflectorArray& first, const ReflectorArray& second,
                                                            const Vector3& ap, const Vector3& ue,
                                                            std::span<const Rect3> obstacles = {});

/// Point where the ray from `from` through tile `tile`'s center, reflected
/// off the tile plane, comes closest to `target`; returns that distance.
double specular_miss_distance(const Tile& tile, const Vector3& from, const Vector3& target);

/// Same for a two-tile chain from -> a -> b -> target.
double chained_miss_distance(const Tile& a, const Tile& b, const Vector3& from, const Vector3& target);

enum class ReflectorMode { none, simple, beamfocus, chained };

std::string to_string(ReflectorMode m);
/// Accepts "none", "simple", "beamfocus", "chained"; throws ParamError otherwise.
ReflectorMode parse_reflector_mode(const std::string& s);

/// Scene-level configuration used by the CLI and the RSS sweep.
///  - none: removes every array (the no-reflector baseline)
///  - simple: resets each array to its mounting state, then turns it by `yaw`
///  - beamfocus: focuses each array independently on UE `ue_number`
///  - chained: focuses arrays 0 and 1 as a two-bounce chain onto the UE,
///    checking tile pairs against the scene surfaces
/// ue_number is 1-based. Throws ParamError on arity or index mismatch.
Scene configure_scene(const Scene& scene, ReflectorMode mode, int ue_number = 1,
                      double yaw = 0.78539816339744830962);

}  // namespace lfr
