#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lfr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- geometry -------------------------------------------------------------

class GeometryError : public Error {
public:
    using Error::Error;
};

class ZeroVector : public GeometryError {
public:
    ZeroVector() : GeometryError("zero-length vector has no direction") {}
};

class CoincidentPoint : public GeometryError {
public:
    CoincidentPoint() : GeometryError("bisector endpoints coincide with the pivot point") {}
};

/// The incoming and outgoing directions are exactly opposite, so their
/// half-sum vanishes. Carries the tile index when raised while configuring
/// an array.
class DegenerateBisector : public GeometryError {
public:
    DegenerateBisector() : GeometryError("degenerate bisector: directions are opposite") {}
    explicit DegenerateBisector(std::size_t tile)
        : GeometryError("degenerate bisector at tile " + std::to_string(tile)), tile_index(tile) {}

    std::optional<std::size_t> tile_index;
};

// ---- materials ------------------------------------------------------------

class FrequencyOutOfRange : public Error {
public:
    FrequencyOutOfRange(const std::string& material, double f_ghz, double lo, double hi)
        : Error("frequency " + std::to_string(f_ghz) + " GHz outside [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "] GHz for material '" + material + "'") {}
};

// ---- scene ----------------------------------------------------------------

/// Missing or ill-typed field; the message starts with the JSON path.
class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what) : Error(path + ": " + what), path(path) {}
    std::string path;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

// ---- reflector control ----------------------------------------------------

class TileCountMismatch : public Error {
public:
    TileCountMismatch(std::size_t a, std::size_t b)
        : Error("chained arrays differ in tile count: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class OccludedPair : public Error {
public:
    explicit OccludedPair(std::size_t pair)
        : Error("tile pair " + std::to_string(pair) + " is occluded"), pair_index(pair) {}
    std::size_t pair_index;
};

}  // namespace lfr
