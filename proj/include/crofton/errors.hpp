#pragma once

#include <stdexcept>
#include <string>

namespace crofton {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

struct NonUnitDirection : Error {
    explicit NonUnitDirection(const std::string& msg) : Error(msg) {}
};

struct PointInsideBody : Error {
    explicit PointInsideBody(const std::string& msg) : Error(msg) {}
};

// Planar analogue of PointInsideBody (visual angle from an interior point).
struct PointInside : Error {
    explicit PointInside(const std::string& msg) : Error(msg) {}
};

struct LineMeetsBody : Error {
    explicit LineMeetsBody(const std::string& msg) : Error(msg) {}
};

struct AxisInsideCone : Error {
    explicit AxisInsideCone(const std::string& msg) : Error(msg) {}
};

struct DegenerateProjection : Error {
    explicit DegenerateProjection(const std::string& msg) : Error(msg) {}
};

struct NotInHemisphere : Error {
    explicit NotInHemisphere(const std::string& msg) : Error(msg) {}
};

struct TooCoarse : Error {
    explicit TooCoarse(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct TailDominates : Error {
    explicit TailDominates(const std::string& msg) : Error(msg) {}
};

}  // namespace crofton
