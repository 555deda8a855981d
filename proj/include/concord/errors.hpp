#pragma once

#include <stdexcept>
#include <string>

namespace concord {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration: invalid parameter ranges, malformed requests.
struct ConfigError : Error {
    using Error::Error;
};

// Input file could not be parsed; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Rows in an outcome/type table do not line up with the graph's vertices.
struct AlignmentError : Error {
    using Error::Error;
};

// Graph construction violations.
struct GraphError : Error {
    using Error::Error;
};
struct SelfLoopError : GraphError {
    using GraphError::GraphError;
};
struct EmptyGraphError : GraphError {
    using GraphError::GraphError;
};
struct CompleteGraphError : GraphError {
    using GraphError::GraphError;
};
// A vertex adjacent to every other vertex: the non-neighbor average has an
// empty index set, so the estimators are undefined.
struct SaturatedVertexError : GraphError {
    using GraphError::GraphError;
};

struct IndexError : Error {
    using Error::Error;
};

// Inference cannot proceed (e.g. every permutation draw was degenerate).
struct InferenceError : Error {
    using Error::Error;
};

// Scale estimates collapsed to zero; the statistic cannot be studentized.
struct DegenerateVarianceError : InferenceError {
    using InferenceError::InferenceError;
};

// Homophily requested for a type held by all vertices or by none.
struct DegenerateTypeError : InferenceError {
    using InferenceError::InferenceError;
};

// No vertex of the requested type has any edge.
struct NoTypedEdgesError : InferenceError {
    using InferenceError::InferenceError;
};

} // namespace concord
