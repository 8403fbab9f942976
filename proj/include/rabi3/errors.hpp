#pragma once

#include <stdexcept>
#include <string>

namespace rabi3 {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter or grid validation failed.
struct InvalidParams : Error {
    explicit InvalidParams(const std::string& what) : Error("invalid params: " + what) {}
};

// Two states with different truncations were combined.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

// A coherent amplitude needs more Fock levels than the truncation provides.
struct TailTooHeavy : Error {
    explicit TailTooHeavy(const std::string& what) : Error("coherent tail too heavy: " + what) {}
};

// The dense eigensolver failed to converge.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("eigensolver did not converge: " + what) {}
};

// Cutoff doubling hit the hard ceiling before reaching the tolerance.
struct CutoffCeiling : Error {
    explicit CutoffCeiling(const std::string& what) : Error("cutoff ceiling reached: " + what) {}
};

// The renormalized level splitting B = wa*exp(-chi^2/2) vanished; the
// closed-form eigensystem divides by B.
struct DegenerateB : Error {
    explicit DegenerateB(const std::string& what) : Error("degenerate level splitting: " + what) {}
};

// The decoupling-condition root finder found no sign change in its bracket.
struct NoRootInBracket : Error {
    explicit NoRootInBracket(const std::string& what) : Error("no root in bracket: " + what) {}
};

// Entanglement never crossed the death threshold on the scanned interval.
struct NoDeathFound : Error {
    explicit NoDeathFound(const std::string& what) : Error("no entanglement death found: " + what) {}
};

// A matrix handed to the X-state entanglement formula is not X-shaped.
struct NotXForm : Error {
    explicit NotXForm(const std::string& what) : Error("not an X-form matrix: " + what) {}
};

// A series writer received no data.
struct EmptySeries : Error {
    explicit EmptySeries(const std::string& what) : Error("empty series: " + what) {}
};

} // namespace rabi3
