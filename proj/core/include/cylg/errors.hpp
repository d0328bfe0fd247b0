#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cylg {

// Shared failure vocabulary for the numeric and reconstruction layers.
enum class Err {
    None,
    NoStableFit,            // rationalization differs between the two precisions
    NonConvergent,          // tail bound not reachable at requested precision
    NoFit,                  // exact linear solve has no solution
    NonUniqueFit,           // exact linear solve underdetermined
    InconsistentSeeds,      // correlator recursion derives conflicting values
    Underdetermined,        // recursion cannot reach a requested correlator
    NegativePower,          // equivariant limit does not exist (pole at s=0)
    RationalityFailure,     // assembled coefficient is provably irrational
    FixtureMismatch,        // assembled coefficient disagrees with the fixture
    TruncationOverflow,     // descendent window too small for the requested flow
    BadInput,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::None: return "None";
        case Err::NoStableFit: return "NoStableFit";
        case Err::NonConvergent: return "NonConvergent";
        case Err::NoFit: return "NoFit";
        case Err::NonUniqueFit: return "NonUniqueFit";
        case Err::InconsistentSeeds: return "InconsistentSeeds";
        case Err::Underdetermined: return "Underdetermined";
        case Err::NegativePower: return "NegativePower";
        case Err::RationalityFailure: return "RationalityFailure";
        case Err::FixtureMismatch: return "FixtureMismatch";
        case Err::BadInput: return "BadInput";
    }
    return "?";
}

template <typename T>
struct Result {
    std::optional<T> value;
    Err err = Err::None;
    std::string detail;

    static Result ok(T v) { return Result{std::move(v), Err::None, {}}; }
    static Result fail(Err e, std::string d = {}) { return Result{std::nullopt, e, std::move(d)}; }

    bool has_value() const { return value.has_value(); }
    explicit operator bool() const { return has_value(); }
    const T& operator*() const {
        if (!value) throw std::runtime_error(std::string("Result: ") + err_name(err) + " " + detail);
        return *value;
    }
    const T* operator->() const { return &**this; }
};

}  // namespace cylg
