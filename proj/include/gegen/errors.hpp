#pragma once

#include <stdexcept>
#include <string>

namespace gegen {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits on a pole of Γ (or of a Γ-ratio / ₂F₁ denominator).
class pole_error : public error {
public:
    using error::error;
};

/// A real argument on a branch cut was given without choosing a side.
class branch_error : public error {
public:
    using error::error;
};

/// Argument outside the mathematical domain of the function (e.g. w = 0 for Y, K).
class domain_error : public error {
public:
    using error::error;
};

/// No convergent representation covers the requested point.
class route_error : public error {
public:
    using error::error;
};

/// An approximation was called outside the range where its accuracy contract holds.
class accuracy_error : public error {
public:
    using error::error;
};

/// An asymptotic evaluator was called outside its validity region.
class regime_error : public error {
public:
    using error::error;
};

} // namespace gegen
