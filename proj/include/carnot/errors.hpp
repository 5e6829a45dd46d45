#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A generator coefficient monomial has the wrong dilation-weighted degree.
class HomogeneityViolation : public Error {
public:
    using Error::Error;
};

/// Iterated brackets up to the group's step fail to span R^n at the origin.
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// Analytic mode requested on a field without analytic partials.
class MissingPartials : public Error {
public:
    using Error::Error;
};

/// Adaptive finite-difference step collapsed to zero.
class FDStepUnderflow : public Error {
public:
    using Error::Error;
};

/// A point on the singular set {x' = 0} was passed where |x'| > 0 is required.
class SingularPoint : public Error {
public:
    using Error::Error;
};

/// An integrand evaluated to NaN/Inf at a quadrature node.
class SingularEvaluation : public Error {
public:
    using Error::Error;
};

/// An inequality-case hypothesis failed; the message names the hypothesis.
class ConstraintViolated : public Error {
public:
    using Error::Error;
};

/// The field's support does not avoid the singular tube.
class InadmissibleSupport : public Error {
public:
    using Error::Error;
};

}  // namespace carnot
