#ifndef SUSYDIRAC_ERRORS_HPP
#define SUSYDIRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace susydirac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// core
class NonConstantV : public Error { using Error::Error; };

// special_functions
class PoleAtNonPositiveInteger : public Error { using Error::Error; };
class ConvergenceFailure : public Error { using Error::Error; };

// witten
class GridTooCoarse : public Error { using Error::Error; };
class BoxTooSmall : public Error { using Error::Error; };
class NotNormalizable : public Error { using Error::Error; };
class Indeterminate : public Error { using Error::Error; };

// dirac
class NegativeEpsilon : public Error { using Error::Error; };
class MissingPartner : public Error { using Error::Error; };
class IncompleteBasis : public Error { using Error::Error; };
class InvalidLevel : public Error { using Error::Error; };

// resolvent
class NearPole : public Error { using Error::Error; };
class MethodUnavailable : public Error { using Error::Error; };
class OrderOutOfRange : public Error { using Error::Error; };

// quasiclassical
class NotConfining : public Error { using Error::Error; };
class QuadratureFailure : public Error { using Error::Error; };
class RegimeMismatch : public Error { using Error::Error; };
class RootNotBracketed : public Error { using Error::Error; };

} // namespace susydirac

#endif
