#pragma once

#include <stdexcept>
#include <string>

namespace conical {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// specfun
class PoleError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class NoConvergence : public Error { using Error::Error; };
class DegenerateCase : public Error { using Error::Error; };

class CutError : public Error {
public:
    // which cut was hit: "[1,+inf)" or "(-inf,0]"
    CutError(const std::string& msg, std::string cut) : Error(msg), cut_(std::move(cut)) {}
    const std::string& cut() const noexcept { return cut_; }

private:
    std::string cut_;
};

// metric
class InadmissibleOrders : public Error { using Error::Error; };
class CuspUnsupported : public Error { using Error::Error; };
class NonPositiveDensity : public Error { using Error::Error; };
class StencilOutOfDomain : public Error { using Error::Error; };

// limits
class CaseInadmissible : public Error { using Error::Error; };
class NonMonotoneSequence : public Error { using Error::Error; };

} // namespace conical
