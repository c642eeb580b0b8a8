#include "weingarten/errors.hpp"

namespace weingarten {

AdmissibilityError::AdmissibilityError(const std::string& what, double margin)
    : Error(what), margin_(margin) {}

DomainError::DomainError(const std::string& what, double radius)
    : Error(what), radius_(radius) {}

}  // namespace weingarten
