#pragma once

#include <stdexcept>
#include <string>

namespace gwcrc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GWCRC_ERROR(Name)                                      \
    struct Name : Error {                                      \
        explicit Name(const std::string& msg = #Name)          \
            : Error(std::string(#Name) + ": " + msg) {}        \
    }

GWCRC_ERROR(NonDivisibleConductor);
GWCRC_ERROR(NonzeroConstantTerm);
GWCRC_ERROR(BadConstantTerm);
GWCRC_ERROR(NonInvertibleL);
GWCRC_ERROR(NoPolynomialFit);
GWCRC_ERROR(IndexOutOfRange);
GWCRC_ERROR(DivisionByZeroSeries);
GWCRC_ERROR(DivisibilityViolation);
GWCRC_ERROR(ClosureViolation);
GWCRC_ERROR(ConstantMismatch);
GWCRC_ERROR(UnstableInput);
GWCRC_ERROR(UnstableRange);
GWCRC_ERROR(AskLargerKmax);
GWCRC_ERROR(InvalidRho);
GWCRC_ERROR(ResidualNonzero);

#undef GWCRC_ERROR

}  // namespace gwcrc
