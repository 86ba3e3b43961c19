// mpfr_eigen.hpp: Eigen scalar traits for a runtime-precision MPFR float.
//
// Boost's own Eigen interop (1.74) predates Eigen 3.4 and lacks
// NumTraits::infinity / quiet_NaN, so the traits are spelled out here for the
// expression-template-free number type.

#pragma once

#include <limits>

#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

namespace ptdeph::detail {

using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

/// Sets the default MPFR precision (decimal digits) for the current scope.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits10) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10);
    }
    ~ScopedPrecision() { BigFloat::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

}  // namespace ptdeph::detail

namespace Eigen {

template <>
struct NumTraits<ptdeph::detail::BigFloat> : GenericNumTraits<ptdeph::detail::BigFloat> {
    using Self = ptdeph::detail::BigFloat;
    using Real = Self;
    using NonInteger = Self;
    using Nested = Self;
    using Literal = Self;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 20,
        MulCost = 40
    };
    static Real epsilon() { return std::numeric_limits<Self>::epsilon(); }
    static Real dummy_precision() { return epsilon() * 1000; }
    static Real highest() { return (std::numeric_limits<Self>::max)(); }
    static Real lowest() { return (std::numeric_limits<Self>::lowest)(); }
    static Real infinity() { return std::numeric_limits<Self>::infinity(); }
    static Real quiet_NaN() { return std::numeric_limits<Self>::quiet_NaN(); }
    static int digits10() { return static_cast<int>(Self::default_precision()); }
};

}  // namespace Eigen
