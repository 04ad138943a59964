#ifndef OVERPART_BIGINT_HPP
#define OVERPART_BIGINT_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace overpart {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

} // namespace overpart

#endif
