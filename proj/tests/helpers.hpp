#pragma once

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "incidence/incidence.hpp"

namespace test {

using namespace incidence;

inline const RingDescriptor Q = RingDescriptor::rationals();
inline const RingDescriptor Z = RingDescriptor::integers();
inline const RingDescriptor F2 = RingDescriptor::prime_field(2);
inline const RingDescriptor F3 = RingDescriptor::prime_field(3);
inline const RingDescriptor F5 = RingDescriptor::prime_field(5);

inline Scalar q(long num, long den = 1) { return Scalar(Q, mpq_class(num, den)); }

inline PreorderPtr chain2() { return parse_preorder("elements: 1 2\nrelations: 1<2\n"); }
inline PreorderPtr chain3() { return parse_preorder("elements: 1 2 3\nrelations: 1<2 2<3\n"); }
inline PreorderPtr crown() { return parse_preorder("elements: 1 2 3 4\nrelations: 1<3 1<4 2<3 2<4\n"); }
inline PreorderPtr full2() { return parse_preorder("elements: a b\nrelations: a<b b<a\n"); }

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed + salt); }

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::parse_error;
}

}  // namespace test

template <>
struct Catch::StringMaker<incidence::Scalar> {
  static std::string convert(const incidence::Scalar& s) { return s.to_string() + " in " + s.ring().to_string(); }
};

template <>
struct Catch::StringMaker<incidence::IncidenceElement> {
  static std::string convert(const incidence::IncidenceElement& f) { return f.to_string(); }
};

template <>
struct Catch::StringMaker<incidence::LinearOperator> {
  static std::string convert(const incidence::LinearOperator& d) { return incidence::operator_record(d).dump(); }
};
