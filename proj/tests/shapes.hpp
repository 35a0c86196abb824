// Hand-built categories shared by the tests.

#ifndef POSCAT_TESTS_SHAPES_HPP
#define POSCAT_TESTS_SHAPES_HPP

#include "poscat/builder.hpp"

namespace shapes {

  // a -> b -> c, thin.
  inline poscat::FinPosCategory chain3() {
    return poscat::CategoryBuilder()
        .object("a")
        .object("b")
        .object("c")
        .morphism("f", "a", "b")
        .morphism("g", "b", "c")
        .morphism("gf", "a", "c")
        .compose("g", "f", "gf")
        .build();
  }

  // The poset {0,1}² as a thin category.
  inline poscat::FinPosCategory lattice2x2() {
    return poscat::CategoryBuilder()
        .object("00")
        .object("01")
        .object("10")
        .object("11")
        .morphism("u", "00", "01")
        .morphism("v", "00", "10")
        .morphism("s", "01", "11")
        .morphism("t", "10", "11")
        .morphism("d", "00", "11")
        .compose("s", "u", "d")
        .compose("t", "v", "d")
        .build();
  }

  // Two isomorphic objects.
  inline poscat::FinPosCategory iso2() {
    return poscat::CategoryBuilder()
        .object("a")
        .object("b")
        .morphism("i", "a", "b")
        .morphism("j", "b", "a")
        .compose("j", "i", "id_a")
        .compose("i", "j", "id_b")
        .build();
  }

  // Two parallel arrows a ⇉ b with f <= g.
  inline poscat::FinPosCategory ordered_pair() {
    return poscat::CategoryBuilder()
        .object("a")
        .object("b")
        .morphism("f", "a", "b")
        .morphism("g", "a", "b")
        .order("f", "g")
        .build();
  }

}  // namespace shapes

#endif  // POSCAT_TESTS_SHAPES_HPP
