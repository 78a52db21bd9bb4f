#include "normfib/fixtures.hpp"

namespace normfib {

Triangulation sphere_one_tet() {
  return parse_triangulation(
      "tri v1\n"
      "tets 1\n"
      "glue 0 0 0 1 1230\n"
      "glue 0 2 0 3 0132\n");
}

Triangulation closed_two_tet() {
  return parse_triangulation(
      "tri v1\n"
      "tets 2\n"
      "glue 0 0 0 1 1230\n"
      "glue 0 2 1 0 1203\n"
      "glue 0 3 1 1 3021\n"
      "glue 1 2 1 3 2031\n");
}

Triangulation s2xs1() {
  return parse_triangulation(
      "tri v1\n"
      "tets 2\n"
      "glue 0 0 0 1 1230\n"
      "glue 0 2 1 0 1203\n"
      "glue 0 3 1 3 1203\n"
      "glue 1 1 1 2 3201\n");
}

Triangulation figure_eight() {
  return parse_triangulation(
      "tri v1\n"
      "tets 2\n"
      "glue 0 0 1 0 0231\n"
      "glue 0 1 1 1 2130\n"
      "glue 0 2 1 2 1320\n"
      "glue 0 3 1 3 1203\n"
      "ideal 0\n");
}

Triangulation whitehead() {
  return parse_triangulation(
      "tri v1\n"
      "tets 4\n"
      "glue 0 0 1 3 3120\n"
      "glue 0 1 1 2 0213\n"
      "glue 0 2 3 1 0213\n"
      "glue 0 3 2 3 0213\n"
      "glue 1 0 3 0 0213\n"
      "glue 1 1 2 2 0213\n"
      "glue 2 0 3 3 3120\n"
      "glue 2 1 3 2 0213\n"
      "ideal 0\n"
      "ideal 1\n");
}

}  // namespace normfib
