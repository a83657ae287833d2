#pragma once

#include "algebra.hpp"

// The small algebras used throughout the test suites.
namespace corpus {

using presilt::QuiverPresentation;

inline QuiverPresentation one_vertex() {
  QuiverPresentation q;
  q.vertices = {"1"};
  return q;
}

inline QuiverPresentation semisimple2() {
  QuiverPresentation q;
  q.vertices = {"1", "2"};
  return q;
}

inline QuiverPresentation a2() {
  QuiverPresentation q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  return q;
}

inline QuiverPresentation a3() {
  QuiverPresentation q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 2}};
  return q;
}

// 1 <-> 2 with both length-2 cycles killed
inline QuiverPresentation example9() {
  QuiverPresentation q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
  q.relations = {{{1, {0, 1}}}, {{1, {1, 0}}}};
  return q;
}

inline QuiverPresentation loop_no_relations() {
  QuiverPresentation q;
  q.vertices = {"1"};
  q.arrows = {{"a", 0, 0}};
  return q;
}

}  // namespace corpus
