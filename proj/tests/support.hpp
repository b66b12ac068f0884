#pragma once

#include <random>
#include <string>

#include "limroots/coxeter.hpp"
#include "limroots/io.hpp"

namespace support {

inline limroots::GeometricSystem rank2(double c) {
  limroots::CoxeterGraph g(2);
  g.set_infinite(0, 1, c);
  return limroots::GeometricSystem(g);
}

inline limroots::GeometricSystem universal3(double c) {
  limroots::CoxeterGraph g(3);
  g.set_infinite(0, 1, c);
  g.set_infinite(0, 2, c);
  g.set_infinite(1, 2, c);
  return limroots::GeometricSystem(g);
}

inline limroots::GeometricSystem named(const std::string& name) {
  return limroots::GeometricSystem(*limroots::builtin_graph(name));
}

inline limroots::Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  limroots::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline limroots::Vector vec(std::initializer_list<double> xs) {
  limroots::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Uniform random word without immediate repetitions.
inline limroots::Word random_word(std::mt19937_64& rng, int rank, int length) {
  std::uniform_int_distribution<int> pick(0, rank - 1);
  limroots::Word w;
  while (static_cast<int>(w.size()) < length) {
    const int s = pick(rng);
    if (!w.empty() && w.back() == s) continue;
    w.push_back(s);
  }
  return w;
}

}  // namespace support
