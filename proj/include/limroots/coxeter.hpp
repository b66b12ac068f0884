#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "limroots/detail/quantized_index.hpp"

namespace limroots {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Index of a simple reflection, 0-based.
using Generator = int;
/// A word over the generators. Read left to right as a matrix product, so the
/// word (s, t) acts as M_s * M_t.
using Word = std::vector<Generator>;

/// Combinatorial presentation of a Coxeter system: the rank, the labels m_st
/// and, on every infinite edge, the free parameter c_st >= 1.
class CoxeterGraph {
 public:
  /// Label value used for m_st = infinity.
  static constexpr int kInfinity = 0;

  explicit CoxeterGraph(int rank);

  int rank() const { return rank_; }

  /// Sets a finite label m >= 2 on the edge {s, t}.
  void set_label(Generator s, Generator t, int m);
  /// Marks {s, t} as an infinite edge. The c-parameter may be omitted here,
  /// but build_form refuses a graph with an infinite edge lacking one.
  void set_infinite(Generator s, Generator t, std::optional<double> c);

  /// m_st, with kInfinity for infinite edges and 1 on the diagonal.
  int label(Generator s, Generator t) const;
  bool is_infinite(Generator s, Generator t) const { return label(s, t) == kInfinity; }
  std::optional<double> cparam(Generator s, Generator t) const;

 private:
  std::size_t slot(Generator s, Generator t) const;
  void check_pair(Generator s, Generator t) const;

  int rank_;
  std::vector<int> labels_;
  std::vector<std::optional<double>> cparams_;
};

struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int rank() const { return n_plus + n_minus + n_zero; }
  bool lorentzian() const { return n_minus == 1 && n_zero == 0 && n_plus == rank() - 1; }
  bool positive_definite() const { return n_minus == 0 && n_zero == 0; }
  bool positive_semidefinite() const { return n_minus == 0; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Zero band for signature: eigenvalues within this factor of the largest
/// |eigenvalue| count as zero.
inline constexpr double kSignatureRelTol = 1e-9;

/// B_ss = 1, B_st = -cos(pi/m_st) for finite labels, -c_st on infinite edges.
Matrix build_form(const CoxeterGraph& graph);

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
/// Throws BorderlineSignature when the zero count changes between the zero band
/// and a band ten times narrower.
Signature signature(const Matrix& form, double rel_tol = kSignatureRelTol);

/// Geometric representation of a Coxeter graph: bilinear form, signature, and
/// one reflection matrix per simple root. Immutable once built.
class GeometricSystem {
 public:
  explicit GeometricSystem(CoxeterGraph graph);

  int rank() const { return graph_.rank(); }
  const CoxeterGraph& graph() const { return graph_; }
  const Matrix& form() const { return form_; }
  const Signature& signature() const { return signature_; }
  bool lorentzian() const { return signature_.lorentzian(); }
  const Matrix& generator(Generator s) const { return gens_[static_cast<std::size_t>(s)]; }
  const std::vector<Matrix>& generators() const { return gens_; }
  /// Inverse of the form; only meaningful when the form is nonsingular.
  const Matrix& form_inverse() const { return form_inverse_; }
  bool nonsingular() const { return signature_.n_zero == 0; }

  /// "finite", "affine", "Lorentzian (p,q)" or "other (p,q)".
  std::string type_name() const;

  double bilinear(const Vector& x, const Vector& y) const { return x.dot(form_ * y); }

 private:
  CoxeterGraph graph_;
  Matrix form_;
  Signature signature_;
  std::vector<Matrix> gens_;
  Matrix form_inverse_;
};

/// Reflection in the simple root alpha_s: column t is alpha_t - 2B(alpha_t, alpha_s) alpha_s.
Matrix generator_matrix(const GeometricSystem& sys, Generator s);

/// Matrix of sigma_gamma(x) = x - 2 B(x, gamma)/B(gamma, gamma) gamma.
Matrix reflection_matrix(const Matrix& form, const Vector& root);

struct GroupElement {
  Word word;
  Matrix matrix;
  int length = 0;
};

/// Product of generator matrices along `word` (no reduction).
Matrix word_matrix(const GeometricSystem& sys, std::span<const Generator> word);

/// Evaluates an arbitrary word and rewrites it into its ShortLex-minimal
/// reduced word: repeatedly strip the smallest left descent s, i.e. the
/// smallest s with w^{-1}(alpha_s) negative.
GroupElement element_of(const GeometricSystem& sys, std::span<const Generator> word);

/// Sign tests for vectors that are known to be roots: a root is positive when
/// no coefficient falls below -rel_tol * |v|_max.
bool is_positive_root(const Vector& v, double rel_tol = 1e-9);
bool is_negative_root(const Vector& v, double rel_tol = 1e-9);

struct EnumerateOptions {
  /// Fingerprint grid for matrix entries.
  double grid = 1e-7;
  /// Entrywise confirmation of a fingerprint match, relative to max(1, |M|_max).
  double verify_tol = 1e-9;
  /// Elements with a larger entry make the fixed grid meaningless.
  double max_entry = 1e12;
  std::size_t max_elements = 20'000'000;
};

/// Every group element of length <= max_length, one per element, in ShortLex
/// order of their canonical words.
class ElementStore {
 public:
  std::size_t size() const { return elements_.size(); }
  const GroupElement& operator[](std::size_t id) const { return elements_[id]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  int max_length() const { return static_cast<int>(layer_begin_.size()) - 2; }

  /// Number of elements of length exactly k.
  std::size_t count_at_length(int k) const;
  /// Index range [first, last) of elements with lo <= length <= hi.
  std::pair<std::size_t, std::size_t> range(int lo, int hi) const;
  std::optional<std::size_t> find(const Matrix& m) const;

 private:
  friend ElementStore enumerate(const GeometricSystem&, int, const EnumerateOptions&);
  ElementStore(int rank, const EnumerateOptions& opts);

  std::vector<GroupElement> elements_;
  std::vector<std::size_t> layer_begin_;
  detail::QuantizedIndex index_;
};

/// Breadth-first search of the Cayley graph with matrix deduplication.
ElementStore enumerate(const GeometricSystem& sys, int max_length, const EnumerateOptions& opts = {});

}  // namespace limroots
